#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ratderham/jacobian.hpp"

namespace ratderham {

// Primitive Hodge numbers of the middle cohomology of Y:
// entries[j-1] = h^(n+1-j, j-1)_prim = dim (R/J)_{j*d-n-2}, j = 1..n+1,
// listed as h^(n,0), h^(n-1,1), ..., h^(0,n).
struct PrimitiveHodgeNumbers {
  long n = 0;
  std::vector<std::int64_t> entries;

  std::int64_t total() const;
  bool palindromic() const;
};

// Dimension data of H^*(X - Y): everything vanishes in degrees 2..n and
// above n+1; the top group is pure of weight n+2 and its Hodge filtration is
// computed by pole order.
struct ComplementCohomology {
  long n = 0;
  std::vector<std::int64_t> dims;              // H^0 .. H^(n+1)
  std::int64_t weight_top_minus_one = 0;       // weight n+1 piece of H^(n+1)
  std::int64_t weight_top = 0;                 // weight n+2 piece of H^(n+1)
  std::vector<std::int64_t> filtration_dims;   // F^0 .. F^(n+1) of H^(n+1)
};

struct ConsistencyCheck {
  std::string name;
  bool pass = false;
  std::string details;
};

struct ConsistencyReport {
  std::vector<ConsistencyCheck> checks;
  bool all_pass() const;
};

PrimitiveHodgeNumbers primitive_hodge_numbers(const HypersurfaceContext& ctx);

/// dim F^k H^n(Y)_0 for k = 0..n: partial sums of the primitive numbers from
/// the holomorphic end.
std::vector<std::int64_t> hodge_filtration_dims(const HypersurfaceContext& ctx);

/// Closed-form topological Euler characteristic of a smooth degree-d
/// hypersurface in projective (n+1)-space: ((1-d)^(n+2) - 1)/d + (n+2).
Int euler_characteristic(long n, long d);

/// b_0(Y)..b_{2n}(Y): ambient Betti numbers away from the middle degree, and
/// b_n = (sum of primitive numbers) + 1 if n is even.
std::vector<std::int64_t> betti_table(const HypersurfaceContext& ctx);

ComplementCohomology complement_cohomology(const HypersurfaceContext& ctx);

/// Cross-checks: middle Betti number against the Euler-characteristic
/// formula, alternating-sum exactness of the restriction/residue/Gysin
/// sequence in middle degrees, and Gorenstein symmetry of the Hilbert
/// function across the whole socle range.
ConsistencyReport consistency_report(const HypersurfaceContext& ctx);

/// Fermat hypersurface context (sum of d-th powers).
ContextPtr fermat_context(long n, long d);

/// Fermat plus a small random non-power perturbation, rejection-sampled until
/// the smoothness certificate passes. Throws after `max_attempts` failures.
ContextPtr random_smooth_context(long n, long d, std::mt19937_64& rng, int max_attempts = 64);

}  // namespace ratderham
