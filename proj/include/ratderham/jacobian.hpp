#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "ratderham/polyring.hpp"
#include "ratderham/rational.hpp"

namespace ratderham {

// Sparse vector over column (or product) indices, entries sorted by index.
using SparseVec = std::vector<std::pair<std::size_t, Rat>>;

// One graded piece of the Jacobian ideal J_e inside R_e, reduced once and
// cached. Columns are indexed by the monomial basis of R_e in descending
// graded-lex order; the spanning rows are the products m * df/dx_i (generator
// index outer, monomials of degree e-d+1 in descending graded-lex inner).
//
// `rows` hold the row-echelon basis of J_e: row k has leading entry 1 at
// pivot_columns-member lead_column(k) and no other entries at columns that
// were pivots when it was inserted. That is enough to reduce any vector to
// its unique coset representative supported on the non-pivot columns.
class GradedPieceDecomposition {
 public:
  long degree() const { return degree_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::size_t dim_ambient() const { return monomials_.size(); }
  std::size_t rank() const { return row_lead_.size(); }

  const std::vector<std::size_t>& pivot_columns() const { return pivot_columns_; }
  const std::vector<std::size_t>& coset_columns() const { return coset_columns_; }
  std::vector<Monomial> pivot_monomials() const;
  std::vector<Monomial> coset_basis() const;

  std::size_t product_count() const { return product_count_; }

  struct Reduction {
    SparseVec remainder;                              // supported on coset columns
    std::vector<std::pair<std::size_t, Rat>> steps;   // (internal row, coefficient)
  };
  /// Reduces v modulo the row space of J_e. remainder is the canonical coset
  /// representative; v - remainder = sum of steps over the stored rows.
  Reduction reduce(SparseVec v) const;

  /// Expresses a list of reduction steps as a combination of the original
  /// spanning products (free products get coefficient zero).
  SparseVec combine_products(const std::vector<std::pair<std::size_t, Rat>>& steps) const;

  std::size_t monomial_index(const Monomial& m) const;

 private:
  friend class HypersurfaceContext;

  long degree_ = 0;
  std::vector<Monomial> monomials_;
  std::size_t product_count_ = 0;
  std::vector<SparseVec> rows_;          // echelon rows, leading coeff 1
  std::vector<std::size_t> row_lead_;    // leading column of each row
  std::vector<SparseVec> trackings_;     // row as combination of products
  std::vector<long> col_to_row_;         // column -> row index, -1 if non-pivot
  std::vector<std::size_t> pivot_columns_;
  std::vector<std::size_t> coset_columns_;
};

// Smooth degree-d hypersurface Y = {f = 0} in projective (n+1)-space,
// together with its Jacobian ideal data. Construction certifies smoothness
// by checking that (R/J) vanishes in degree socle+1; singular input is
// rejected. Immutable after construction except for the per-degree
// decomposition cache, which behaves as-if pure under concurrency.
class HypersurfaceContext {
 public:
  long n() const { return n_; }
  long d() const { return d_; }
  std::size_t nvars() const { return static_cast<std::size_t>(n_) + 2; }
  const GradedPoly& f() const { return f_; }
  const std::vector<GradedPoly>& jacobian_generators() const { return jacobian_generators_; }
  long socle_degree() const { return socle_degree_; }

  std::shared_ptr<const GradedPieceDecomposition> decomposition(long degree) const;

  bool same_hypersurface(const HypersurfaceContext& other) const {
    return n_ == other.n_ && d_ == other.d_ && f_ == other.f_;
  }

 private:
  friend std::shared_ptr<const HypersurfaceContext> build_context(long n, GradedPoly f);

  HypersurfaceContext() = default;

  std::shared_ptr<const GradedPieceDecomposition> compute_decomposition(long degree) const;

  long n_ = 0;
  long d_ = 0;
  GradedPoly f_;
  std::vector<GradedPoly> jacobian_generators_;
  long socle_degree_ = 0;

  mutable std::mutex cache_mutex_;
  mutable std::map<long, std::shared_ptr<const GradedPieceDecomposition>> cache_;
};

using ContextPtr = std::shared_ptr<const HypersurfaceContext>;

/// Builds and certifies a context. f must be homogeneous of degree d >= 1 in
/// n+2 variables, n >= 1. Throws SingularHypersurface (with the failing
/// degree), DegreeTooSmall via InputError when d == 0, InputError on variable
/// count mismatch or zero f.
ContextPtr build_context(long n, GradedPoly f);

/// dim (R/J)_e. Degrees beyond the socle (and negative degrees) return 0
/// without building a matrix: vanishing at socle+1 is certified at
/// construction and propagates upward in a standard graded algebra.
std::int64_t hilbert_function(const HypersurfaceContext& ctx, long e);

/// If A lies in J, returns B_0..B_{n+1} of degree deg(A)-d+1 with
/// sum B_i * df/dx_i == A exactly (verified before returning); the B_i come
/// from the echelon particular solution with free products zero. Returns
/// nullopt when A is not in J.
std::optional<std::vector<GradedPoly>> membership_lift(const HypersurfaceContext& ctx,
                                                       const GradedPoly& A);

/// Unique coset representative of A modulo J supported on the coset basis
/// monomials. Linear in A; idempotent.
GradedPoly canonical_rep(const HypersurfaceContext& ctx, const GradedPoly& A);

/// Independent oracle: coefficients of ((1-t^(d-1))/(1-t))^(n+2)
/// = (1 + t + ... + t^(d-2))^(n+2) up to degree (n+2)(d-2). Empty for d == 1.
std::vector<Int> hilbert_series_oracle(long n, long d);

}  // namespace ratderham
