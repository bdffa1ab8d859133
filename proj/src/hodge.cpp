#include "ratderham/hodge.hpp"

#include <algorithm>
#include <sstream>

#include "ratderham/errors.hpp"
#include "ratderham/griffiths.hpp"

namespace ratderham {

std::int64_t PrimitiveHodgeNumbers::total() const {
  std::int64_t sum = 0;
  for (std::int64_t h : entries) sum += h;
  return sum;
}

bool PrimitiveHodgeNumbers::palindromic() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] != entries[entries.size() - 1 - i]) return false;
  }
  return true;
}

bool ConsistencyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConsistencyCheck& c) { return c.pass; });
}

PrimitiveHodgeNumbers primitive_hodge_numbers(const HypersurfaceContext& ctx) {
  PrimitiveHodgeNumbers out;
  out.n = ctx.n();
  out.entries.reserve(ctx.n() + 1);
  for (long j = 1; j <= ctx.n() + 1; ++j) {
    out.entries.push_back(hilbert_function(ctx, j * ctx.d() - ctx.n() - 2));
  }
  return out;
}

std::vector<std::int64_t> hodge_filtration_dims(const HypersurfaceContext& ctx) {
  const PrimitiveHodgeNumbers h = primitive_hodge_numbers(ctx);
  std::vector<std::int64_t> dims(ctx.n() + 1, 0);
  for (long k = 0; k <= ctx.n(); ++k) {
    std::int64_t sum = 0;
    for (long j = 1; j <= ctx.n() + 1 - k; ++j) sum += h.entries[j - 1];
    dims[k] = sum;
  }
  return dims;
}

Int euler_characteristic(long n, long d) {
  if (n < 1 || d < 1) throw InputError("euler_characteristic: requires n >= 1 and d >= 1");
  Int base = 1 - d;
  Int power;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n + 2));
  return (power - 1) / d + (n + 2);
}

std::vector<std::int64_t> betti_table(const HypersurfaceContext& ctx) {
  const long n = ctx.n();
  std::vector<std::int64_t> betti(2 * n + 1, 0);
  for (long q = 0; q <= 2 * n; ++q) {
    if (q != n) betti[q] = (q % 2 == 0) ? 1 : 0;
  }
  betti[n] = primitive_hodge_numbers(ctx).total() + (n % 2 == 0 ? 1 : 0);
  return betti;
}

ComplementCohomology complement_cohomology(const HypersurfaceContext& ctx) {
  const long n = ctx.n();
  ComplementCohomology out;
  out.n = n;
  out.dims.assign(n + 2, 0);
  out.dims[0] = 1;
  out.dims[n + 1] = primitive_hodge_numbers(ctx).total();
  out.weight_top_minus_one = 0;
  out.weight_top = out.dims[n + 1];
  out.filtration_dims.reserve(n + 2);
  for (long k = 0; k <= n + 1; ++k) out.filtration_dims.push_back(pole_filtration_dim(ctx, k));
  return out;
}

namespace {

ConsistencyCheck check_equal(const std::string& name, const Int& lhs, const Int& rhs,
                             const std::string& detail) {
  ConsistencyCheck c;
  c.name = name;
  c.pass = (lhs == rhs);
  c.details = detail + ": " + lhs.get_str() + (c.pass ? " == " : " != ") + rhs.get_str();
  return c;
}

}  // namespace

ConsistencyReport consistency_report(const HypersurfaceContext& ctx) {
  const long n = ctx.n();
  ConsistencyReport report;

  // (a) middle Betti number vs. the Euler-characteristic formula. The
  // off-middle Betti numbers contribute one per even degree != n.
  const std::vector<std::int64_t> betti = betti_table(ctx);
  const Int chi = euler_characteristic(n, ctx.d());
  long even_off_middle = 0;
  for (long q = 0; q <= 2 * n; ++q) {
    if (q != n && q % 2 == 0) ++even_off_middle;
  }
  const Int implied_bn = (n % 2 == 0) ? Int(chi - even_off_middle) : Int(even_off_middle - chi);
  report.checks.push_back(check_equal("betti_vs_euler", Int(betti[n]), implied_bn,
                                      "b_" + std::to_string(n) + " vs value implied by chi = " +
                                          chi.get_str()));

  // (b) alternating-sum exactness of
  // 0 -> H^(n-1)(Y) -> H^(n+1)(X) -> H^(n+1)(X-Y) -> H^n(Y) -> H^(n+2)(X) -> 0.
  const std::int64_t h_n1_complement = complement_cohomology(ctx).dims[n + 1];
  const std::int64_t b_nm1_y = (n - 1) % 2 == 0 ? 1 : 0;
  const std::int64_t b_np1_x = (n + 1) % 2 == 0 ? 1 : 0;
  const std::int64_t b_np2_x = (n + 2) % 2 == 0 ? 1 : 0;
  const Int alternating = Int(b_nm1_y) - b_np1_x + h_n1_complement - betti[n] + b_np2_x;
  std::ostringstream detail_b;
  detail_b << b_nm1_y << " - " << b_np1_x << " + " << h_n1_complement << " - " << betti[n]
           << " + " << b_np2_x;
  report.checks.push_back(
      check_equal("restriction_sequence_exactness", alternating, Int(0), detail_b.str()));

  // (c) Gorenstein symmetry of the Hilbert function over the full socle range.
  bool symmetric = true;
  long failing_e = -1;
  for (long e = 0; e <= ctx.socle_degree(); ++e) {
    if (hilbert_function(ctx, e) != hilbert_function(ctx, ctx.socle_degree() - e)) {
      symmetric = false;
      failing_e = e;
      break;
    }
  }
  ConsistencyCheck sym;
  sym.name = "gorenstein_symmetry";
  sym.pass = symmetric;
  sym.details = symmetric
                    ? "hilbert(e) == hilbert(socle-e) for 0 <= e <= " +
                          std::to_string(std::max(0L, ctx.socle_degree()))
                    : "asymmetry at e = " + std::to_string(failing_e);
  report.checks.push_back(std::move(sym));

  return report;
}

ContextPtr fermat_context(long n, long d) {
  return build_context(n, fermat_poly(static_cast<std::size_t>(n) + 2, d));
}

ContextPtr random_smooth_context(long n, long d, std::mt19937_64& rng, int max_attempts) {
  const std::size_t nvars = static_cast<std::size_t>(n) + 2;
  std::uniform_int_distribution<int> pick_coeff(1, 2);
  std::uniform_int_distribution<int> pick_sign(0, 1);

  if (d == 1) {
    // Any nonzero linear form is smooth; randomize the coefficients.
    GradedPoly f = GradedPoly::zero(nvars, 1);
    for (std::size_t v = 0; v < nvars; ++v) {
      std::vector<std::uint32_t> exps(nvars, 0);
      exps[v] = 1;
      f.add_term(Monomial(std::move(exps)), Rat(pick_coeff(rng) * (pick_sign(rng) ? 1 : -1)));
    }
    return build_context(n, std::move(f));
  }

  // Monomials that are not pure d-th powers of a single variable.
  std::vector<Monomial> mixed;
  for (const Monomial& m : monomial_basis(nvars, d)) {
    bool pure_power = false;
    for (std::size_t v = 0; v < nvars; ++v) {
      if (m.exponent(v) == static_cast<std::uint32_t>(d)) pure_power = true;
    }
    if (!pure_power) mixed.push_back(m);
  }
  std::uniform_int_distribution<std::size_t> pick_monomial(0, mixed.size() - 1);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    GradedPoly f = fermat_poly(nvars, d);
    for (int t = 0; t < 3; ++t) {
      const int c = pick_coeff(rng) * (pick_sign(rng) ? 1 : -1);
      f.add_term(mixed[pick_monomial(rng)], Rat(c));
    }
    if (f == fermat_poly(nvars, d)) continue;
    try {
      return build_context(n, std::move(f));
    } catch (const SingularHypersurface&) {
      continue;
    }
  }
  throw Error("internal", "random_smooth_context: no smooth perturbation found");
}

}  // namespace ratderham
