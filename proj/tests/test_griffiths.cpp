#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ratderham/errors.hpp"
#include "ratderham/griffiths.hpp"
#include "ratderham/hodge.hpp"

using namespace ratderham;

namespace {

GradedPoly random_numerator(std::mt19937_64& rng, const HypersurfaceContext& ctx, long pole_order,
                            int max_terms = 5) {
  const long degree = pole_order * ctx.d() - ctx.n() - 2;
  GradedPoly p = GradedPoly::zero(ctx.nvars(), degree);
  if (degree < 0) return p;
  const std::vector<Monomial> basis = monomial_basis(ctx.nvars(), degree);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<long> coeff(-4, 4);
  for (int t = 0; t < max_terms; ++t) p.add_term(basis[pick(rng)], Rat(coeff(rng)));
  return p;
}

FormSum random_form_sum(std::mt19937_64& rng, const ContextPtr& ctx, int pieces = 3) {
  FormSum sum(ctx);
  std::uniform_int_distribution<long> pick_pole(1, ctx->n() + 2);
  for (int i = 0; i < pieces; ++i) {
    const long k = pick_pole(rng);
    sum.add(make_form(ctx, random_numerator(rng, *ctx, k), k));
  }
  return sum;
}

// Reduces pole orders in a random order instead of strictly top-down.
NormalForm reduce_in_random_order(const FormSum& s, std::mt19937_64& rng) {
  const ContextPtr& ctx = s.context();
  std::map<long, GradedPoly> pending = s.parts();
  NormalForm accumulated(ctx);
  while (!pending.empty()) {
    auto it = pending.begin();
    std::advance(it, static_cast<long>(rng() % pending.size()));
    const long j = it->first;
    const GradedPoly numerator = it->second;
    pending.erase(it);

    const GradedPoly coset_part = canonical_rep(*ctx, numerator);
    if (j <= ctx->n() + 1) {
      accumulated.set_component(j, accumulated.component(j) + coset_part);
    } else {
      REQUIRE(coset_part.is_zero());
    }
    const GradedPoly ideal_part = numerator - coset_part;
    if (ideal_part.is_zero()) continue;
    REQUIRE(j >= 2);
    const RationalTopForm lowered = reduce_once(make_form(ctx, ideal_part, j));
    if (!lowered.is_zero()) {
      auto [slot, inserted] = pending.try_emplace(j - 1, lowered.numerator());
      if (!inserted) slot->second = slot->second + lowered.numerator();
      if (!inserted && slot->second.is_zero()) pending.erase(slot);
    }
  }
  return accumulated;
}

}  // namespace

TEST_CASE("make_form validation") {
  const ContextPtr cubic = fermat_context(1, 3);
  CHECK_NOTHROW(make_form(cubic, parse_poly("x0*x1*x2", 3), 2));  // deg 3 = 2*3-3
  CHECK_THROWS_AS(make_form(cubic, parse_poly("x0", 3), 2), DegreeMismatch);
  CHECK_THROWS_AS(make_form(cubic, parse_poly("x0*x1*x2", 3), 0), DomainError);
  CHECK_THROWS_AS(make_form(cubic, parse_poly("x0*x1*x2", 3), 4), DomainError);

  const ContextPtr quartic = fermat_context(2, 4);
  CHECK_NOTHROW(make_form(quartic, GradedPoly::constant(4, Rat(1)), 1));  // deg 0 = 4-4
}

TEST_CASE("reduce_once hand examples on the Fermat cubic") {
  const ContextPtr ctx = fermat_context(1, 3);

  // x0^2*x1^2*x2^2 = (x1^2*x2^2/3) * df/dx0, divergence of the lift vanishes
  const RationalTopForm high = make_form(ctx, parse_poly("x0^2*x1^2*x2^2", 3), 3);
  const RationalTopForm lowered = reduce_once(high);
  CHECK(lowered.pole_order() == 2);
  CHECK(lowered.is_zero());

  // x0^2*g with g linear: lift (g/3, 0, 0), result (dg/dx0)/3 at pole order 1
  const RationalTopForm quad = make_form(ctx, parse_poly("x0^2*x1", 3), 2);
  const RationalTopForm once = reduce_once(quad);
  CHECK(once.pole_order() == 1);
  CHECK(once.numerator().is_zero());  // d(x1)/dx0 = 0

  // 2*x0^3 = (2/3*x0) * df/dx0, so the result is d(2/3*x0)/dx0 = 2/3
  const RationalTopForm quad2 = make_form(ctx, parse_poly("2*x0^3", 3), 2);
  const RationalTopForm once2 = reduce_once(quad2);
  CHECK(once2.numerator() == GradedPoly::constant(3, Rat(2, 3)));

  // zero numerator reduces to the zero form
  CHECK(reduce_once(make_form(ctx, GradedPoly(), 2)).is_zero());

  // errors
  CHECK_THROWS_AS(reduce_once(make_form(ctx, parse_poly("x0*x1*x2", 3), 2)), DomainError);
  CHECK_THROWS_AS(reduce_once(make_form(ctx, GradedPoly::zero(3, 0), 1)), DomainError);
}

TEST_CASE("normal_form examples") {
  const ContextPtr ctx = fermat_context(1, 3);

  FormSum nonexact(ctx);
  nonexact.add(make_form(ctx, parse_poly("x0*x1*x2", 3), 2));
  const NormalForm nf = normal_form(nonexact);
  CHECK_FALSE(nf.is_zero());
  REQUIRE(nf.components().size() == 1);
  CHECK(nf.component(2) == parse_poly("x0*x1*x2", 3));
  CHECK_FALSE(is_exact(nonexact));
  CHECK_FALSE(is_second_kind(nonexact));

  FormSum exact_sum(ctx);
  exact_sum.add(make_form(ctx, parse_poly("x0^2*x1^2*x2^2", 3), 3));
  CHECK(normal_form(exact_sum).is_zero());
  CHECK(is_exact(exact_sum));

  const FormSum empty(ctx);
  CHECK(normal_form(empty).is_zero());
  CHECK(is_exact(empty));

  // omega + (-1)*omega is exact by linearity
  FormSum cancel = nonexact;
  cancel.add(nonexact.scaled(Rat(-1)));
  CHECK(is_exact(cancel));
}

TEST_CASE("normal_form components live on the coset basis and idempotence holds") {
  std::mt19937_64 rng(909);
  for (const auto& [n, d] : std::vector<std::pair<long, long>>{{1, 3}, {1, 4}, {2, 3}, {2, 4}}) {
    const ContextPtr ctx = fermat_context(n, d);
    for (int trial = 0; trial < 10; ++trial) {
      const FormSum s = random_form_sum(rng, ctx);
      const NormalForm nf = normal_form(s);
      for (const auto& [j, rep] : nf.components()) {
        CHECK(canonical_rep(*ctx, rep) == rep);
        CHECK(j >= 1);
        CHECK(j <= ctx->n() + 1);
      }
      CHECK(normal_form(nf.as_form_sum()) == nf);  // idempotent
    }
  }
}

TEST_CASE("normal_form is linear") {
  std::mt19937_64 rng(1618);
  const ContextPtr ctx = fermat_context(2, 3);
  for (int trial = 0; trial < 15; ++trial) {
    const FormSum s1 = random_form_sum(rng, ctx);
    const FormSum s2 = random_form_sum(rng, ctx);
    const Rat alpha(static_cast<long>(rng() % 7) - 3);
    const Rat beta(static_cast<long>(rng() % 7) - 3, 2);
    FormSum combo = s1.scaled(alpha);
    combo.add(s2.scaled(beta));
    CHECK(normal_form(combo) == normal_form(s1).scaled(alpha) + normal_form(s2).scaled(beta));
  }
}

TEST_CASE("lift invariance under Koszul syzygy perturbation") {
  std::mt19937_64 rng(2718);
  const ContextPtr ctx = fermat_context(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    // random element of J at the pole-order-3 numerator degree
    const long k = 3;
    const long e = k * ctx->d() - ctx->n() - 2;  // 6
    GradedPoly a = random_numerator(rng, *ctx, k);
    a = a - canonical_rep(*ctx, a);
    if (a.is_zero()) continue;
    const RationalTopForm form = make_form(ctx, a, k);

    const auto lift = membership_lift(*ctx, a);
    REQUIRE(lift.has_value());

    // Koszul perturbation: add (h*df/dx_b, -h*df/dx_a) at positions (a, b).
    const std::size_t va = rng() % ctx->nvars();
    std::size_t vb = rng() % ctx->nvars();
    if (vb == va) vb = (vb + 1) % ctx->nvars();
    const long h_degree = (e - ctx->d() + 1) - (ctx->d() - 1);
    REQUIRE(h_degree >= 0);
    GradedPoly h = GradedPoly::zero(ctx->nvars(), h_degree);
    const std::vector<Monomial> basis = monomial_basis(ctx->nvars(), h_degree);
    h.add_term(basis[rng() % basis.size()], Rat(1 + static_cast<long>(rng() % 3)));

    std::vector<GradedPoly> perturbed = *lift;
    perturbed[va] = perturbed[va] + h * ctx->jacobian_generators()[vb];
    perturbed[vb] = perturbed[vb] - h * ctx->jacobian_generators()[va];

    const RationalTopForm r1 = reduce_once_with_lift(form, *lift);
    const RationalTopForm r2 = reduce_once_with_lift(form, perturbed);
    // intermediate numerators generally differ, the normal forms never do
    FormSum s1(ctx), s2(ctx);
    s1.add(r1);
    s2.add(r2);
    CHECK(normal_form(s1) == normal_form(s2));
  }
}

TEST_CASE("reduction order invariance") {
  std::mt19937_64 rng(5050);
  for (const auto& [n, d] : std::vector<std::pair<long, long>>{{1, 3}, {1, 4}, {2, 4}}) {
    const ContextPtr ctx = fermat_context(n, d);
    for (int trial = 0; trial < 10; ++trial) {
      const FormSum s = random_form_sum(rng, ctx, 4);
      const NormalForm reference = normal_form(s);
      for (int shuffle = 0; shuffle < 3; ++shuffle) {
        CHECK(reduce_in_random_order(s, rng) == reference);
      }
    }
  }
}

TEST_CASE("pole filtration dimensions") {
  const ContextPtr quartic = fermat_context(2, 4);
  CHECK(pole_filtration_dim(*quartic, 3) == 1);
  CHECK(pole_filtration_dim(*quartic, 2) == 20);
  CHECK(pole_filtration_dim(*quartic, 1) == 21);
  CHECK(pole_filtration_dim(*quartic, 0) == 21);

  const ContextPtr cubic = fermat_context(1, 3);
  CHECK(pole_filtration_dim(*cubic, 2) == 1);
  CHECK(pole_filtration_dim(*cubic, 1) == 2);
  CHECK(pole_filtration_dim(*cubic, 0) == 2);

  // weakly decreasing in k, F^0 = F^1
  for (const auto& [n, d] : std::vector<std::pair<long, long>>{{1, 2}, {2, 3}, {3, 4}}) {
    const ContextPtr ctx = fermat_context(n, d);
    CHECK(pole_filtration_dim(*ctx, 0) == pole_filtration_dim(*ctx, 1));
    for (long k = 0; k < ctx->n() + 1; ++k) {
      CHECK(pole_filtration_dim(*ctx, k) >= pole_filtration_dim(*ctx, k + 1));
    }
  }
  CHECK_THROWS_AS(pole_filtration_dim(*cubic, 3), InputError);
}

TEST_CASE("normal form component dimensions sum to the total filtration dimension") {
  // the component space at pole order j has dimension hilbert(j*d-n-2)
  const ContextPtr ctx = fermat_context(2, 4);
  std::int64_t total = 0;
  for (long j = 1; j <= ctx->n() + 1; ++j) {
    total += hilbert_function(*ctx, j * ctx->d() - ctx->n() - 2);
  }
  CHECK(total == pole_filtration_dim(*ctx, 0));
}

TEST_CASE("mixed contexts are rejected") {
  const ContextPtr a = fermat_context(1, 3);
  const ContextPtr b = fermat_context(1, 4);
  FormSum sum(a);
  CHECK_THROWS_AS(sum.add(make_form(b, GradedPoly::zero(3, 1), 1)), InputError);
}
