#include "ratderham/griffiths.hpp"

#include "ratderham/errors.hpp"

namespace ratderham {

namespace {

long expected_numerator_degree(const HypersurfaceContext& ctx, long pole_order) {
  return pole_order * ctx.d() - (ctx.n() + 2);
}

void check_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return;
  if (a && b && a->same_hypersurface(*b)) return;
  throw InputError("mixed hypersurface contexts");
}

}  // namespace

RationalTopForm make_form(ContextPtr ctx, GradedPoly numerator, long pole_order) {
  if (!ctx) throw InputError("make_form: null context");
  if (pole_order < 1 || pole_order > ctx->n() + 2) {
    throw DomainError("pole_order_out_of_range",
                      "pole order " + std::to_string(pole_order) + " outside [1, " +
                          std::to_string(ctx->n() + 2) + "]");
  }
  const long expected = expected_numerator_degree(*ctx, pole_order);
  if (numerator.is_zero()) {
    numerator = GradedPoly::zero(ctx->nvars(), expected);
  } else if (numerator.degree() != expected) {
    throw DegreeMismatch("numerator degree must be k*d-(n+2)", expected, numerator.degree());
  }
  return RationalTopForm(std::move(ctx), std::move(numerator), pole_order);
}

void FormSum::add(const RationalTopForm& form) {
  check_same_context(ctx_, form.context());  // even a zero form must match
  if (form.is_zero()) return;
  auto [it, inserted] = parts_.try_emplace(form.pole_order(), form.numerator());
  if (!inserted) {
    it->second = it->second + form.numerator();
    if (it->second.is_zero()) parts_.erase(it);
  }
}

void FormSum::add(const FormSum& other) {
  check_same_context(ctx_, other.ctx_);
  for (const auto& [k, numerator] : other.parts_) {
    add(make_form(ctx_, numerator, k));
  }
}

FormSum FormSum::scaled(const Rat& c) const {
  FormSum out(ctx_);
  if (ratderham::is_zero(c)) return out;
  for (const auto& [k, numerator] : parts_) out.parts_.emplace(k, numerator.scaled(c));
  return out;
}

GradedPoly NormalForm::component(long pole_order) const {
  auto it = components_.find(pole_order);
  if (it != components_.end()) return it->second;
  const long degree =
      ctx_ ? expected_numerator_degree(*ctx_, pole_order) : 0;
  return GradedPoly::zero(ctx_ ? ctx_->nvars() : 1, degree);
}

void NormalForm::set_component(long pole_order, GradedPoly rep) {
  if (rep.is_zero()) components_.erase(pole_order);
  else components_.insert_or_assign(pole_order, std::move(rep));
}

NormalForm NormalForm::operator+(const NormalForm& other) const {
  check_same_context(ctx_, other.ctx_);
  NormalForm out = *this;
  for (const auto& [j, rep] : other.components_) {
    out.set_component(j, out.component(j) + rep);
  }
  return out;
}

NormalForm NormalForm::scaled(const Rat& c) const {
  NormalForm out(ctx_);
  if (ratderham::is_zero(c)) return out;
  for (const auto& [j, rep] : components_) out.components_.emplace(j, rep.scaled(c));
  return out;
}

FormSum NormalForm::as_form_sum() const {
  FormSum out(ctx_);
  for (const auto& [j, rep] : components_) out.add(make_form(ctx_, rep, j));
  return out;
}

namespace {

RationalTopForm reduction_result(const ContextPtr& ctx, long pole_order,
                                 const std::vector<GradedPoly>& lift) {
  GradedPoly divergence = GradedPoly::zero(ctx->nvars(), (pole_order - 1) * ctx->d() - ctx->n() - 2);
  for (std::size_t v = 0; v < ctx->nvars(); ++v) {
    divergence = divergence + partial_derivative(lift[v], v);
  }
  return make_form(ctx, divergence.scaled(Rat(1, pole_order - 1)), pole_order - 1);
}

}  // namespace

RationalTopForm reduce_once(const RationalTopForm& form) {
  const ContextPtr& ctx = form.context();
  if (form.pole_order() < 2) {
    throw DomainError("pole_order_one", "cannot lower a pole of order 1");
  }
  if (form.is_zero()) {
    return make_form(ctx, GradedPoly(), form.pole_order() - 1);
  }
  auto lift = membership_lift(*ctx, form.numerator());
  if (!lift) {
    throw DomainError("not_in_ideal",
                      "numerator is not in the Jacobian ideal; split off its coset "
                      "representative first");
  }
  return reduction_result(ctx, form.pole_order(), *lift);
}

RationalTopForm reduce_once_with_lift(const RationalTopForm& form,
                                      const std::vector<GradedPoly>& lift) {
  const ContextPtr& ctx = form.context();
  if (form.pole_order() < 2) {
    throw DomainError("pole_order_one", "cannot lower a pole of order 1");
  }
  if (lift.size() != ctx->nvars()) throw InputError("lift must have n+2 entries");
  GradedPoly recombined = GradedPoly::zero(ctx->nvars(), form.numerator().degree());
  for (std::size_t v = 0; v < ctx->nvars(); ++v) {
    recombined = recombined + lift[v] * ctx->jacobian_generators()[v];
  }
  if (!(recombined == form.numerator())) {
    throw InputError("supplied lift does not recombine to the numerator");
  }
  return reduction_result(ctx, form.pole_order(), lift);
}

NormalForm normal_form(const FormSum& s) {
  const ContextPtr& ctx = s.context();
  if (!ctx) throw InputError("normal_form: null context");
  NormalForm out(ctx);
  if (s.parts().empty()) return out;

  std::map<long, GradedPoly> pending = s.parts();
  while (!pending.empty()) {
    const long j = pending.rbegin()->first;  // highest remaining pole order
    GradedPoly numerator = pending.rbegin()->second;
    pending.erase(j);

    GradedPoly coset_part = canonical_rep(*ctx, numerator);
    GradedPoly ideal_part = numerator - coset_part;
    if (j <= ctx->n() + 1) {
      out.set_component(j, std::move(coset_part));
    } else if (!coset_part.is_zero()) {
      // Degrees above the socle have no coset basis, so the top layer always
      // drains into lower pole orders.
      throw Error("internal", "nonzero coset representative above the socle degree");
    }
    if (ideal_part.is_zero()) continue;
    if (j == 1) throw Error("internal", "ideal part at pole order 1");
    const RationalTopForm lowered = reduce_once(make_form(ctx, std::move(ideal_part), j));
    if (!lowered.is_zero()) {
      auto [it, inserted] = pending.try_emplace(j - 1, lowered.numerator());
      if (!inserted) {
        it->second = it->second + lowered.numerator();
        if (it->second.is_zero()) pending.erase(it);
      }
    }
  }
  return out;
}

bool is_exact(const FormSum& s) { return normal_form(s).is_zero(); }

bool is_second_kind(const FormSum& s) { return is_exact(s); }

std::string second_kind_justification(const HypersurfaceContext& ctx) {
  const long p = ctx.n() + 1;
  return "the restriction of H^" + std::to_string(p) +
         " of the ambient projective space to the complement vanishes, so the "
         "second-kind subspace of the top rational De Rham group is zero and "
         "second kind coincides with exact";
}

std::int64_t pole_filtration_dim(const HypersurfaceContext& ctx, long k) {
  if (k < 0 || k > ctx.n() + 1) {
    throw InputError("pole_filtration_dim: k must lie in [0, n+1]");
  }
  std::int64_t total = 0;
  for (long j = 1; j <= ctx.n() + 2 - k; ++j) {
    total += hilbert_function(ctx, j * ctx.d() - ctx.n() - 2);
  }
  return total;
}

}  // namespace ratderham
