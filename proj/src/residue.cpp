#include "ratderham/residue.hpp"

#include "ratderham/errors.hpp"
#include "ratderham/hodge.hpp"

namespace ratderham {

HodgeType ResidueClass::type_of(long pole_order) const {
  if (!ctx_) throw InputError("residue class has no context");
  return HodgeType{ctx_->n() + 1 - pole_order, pole_order - 1};
}

long ResidueClass::filtration_level() const {
  if (!ctx_) throw InputError("residue class has no context");
  if (components_.empty()) return ctx_->n() + 1;
  const long deepest_pole = components_.rbegin()->first;
  return ctx_->n() + 1 - deepest_pole;
}

void ResidueClass::set_component(long pole_order, GradedPoly rep) {
  if (rep.is_zero()) components_.erase(pole_order);
  else components_.insert_or_assign(pole_order, std::move(rep));
}

ResidueClass residue(const FormSum& s) {
  const NormalForm nf = normal_form(s);
  ResidueClass out(s.context());
  for (const auto& [j, rep] : nf.components()) out.set_component(j, rep);
  return out;
}

bool residue_filtration_check(const FormSum& s, long k) {
  const ContextPtr& ctx = s.context();
  if (!ctx) throw InputError("residue_filtration_check: null context");
  if (k < 0 || k > ctx->n()) throw InputError("residue_filtration_check: k must lie in [0, n]");
  const NormalForm nf = normal_form(s);
  for (const auto& [j, rep] : nf.components()) {
    if (!rep.is_zero() && j > ctx->n() + 1 - k) return false;
  }
  return true;
}

FiltrationDecomposition filtration_decomposition(const HypersurfaceContext& ctx, long k) {
  if (k < 0 || k > ctx.n()) throw InputError("filtration_decomposition: k must lie in [0, n]");
  FiltrationDecomposition out;
  out.k = k;
  out.lhs = hodge_filtration_dims(ctx)[k];
  out.residue_term = pole_filtration_dim(ctx, k + 1);
  out.ambient_term = 0;
  out.equal = (out.lhs == out.residue_term + out.ambient_term);
  return out;
}

}  // namespace ratderham
