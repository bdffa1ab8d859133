#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ratderham/griffiths.hpp"

namespace ratderham {

// Hodge type (p, q) with p + q = n.
struct HodgeType {
  long p = 0;
  long q = 0;
  bool operator==(const HodgeType&) const = default;
};

// Image of a rational top-form class under the generalized residue map,
// landing in the primitive middle cohomology of Y. The pole-order-j layer of
// the normal form carries Hodge type (n+1-j, j-1); the residue map is
// injective here, so the class is faithfully recorded by its components.
class ResidueClass {
 public:
  explicit ResidueClass(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  const ContextPtr& context() const { return ctx_; }
  const std::map<long, GradedPoly>& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }

  HodgeType type_of(long pole_order) const;

  /// Largest k with the class in F^k (the full filtration depth n+1 for the
  /// zero class).
  long filtration_level() const;

  void set_component(long pole_order, GradedPoly rep);

  bool operator==(const ResidueClass& other) const { return components_ == other.components_; }

 private:
  ContextPtr ctx_;
  std::map<long, GradedPoly> components_;
};

/// Residue of a form sum, computed through the normal form. Exact forms map
/// to zero, and only exact forms do.
ResidueClass residue(const FormSum& s);

/// True iff every nonzero normal-form component of s sits at pole order
/// <= n+1-k, i.e. the class lies in the pole filtration level k+1 and its
/// residue lands in F^k of the primitive middle cohomology. The containment
/// is decided by component support.
bool residue_filtration_check(const FormSum& s, long k);

// Dimension decomposition of F^k of the primitive middle cohomology of Y:
// the residue image of pole filtration level k+1 plus the restriction from
// the ambient space, which contributes nothing here because projective space
// has no primitive middle cohomology.
struct FiltrationDecomposition {
  long k = 0;
  std::int64_t lhs = 0;             // dim F^k H^n(Y)_0
  std::int64_t residue_term = 0;    // dim residue image of filtration level k+1
  std::int64_t ambient_term = 0;    // always 0 for this ambient space
  bool equal = false;
};

/// Decomposition report for 0 <= k <= n; `equal` asserts
/// lhs == residue_term + ambient_term exactly.
FiltrationDecomposition filtration_decomposition(const HypersurfaceContext& ctx, long k);

}  // namespace ratderham
