#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ratderham/jacobian.hpp"
#include "ratderham/polyring.hpp"

namespace ratderham {

// Rational top-degree form A * Omega_0 / f^k on projective (n+1)-space with
// poles along Y = {f = 0} only: deg A = k*d - (n+2) and 1 <= k <= n+2.
// Top-degree forms are automatically closed.
class RationalTopForm {
 public:
  const ContextPtr& context() const { return ctx_; }
  long pole_order() const { return pole_order_; }
  const GradedPoly& numerator() const { return numerator_; }
  bool is_zero() const { return numerator_.is_zero(); }

 private:
  friend RationalTopForm make_form(ContextPtr ctx, GradedPoly numerator, long pole_order);
  RationalTopForm(ContextPtr ctx, GradedPoly numerator, long pole_order)
      : ctx_(std::move(ctx)), numerator_(std::move(numerator)), pole_order_(pole_order) {}

  ContextPtr ctx_;
  GradedPoly numerator_;
  long pole_order_;
};

/// Validates and builds a form. Throws DomainError("pole_order_out_of_range")
/// unless 1 <= k <= n+2, DegreeMismatch unless deg A = k*d-(n+2) (a zero
/// numerator is accepted at any tag and retagged).
RationalTopForm make_form(ContextPtr ctx, GradedPoly numerator, long pole_order);

// Finite sum of rational top forms over one context, merged per pole order.
// Zero numerators are not stored.
class FormSum {
 public:
  explicit FormSum(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  const ContextPtr& context() const { return ctx_; }
  const std::map<long, GradedPoly>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  /// Merges a form into the sum. Throws InputError on mixed contexts.
  void add(const RationalTopForm& form);
  void add(const FormSum& other);
  FormSum scaled(const Rat& c) const;

 private:
  ContextPtr ctx_;
  std::map<long, GradedPoly> parts_;
};

// Canonical representative of a class in the top rational De Rham group:
// per pole order j = 1..n+1 the coset representative of the numerator in
// (R/J)_{j*d-n-2}. Two sums are cohomologous iff their normal forms are
// equal. Zero components are not stored.
class NormalForm {
 public:
  explicit NormalForm(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  const ContextPtr& context() const { return ctx_; }
  const std::map<long, GradedPoly>& components() const { return components_; }
  GradedPoly component(long pole_order) const;
  bool is_zero() const { return components_.empty(); }

  void set_component(long pole_order, GradedPoly rep);

  NormalForm operator+(const NormalForm& other) const;
  NormalForm scaled(const Rat& c) const;
  bool operator==(const NormalForm& other) const { return components_ == other.components_; }

  /// Reinterprets the components as a FormSum (for idempotence checks and
  /// round-tripping through the reduction).
  FormSum as_form_sum() const;

 private:
  ContextPtr ctx_;
  std::map<long, GradedPoly> components_;
};

/// One pole-lowering step: for A = sum B_i * df/dx_i,
///   A*Omega_0/f^k  ~  (1/(k-1)) * (sum dB_i/dx_i) * Omega_0 / f^(k-1)
/// modulo exact forms, with B the canonical membership lift. Throws
/// DomainError("pole_order_one") when k == 1 and DomainError("not_in_ideal")
/// when A has a nonzero coset part (split off canonical_rep first).
RationalTopForm reduce_once(const RationalTopForm& form);

/// Same step with a caller-supplied lift; the lift is verified exactly
/// (sum B_i * df/dx_i == A) before use. Exercises lift-invariance: any valid
/// lift yields a cohomologous result.
RationalTopForm reduce_once_with_lift(const RationalTopForm& form,
                                      const std::vector<GradedPoly>& lift);

/// Full reduction to the canonical normal form: starting from the highest
/// pole order, split off the coset representative, push the ideal part one
/// pole order down, and repeat. The pole-order-(n+2) layer always empties
/// into lower orders because its numerator degree exceeds the socle degree.
NormalForm normal_form(const FormSum& s);

/// A class is exact iff its normal form vanishes. For this ambient space the
/// second-kind subspace of the top De Rham group is zero, so second kind
/// coincides with exact.
bool is_exact(const FormSum& s);
bool is_second_kind(const FormSum& s);

/// Text of the identification backing is_second_kind, for CLI metadata.
std::string second_kind_justification(const HypersurfaceContext& ctx);

/// dim F^k H^(n+1)(X-Y): sum of hilbert_function(j*d-n-2) for
/// j = 1..n+2-k. Requires 0 <= k <= n+1.
std::int64_t pole_filtration_dim(const HypersurfaceContext& ctx, long k);

}  // namespace ratderham
