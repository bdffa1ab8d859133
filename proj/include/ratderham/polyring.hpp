#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ratderham/rational.hpp"

namespace ratderham {

// Monomial in nvars variables x0..x{nvars-1}, stored as exponents.
// The global term order is graded lexicographic with x0 > x1 > ...
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {}

  std::size_t nvars() const { return exponents_.size(); }
  std::uint32_t exponent(std::size_t var) const { return exponents_[var]; }
  const std::vector<std::uint32_t>& exponents() const { return exponents_; }
  long degree() const;

  bool operator==(const Monomial& other) const = default;

 private:
  std::vector<std::uint32_t> exponents_;
};

/// Graded-lex comparison (degree first, then lex with x0 most significant).
bool grlex_less(const Monomial& a, const Monomial& b);

// Orders terms leading-first: larger monomials come first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

// Homogeneous polynomial over Q. Every stored term has total degree equal to
// the declared degree; the zero polynomial keeps its degree tag (possibly
// negative, e.g. the derivative of a constant) so graded arithmetic stays
// total.
class GradedPoly {
 public:
  using TermMap = std::map<Monomial, Rat, GrlexGreater>;

  GradedPoly() = default;
  static GradedPoly zero(std::size_t nvars, long degree);
  static GradedPoly monomial(Monomial m, Rat coeff);
  static GradedPoly constant(std::size_t nvars, Rat value);

  long degree() const { return degree_; }
  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  Rat coefficient(const Monomial& m) const;

  /// Zero polynomials compare equal regardless of degree tag.
  bool operator==(const GradedPoly& other) const;

  GradedPoly operator+(const GradedPoly& other) const;
  GradedPoly operator-(const GradedPoly& other) const;
  GradedPoly operator*(const GradedPoly& other) const;
  GradedPoly scaled(const Rat& c) const;
  GradedPoly operator-() const { return scaled(Rat(-1)); }

  /// Adds coeff·m in place, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rat& coeff);

 private:
  GradedPoly(std::size_t nvars, long degree) : nvars_(nvars), degree_(degree) {}

  std::size_t nvars_ = 0;
  long degree_ = 0;
  TermMap terms_;
};

/// All monomials of the given total degree in nvars variables, in descending
/// graded-lex order (x0^degree first). Count = C(degree + nvars - 1, nvars - 1).
/// degree < 0 yields the empty list.
std::vector<Monomial> monomial_basis(std::size_t nvars, long degree);

/// Exact formal partial derivative; degree drops by one (zero polynomial
/// tagged with degree-1 if everything cancels).
GradedPoly partial_derivative(const GradedPoly& p, std::size_t var);

/// Parses the ASCII grammar
///   poly   := term (('+'|'-') term)*
///   term   := coeff? ('*'? factor)*
///   factor := 'x'INDEX ('^'EXPONENT)?
///   coeff  := INTEGER | INTEGER'/'INTEGER
/// with whitespace ignored. A leading sign on the first term is accepted so
/// that formatted output always parses back. Throws ParseError on syntax
/// errors (with position), InputError on non-homogeneous input or variable
/// index >= nvars.
GradedPoly parse_poly(const std::string& text, std::size_t nvars);

/// Deterministic inverse of parse_poly: terms in descending graded-lex order,
/// no whitespace, e.g. "x0^2*x1-1/2*x2^3". The zero polynomial prints as "0".
std::string format_poly(const GradedPoly& p);

/// x0^d + x1^d + ... + x{nvars-1}^d.
GradedPoly fermat_poly(std::size_t nvars, long d);

}  // namespace ratderham
