#include "ratderham/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ratderham/errors.hpp"

namespace ratderham {

long Monomial::degree() const {
  long total = 0;
  for (std::uint32_t e : exponents_) total += e;
  return total;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  const long da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Same degree: lexicographic with x0 most significant.
  return std::lexicographical_compare(a.exponents().begin(), a.exponents().end(),
                                      b.exponents().begin(), b.exponents().end());
}

GradedPoly GradedPoly::zero(std::size_t nvars, long degree) { return GradedPoly(nvars, degree); }

GradedPoly GradedPoly::monomial(Monomial m, Rat coeff) {
  GradedPoly p(m.nvars(), m.degree());
  p.add_term(m, coeff);
  return p;
}

GradedPoly GradedPoly::constant(std::size_t nvars, Rat value) {
  GradedPoly p(nvars, 0);
  p.add_term(Monomial(std::vector<std::uint32_t>(nvars, 0)), value);
  return p;
}

Rat GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

bool GradedPoly::operator==(const GradedPoly& other) const {
  if (is_zero() && other.is_zero()) return true;
  return nvars_ == other.nvars_ && degree_ == other.degree_ && terms_ == other.terms_;
}

void GradedPoly::add_term(const Monomial& m, const Rat& coeff) {
  // Coefficients must be canonical at every store: two-argument Rat
  // construction does not reduce to lowest terms on its own, and GMP
  // comparisons assume canonical operands.
  Rat c = coeff;
  c.canonicalize();
  if (ratderham::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (ratderham::is_zero(it->second)) terms_.erase(it);
  }
}

GradedPoly GradedPoly::operator+(const GradedPoly& other) const {
  if (nvars_ != other.nvars_) throw InputError("polynomial addition: variable count mismatch");
  if (!is_zero() && !other.is_zero() && degree_ != other.degree_) {
    throw DegreeMismatch("polynomial addition requires equal degrees", degree_, other.degree_);
  }
  GradedPoly out = *this;
  if (out.is_zero()) out.degree_ = other.degree_;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

GradedPoly GradedPoly::operator-(const GradedPoly& other) const { return *this + other.scaled(Rat(-1)); }

GradedPoly GradedPoly::operator*(const GradedPoly& other) const {
  if (nvars_ != other.nvars_) throw InputError("polynomial product: variable count mismatch");
  GradedPoly out(nvars_, degree_ + other.degree_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      std::vector<std::uint32_t> exps(nvars_);
      for (std::size_t v = 0; v < nvars_; ++v) exps[v] = ma.exponent(v) + mb.exponent(v);
      out.add_term(Monomial(std::move(exps)), ca * cb);
    }
  }
  return out;
}

GradedPoly GradedPoly::scaled(const Rat& c) const {
  GradedPoly out(nvars_, degree_);
  Rat cc = c;
  cc.canonicalize();
  if (ratderham::is_zero(cc)) return out;
  for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, coeff * cc);
  return out;
}

namespace {

void enumerate_monomials(std::size_t nvars, long degree, std::size_t var,
                         std::vector<std::uint32_t>& current, std::vector<Monomial>& out) {
  if (var + 1 == nvars) {
    current[var] = static_cast<std::uint32_t>(degree);
    out.emplace_back(current);
    return;
  }
  for (long e = degree; e >= 0; --e) {
    current[var] = static_cast<std::uint32_t>(e);
    enumerate_monomials(nvars, degree - e, var + 1, current, out);
  }
}

}  // namespace

std::vector<Monomial> monomial_basis(std::size_t nvars, long degree) {
  if (nvars == 0) throw InputError("monomial_basis: nvars must be >= 1");
  std::vector<Monomial> out;
  if (degree < 0) return out;
  std::vector<std::uint32_t> current(nvars, 0);
  enumerate_monomials(nvars, degree, 0, current, out);
  return out;
}

GradedPoly partial_derivative(const GradedPoly& p, std::size_t var) {
  if (var >= p.nvars()) throw InputError("partial_derivative: variable index out of range");
  GradedPoly out = GradedPoly::zero(p.nvars(), p.degree() - 1);
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = m.exponent(var);
    if (e == 0) continue;
    std::vector<std::uint32_t> exps = m.exponents();
    exps[var] = e - 1;
    out.add_term(Monomial(std::move(exps)), c * Rat(e));
  }
  return out;
}

namespace {

// Recursive-descent parser over the whitespace-stripped source, tracking
// original positions for error reporting.
class PolyParser {
 public:
  PolyParser(const std::string& text, std::size_t nvars) : nvars_(nvars) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        chars_.push_back(text[i]);
        positions_.push_back(i);
      }
    }
  }

  GradedPoly parse() {
    if (chars_.empty()) throw ParseError("empty polynomial", 0);
    bool first_negative = false;
    if (peek() == '+' || peek() == '-') first_negative = (advance() == '-');
    Terms terms;
    parse_term(terms, first_negative);
    while (!at_end()) {
      const char op = peek();
      if (op != '+' && op != '-') throw ParseError("expected '+' or '-'", position());
      advance();
      parse_term(terms, op == '-');
    }
    return build(terms);
  }

 private:
  struct Term {
    Monomial monomial;
    Rat coeff;
    std::size_t position;  // where the term started, for homogeneity errors
  };
  using Terms = std::vector<Term>;

  bool at_end() const { return index_ >= chars_.size(); }
  char peek() const { return chars_[index_]; }
  char advance() { return chars_[index_++]; }
  std::size_t position() const {
    return index_ < positions_.size() ? positions_[index_]
                                      : (positions_.empty() ? 0 : positions_.back() + 1);
  }

  bool at_digit() const { return !at_end() && std::isdigit(static_cast<unsigned char>(peek())); }

  Int parse_integer() {
    if (!at_digit()) throw ParseError("expected integer", position());
    std::string digits;
    while (at_digit()) digits.push_back(advance());
    return Int(digits);
  }

  void parse_term(Terms& terms, bool negative) {
    const std::size_t term_pos = position();
    Rat coeff(1);
    bool saw_anything = false;
    if (at_digit()) {
      const Int num = parse_integer();
      coeff = Rat(num);
      if (!at_end() && peek() == '/') {
        advance();
        const std::size_t den_pos = position();
        const Int den = parse_integer();
        if (den == 0) throw ParseError("zero denominator", den_pos);
        coeff = Rat(num, den);
        coeff.canonicalize();
      }
      saw_anything = true;
    }
    std::vector<std::uint32_t> exps(nvars_, 0);
    while (!at_end() && (peek() == '*' || peek() == 'x')) {
      if (peek() == '*') {
        advance();
        if (at_end() || peek() != 'x') throw ParseError("expected variable after '*'", position());
      }
      parse_factor(exps);
      saw_anything = true;
    }
    if (!saw_anything) throw ParseError("expected term", term_pos);
    if (negative) coeff = -coeff;
    terms.push_back({Monomial(std::move(exps)), coeff, term_pos});
  }

  void parse_factor(std::vector<std::uint32_t>& exps) {
    advance();  // 'x'
    const std::size_t idx_pos = position();
    const Int index = parse_integer();
    if (index >= Int(static_cast<long>(nvars_))) {
      throw InputError("variable index " + index.get_str() + " out of range (nvars=" +
                       std::to_string(nvars_) + ")");
    }
    const std::size_t var = index.get_ui();
    Int exponent = 1;
    if (!at_end() && peek() == '^') {
      advance();
      exponent = parse_integer();
      if (exponent > Int(1000000)) throw ParseError("exponent too large", idx_pos);
    }
    exps[var] += exponent.get_ui();
  }

  GradedPoly build(const Terms& terms) {
    const long degree = terms.front().monomial.degree();
    for (const Term& t : terms) {
      if (t.monomial.degree() != degree) {
        throw InputError("non-homogeneous polynomial: term at position " +
                         std::to_string(t.position) + " has degree " +
                         std::to_string(t.monomial.degree()) + ", expected " +
                         std::to_string(degree));
      }
    }
    GradedPoly p = GradedPoly::zero(nvars_, degree);
    for (const Term& t : terms) p.add_term(t.monomial, t.coeff);
    return p;
  }

  std::size_t nvars_;
  std::vector<char> chars_;
  std::vector<std::size_t> positions_;
  std::size_t index_ = 0;
};

void format_monomial(std::ostringstream& out, const Monomial& m, bool leading_star) {
  bool first = !leading_star;
  for (std::size_t v = 0; v < m.nvars(); ++v) {
    const std::uint32_t e = m.exponent(v);
    if (e == 0) continue;
    if (!first) out << '*';
    first = false;
    out << 'x' << v;
    if (e > 1) out << '^' << e;
  }
}

}  // namespace

GradedPoly parse_poly(const std::string& text, std::size_t nvars) {
  if (nvars == 0) throw InputError("parse_poly: nvars must be >= 1");
  return PolyParser(text, nvars).parse();
}

std::string format_poly(const GradedPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    if (!first) out << (negative ? '-' : '+');
    else if (negative) out << '-';
    first = false;
    const Rat mag = abs(c);
    const bool constant_monomial = m.degree() == 0;
    if (mag != 1 || constant_monomial) {
      out << rat_to_string(mag);
      if (!constant_monomial) format_monomial(out, m, true);
    } else {
      format_monomial(out, m, false);
    }
  }
  return out.str();
}

GradedPoly fermat_poly(std::size_t nvars, long d) {
  if (nvars == 0 || d < 1) throw InputError("fermat_poly: requires nvars >= 1 and d >= 1");
  GradedPoly p = GradedPoly::zero(nvars, d);
  for (std::size_t v = 0; v < nvars; ++v) {
    std::vector<std::uint32_t> exps(nvars, 0);
    exps[v] = static_cast<std::uint32_t>(d);
    p.add_term(Monomial(std::move(exps)), Rat(1));
  }
  return p;
}

}  // namespace ratderham
