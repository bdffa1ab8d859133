#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace ratderham {

// Exact arbitrary-precision rational scalar. GMP keeps values canonical
// (lowest terms, positive denominator) after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

/// Parses "p", "-p" or "p/q" (q > 0 after canonicalization). Returns nullopt
/// on malformed text or zero denominator.
std::optional<Rat> rat_from_string(const std::string& text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rat_to_string(const Rat& x);

using RatVec = std::vector<Rat>;

}  // namespace ratderham
