#include "ratderham/rational.hpp"

#include <cctype>

namespace ratderham {

std::optional<Rat> rat_from_string(const std::string& text) {
  if (text.empty()) return std::nullopt;
  // Validate the shape by hand: GMP's string constructor accepts whitespace
  // and other liberties we do not want in wire formats.
  std::size_t i = 0;
  auto expect_integer = [&]() -> bool {
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    return i > start;
  };
  if (!expect_integer()) return std::nullopt;
  if (i < text.size()) {
    if (text[i] != '/') return std::nullopt;
    ++i;
    if (!expect_integer() || i != text.size()) return std::nullopt;
  }
  try {
    Rat value(text);
    if (value.get_den() == 0) return std::nullopt;
    value.canonicalize();
    return value;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::string rat_to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_str();
}

}  // namespace ratderham
