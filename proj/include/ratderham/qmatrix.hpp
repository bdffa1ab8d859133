#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ratderham/rational.hpp"

namespace ratderham {

// Dense matrix over exact rationals, row-major. Empty matrices (0 rows
// and/or 0 cols) are valid.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Rat(0)) {}
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rat& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Rat& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  const std::vector<Rat>& entries() const { return entries_; }

  QMatrix transposed() const;

  bool operator==(const QMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

struct RrefResult {
  QMatrix rref;
  std::vector<std::size_t> pivot_columns;  // strictly increasing
  std::size_t rank = 0;                    // == pivot_columns.size()
};

/// Reduced row echelon form (Gauss–Jordan, exact). The result is the unique
/// RREF of `m`: pivot entries are 1 with zeros above and below.
RrefResult rref(const QMatrix& m);

/// Solves m·x = rhs exactly. Returns the RREF particular solution (all free
/// variables zero) or nullopt when the system is inconsistent. The returned
/// vector is re-substituted before returning.
/// Throws InputError when rhs length != m.rows().
std::optional<RatVec> solve(const QMatrix& m, const RatVec& rhs);

/// Basis of the right kernel {v : m·v = 0}. Size == cols − rank. Each vector
/// is verified to be annihilated by m before returning.
std::vector<RatVec> kernel_basis(const QMatrix& m);

RatVec mat_vec(const QMatrix& m, const RatVec& v);
QMatrix mat_mul(const QMatrix& a, const QMatrix& b);

}  // namespace ratderham
