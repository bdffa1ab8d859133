#include "ratderham/qmatrix.hpp"

#include <utility>

#include "ratderham/errors.hpp"

namespace ratderham {

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw InputError("matrix entry count does not match rows*cols");
  }
  for (Rat& e : entries_) e.canonicalize();
}

QMatrix QMatrix::transposed() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

RrefResult rref(const QMatrix& m) {
  RrefResult result;
  result.rref = m;
  QMatrix& a = result.rref;
  const std::size_t rows = a.rows(), cols = a.cols();

  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t r = pivot_row;
    while (r < rows && is_zero(a.at(r, col))) ++r;
    if (r == rows) continue;
    if (r != pivot_row) {
      for (std::size_t c = col; c < cols; ++c) std::swap(a.at(r, c), a.at(pivot_row, c));
    }
    const Rat inv = 1 / a.at(pivot_row, col);
    for (std::size_t c = col; c < cols; ++c) a.at(pivot_row, c) *= inv;
    for (std::size_t rr = 0; rr < rows; ++rr) {
      if (rr == pivot_row || is_zero(a.at(rr, col))) continue;
      const Rat factor = a.at(rr, col);
      for (std::size_t c = col; c < cols; ++c) a.at(rr, c) -= factor * a.at(pivot_row, c);
    }
    result.pivot_columns.push_back(col);
    ++pivot_row;
  }
  result.rank = result.pivot_columns.size();
  return result;
}

std::optional<RatVec> solve(const QMatrix& m, const RatVec& rhs) {
  if (rhs.size() != m.rows()) {
    throw InputError("solve: rhs length " + std::to_string(rhs.size()) +
                     " does not match matrix rows " + std::to_string(m.rows()));
  }
  // Row-reduce the augmented matrix [m | rhs].
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = rhs[r];
  }
  const RrefResult reduced = rref(aug);
  for (std::size_t c : reduced.pivot_columns) {
    if (c == m.cols()) return std::nullopt;  // pivot in the rhs column: inconsistent
  }
  RatVec x(m.cols(), Rat(0));
  for (std::size_t i = 0; i < reduced.rank; ++i) {
    x[reduced.pivot_columns[i]] = reduced.rref.at(i, m.cols());
  }
  // Exact re-substitution guard.
  const RatVec check = mat_vec(m, x);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (check[r] != rhs[r]) throw Error("internal", "solve verification failed");
  }
  return x;
}

std::vector<RatVec> kernel_basis(const QMatrix& m) {
  const RrefResult reduced = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : reduced.pivot_columns) is_pivot[c] = true;

  std::vector<RatVec> basis;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    RatVec v(m.cols(), Rat(0));
    v[free_col] = 1;
    for (std::size_t i = 0; i < reduced.rank; ++i) {
      v[reduced.pivot_columns[i]] = -reduced.rref.at(i, free_col);
    }
    basis.push_back(std::move(v));
  }
  for (const RatVec& v : basis) {
    for (const Rat& entry : mat_vec(m, v)) {
      if (!is_zero(entry)) throw Error("internal", "kernel verification failed");
    }
  }
  return basis;
}

RatVec mat_vec(const QMatrix& m, const RatVec& v) {
  if (v.size() != m.cols()) throw InputError("mat_vec: dimension mismatch");
  RatVec out(m.rows(), Rat(0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rat acc(0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!is_zero(m.at(r, c)) && !is_zero(v[c])) acc += m.at(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("mat_mul: dimension mismatch");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a.at(r, k))) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out.at(r, c) += a.at(r, k) * b.at(k, c);
    }
  return out;
}

}  // namespace ratderham
