#include "ratderham/jacobian.hpp"

#include <algorithm>

#include "ratderham/errors.hpp"

namespace ratderham {

namespace {

// out -= c * row, both sorted by index. Result stays sorted and canonical.
SparseVec sparse_axpy(const SparseVec& out, const Rat& c, const SparseVec& row) {
  SparseVec result;
  result.reserve(out.size() + row.size());
  std::size_t i = 0, j = 0;
  while (i < out.size() || j < row.size()) {
    if (j == row.size() || (i < out.size() && out[i].first < row[j].first)) {
      result.push_back(out[i++]);
    } else if (i == out.size() || row[j].first < out[i].first) {
      result.emplace_back(row[j].first, -c * row[j].second);
      ++j;
    } else {
      Rat v = out[i].second - c * row[j].second;
      if (!is_zero(v)) result.emplace_back(out[i].first, std::move(v));
      ++i, ++j;
    }
  }
  return result;
}

SparseVec poly_to_sparse(const GradedPieceDecomposition& piece, const GradedPoly& p) {
  SparseVec v;
  v.reserve(p.terms().size());
  for (const auto& [m, c] : p.terms()) v.emplace_back(piece.monomial_index(m), c);
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

GradedPoly sparse_to_poly(const GradedPieceDecomposition& piece, const SparseVec& v,
                          std::size_t nvars, long degree) {
  GradedPoly p = GradedPoly::zero(nvars, degree);
  for (const auto& [col, c] : v) p.add_term(piece.monomials()[col], c);
  return p;
}

}  // namespace

std::vector<Monomial> GradedPieceDecomposition::pivot_monomials() const {
  std::vector<Monomial> out;
  out.reserve(pivot_columns_.size());
  for (std::size_t c : pivot_columns_) out.push_back(monomials_[c]);
  return out;
}

std::vector<Monomial> GradedPieceDecomposition::coset_basis() const {
  std::vector<Monomial> out;
  out.reserve(coset_columns_.size());
  for (std::size_t c : coset_columns_) out.push_back(monomials_[c]);
  return out;
}

std::size_t GradedPieceDecomposition::monomial_index(const Monomial& m) const {
  // monomials_ is sorted descending in graded-lex.
  auto it = std::lower_bound(monomials_.begin(), monomials_.end(), m, GrlexGreater{});
  if (it == monomials_.end() || !(*it == m)) {
    throw Error("internal", "monomial not in graded piece basis");
  }
  return static_cast<std::size_t>(it - monomials_.begin());
}

GradedPieceDecomposition::Reduction GradedPieceDecomposition::reduce(SparseVec v) const {
  Reduction out;
  std::size_t idx = 0;
  while (idx < v.size()) {
    const std::size_t col = v[idx].first;
    const long row = col_to_row_[col];
    if (row < 0) {
      ++idx;  // coset column, keep
      continue;
    }
    const Rat c = v[idx].second;
    out.steps.emplace_back(static_cast<std::size_t>(row), c);
    // Rows only touch columns >= their leading column, so entries before idx
    // are untouched and the scan can resume in place.
    v = sparse_axpy(v, c, rows_[static_cast<std::size_t>(row)]);
  }
  out.remainder = std::move(v);
  return out;
}

SparseVec GradedPieceDecomposition::combine_products(
    const std::vector<std::pair<std::size_t, Rat>>& steps) const {
  SparseVec acc;
  for (const auto& [row, c] : steps) acc = sparse_axpy(acc, -c, trackings_[row]);
  return acc;
}

ContextPtr build_context(long n, GradedPoly f) {
  if (n < 1) throw InputError("build_context: n must be >= 1");
  const std::size_t nvars = static_cast<std::size_t>(n) + 2;
  if (f.nvars() != nvars) {
    throw InputError("build_context: f must live in " + std::to_string(nvars) +
                     " variables, got " + std::to_string(f.nvars()));
  }
  const long d = f.degree();
  if (d == 0) throw DomainError("degree_too_small", "build_context: degree of f must be >= 1");
  if (d < 0 || f.is_zero()) {
    throw SingularHypersurface("singular hypersurface: defining polynomial is zero",
                               std::max(0L, (n + 2) * (d - 2) + 1));
  }

  auto ctx = std::shared_ptr<HypersurfaceContext>(new HypersurfaceContext());
  ctx->n_ = n;
  ctx->d_ = d;
  ctx->f_ = std::move(f);
  ctx->socle_degree_ = (n + 2) * (d - 2);
  ctx->jacobian_generators_.reserve(nvars);
  GradedPoly euler = GradedPoly::zero(nvars, d);
  for (std::size_t v = 0; v < nvars; ++v) {
    GradedPoly dv = partial_derivative(ctx->f_, v);
    std::vector<std::uint32_t> exps(nvars, 0);
    exps[v] = 1;
    euler = euler + GradedPoly::monomial(Monomial(exps), Rat(1)) * dv;
    ctx->jacobian_generators_.push_back(std::move(dv));
  }
  if (!(euler == ctx->f_.scaled(Rat(d)))) {
    throw Error("internal", "Euler identity failed");
  }

  const long check_degree = ctx->socle_degree_ + 1;
  if (check_degree >= 0) {
    auto piece = ctx->decomposition(check_degree);
    if (!piece->coset_columns().empty()) {
      throw SingularHypersurface(
          "singular hypersurface: dim (R/J)_" + std::to_string(check_degree) + " = " +
              std::to_string(piece->coset_columns().size()) + " != 0",
          check_degree);
    }
  }
  return ctx;
}

std::shared_ptr<const GradedPieceDecomposition> HypersurfaceContext::decomposition(
    long degree) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(degree);
    if (it != cache_.end()) return it->second;
  }
  // Compute outside the lock; concurrent duplication is harmless, the first
  // insert wins and everyone observes an identical value.
  auto piece = compute_decomposition(degree);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto [it, inserted] = cache_.try_emplace(degree, std::move(piece));
  return it->second;
}

std::shared_ptr<const GradedPieceDecomposition> HypersurfaceContext::compute_decomposition(
    long degree) const {
  auto piece = std::make_shared<GradedPieceDecomposition>();
  piece->degree_ = degree;
  if (degree < 0) return piece;

  piece->monomials_ = monomial_basis(nvars(), degree);
  const std::size_t ncols = piece->monomials_.size();
  piece->col_to_row_.assign(ncols, -1);

  const std::vector<Monomial> multipliers = monomial_basis(nvars(), degree - d_ + 1);
  piece->product_count_ = multipliers.size() * nvars();

  std::size_t product_index = 0;
  for (std::size_t gen = 0; gen < nvars(); ++gen) {
    const GradedPoly& g = jacobian_generators_[gen];
    for (const Monomial& m : multipliers) {
      // Sparse coefficient vector of m * g over the monomial basis.
      SparseVec row;
      row.reserve(g.terms().size());
      for (const auto& [gm, gc] : g.terms()) {
        std::vector<std::uint32_t> exps(nvars(), 0);
        for (std::size_t v = 0; v < nvars(); ++v) exps[v] = gm.exponent(v) + m.exponent(v);
        row.emplace_back(piece->monomial_index(Monomial(std::move(exps))), gc);
      }
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      SparseVec tracking{{product_index, Rat(1)}};
      // Reduce against the pivots found so far.
      std::size_t idx = 0;
      while (idx < row.size()) {
        const long r = piece->col_to_row_[row[idx].first];
        if (r < 0) {
          ++idx;
          continue;
        }
        const Rat c = row[idx].second;
        row = sparse_axpy(row, c, piece->rows_[static_cast<std::size_t>(r)]);
        tracking = sparse_axpy(tracking, c, piece->trackings_[static_cast<std::size_t>(r)]);
      }
      if (!row.empty()) {
        const Rat lead = row.front().second;
        if (lead != 1) {
          const Rat inv = 1 / lead;
          for (auto& [col, c] : row) c *= inv;
          for (auto& [p, c] : tracking) c *= inv;
        }
        piece->col_to_row_[row.front().first] = static_cast<long>(piece->rows_.size());
        piece->row_lead_.push_back(row.front().first);
        piece->rows_.push_back(std::move(row));
        piece->trackings_.push_back(std::move(tracking));
      }
      ++product_index;
    }
  }

  for (std::size_t col = 0; col < ncols; ++col) {
    if (piece->col_to_row_[col] >= 0) piece->pivot_columns_.push_back(col);
    else piece->coset_columns_.push_back(col);
  }
  return piece;
}

std::int64_t hilbert_function(const HypersurfaceContext& ctx, long e) {
  if (e < 0 || e > ctx.socle_degree()) return 0;
  auto piece = ctx.decomposition(e);
  return static_cast<std::int64_t>(piece->coset_columns().size());
}

std::optional<std::vector<GradedPoly>> membership_lift(const HypersurfaceContext& ctx,
                                                       const GradedPoly& A) {
  const long e = A.degree();
  const long lift_degree = e - ctx.d() + 1;
  if (A.is_zero()) {
    return std::vector<GradedPoly>(ctx.nvars(), GradedPoly::zero(ctx.nvars(), lift_degree));
  }
  if (lift_degree < 0) return std::nullopt;

  auto piece = ctx.decomposition(e);
  auto reduction = piece->reduce(poly_to_sparse(*piece, A));
  if (!reduction.remainder.empty()) return std::nullopt;

  const SparseVec combo = piece->combine_products(reduction.steps);
  const std::vector<Monomial> multipliers = monomial_basis(ctx.nvars(), lift_degree);
  std::vector<GradedPoly> lifts(ctx.nvars(), GradedPoly::zero(ctx.nvars(), lift_degree));
  for (const auto& [product, c] : combo) {
    const std::size_t gen = product / multipliers.size();
    const std::size_t mono = product % multipliers.size();
    lifts[gen].add_term(multipliers[mono], c);
  }

  GradedPoly check = GradedPoly::zero(ctx.nvars(), e);
  for (std::size_t v = 0; v < ctx.nvars(); ++v) {
    check = check + lifts[v] * ctx.jacobian_generators()[v];
  }
  if (!(check == A)) throw Error("internal", "membership lift verification failed");
  return lifts;
}

GradedPoly canonical_rep(const HypersurfaceContext& ctx, const GradedPoly& A) {
  if (A.is_zero() || A.degree() < 0) return A;
  auto piece = ctx.decomposition(A.degree());
  auto reduction = piece->reduce(poly_to_sparse(*piece, A));
  return sparse_to_poly(*piece, reduction.remainder, ctx.nvars(), A.degree());
}

std::vector<Int> hilbert_series_oracle(long n, long d) {
  if (n < 1 || d < 1) throw InputError("hilbert_series_oracle: requires n >= 1 and d >= 1");
  const long socle = (n + 2) * (d - 2);
  if (socle < 0) return {};
  // Iterated truncated convolution of (1 + t + ... + t^(d-2)).
  std::vector<Int> acc{Int(1)};
  for (long factor = 0; factor < n + 2; ++factor) {
    std::vector<Int> next(std::min<long>(socle, static_cast<long>(acc.size()) - 1 + d - 2) + 1,
                          Int(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == 0) continue;
      for (long j = 0; j <= d - 2; ++j) {
        const std::size_t k = i + static_cast<std::size_t>(j);
        if (k >= next.size()) break;
        next[k] += acc[i];
      }
    }
    acc = std::move(next);
  }
  acc.resize(static_cast<std::size_t>(socle) + 1, Int(0));
  return acc;
}

}  // namespace ratderham
