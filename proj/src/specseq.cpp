#include "ratderham/specseq.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "ratderham/errors.hpp"

namespace ratderham {

namespace {

QMatrix identity_matrix(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix hcat(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw Error("internal", "hcat: row mismatch");
  QMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out.at(r, a.cols() + c) = b.at(r, c);
  }
  return out;
}

QMatrix columns_subset(const QMatrix& m, const std::vector<std::size_t>& cols) {
  QMatrix out(m.rows(), cols.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t i = 0; i < cols.size(); ++i) out.at(r, i) = m.at(r, cols[i]);
  return out;
}

// Independent subset of the columns of m (the pivot columns of its RREF).
QMatrix column_space_basis(const QMatrix& m) {
  return columns_subset(m, rref(m).pivot_columns);
}

std::size_t span_dim(const QMatrix& m) { return rref(m).rank; }

// {x : d·x ∈ span(target)} as a column span. With no target columns this is
// the kernel of d.
QMatrix preimage(const QMatrix& d, const QMatrix& target) {
  QMatrix block(d.rows(), d.cols() + target.cols());
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) block.at(r, c) = d.at(r, c);
    for (std::size_t c = 0; c < target.cols(); ++c) block.at(r, d.cols() + c) = -target.at(r, c);
  }
  const std::vector<RatVec> ker = kernel_basis(block);
  QMatrix xs(d.cols(), ker.size());
  for (std::size_t i = 0; i < ker.size(); ++i)
    for (std::size_t r = 0; r < d.cols(); ++r) xs.at(r, i) = ker[i][r];
  return column_space_basis(xs);
}

QMatrix intersect(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw Error("internal", "intersect: row mismatch");
  QMatrix block(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) block.at(r, c) = a.at(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) block.at(r, a.cols() + c) = -b.at(r, c);
  }
  const std::vector<RatVec> ker = kernel_basis(block);
  QMatrix vecs(a.rows(), ker.size());
  for (std::size_t i = 0; i < ker.size(); ++i) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      Rat acc(0);
      for (std::size_t c = 0; c < a.cols(); ++c) acc += a.at(r, c) * ker[i][c];
      vecs.at(r, i) = acc;
    }
  }
  return column_space_basis(vecs);
}

QMatrix sum_spans(const QMatrix& a, const QMatrix& b) { return column_space_basis(hcat(a, b)); }

bool contains_column(const QMatrix& span, const RatVec& v) {
  return solve(span, v).has_value();
}

bool contains_columns(const QMatrix& span, const QMatrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    RatVec v(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m.at(r, c);
    if (!contains_column(span, v)) return false;
  }
  return true;
}

// Representative columns of `ambient` whose classes form a basis of
// span(ambient)/span(sub). Requires span(sub) ⊆ span(ambient).
QMatrix quotient_reps(const QMatrix& sub, const QMatrix& ambient) {
  const RrefResult reduced = rref(hcat(sub, ambient));
  std::vector<std::size_t> picked;
  for (std::size_t c : reduced.pivot_columns) {
    if (c >= sub.cols()) picked.push_back(c - sub.cols());
  }
  return columns_subset(ambient, picked);
}

// Coordinates of v on the `reps` part of the decomposition span(sub)+span(reps).
// The reps coordinates are unique even when sub has redundant columns.
RatVec quotient_coords(const QMatrix& sub, const QMatrix& reps, const RatVec& v) {
  auto x = solve(hcat(sub, reps), v);
  if (!x) throw Error("internal", "quotient_coords: vector outside the ambient span");
  return RatVec(x->begin() + static_cast<long>(sub.cols()), x->end());
}

RatVec column_of(const QMatrix& m, std::size_t c) {
  RatVec v(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m.at(r, c);
  return v;
}

bool is_zero_matrix(const QMatrix& m) {
  for (const Rat& e : m.entries())
    if (!is_zero(e)) return false;
  return true;
}

}  // namespace

std::size_t CochainComplex::dim(long degree) const {
  if (degree < min_degree || degree > max_degree) return 0;
  return dims[static_cast<std::size_t>(degree - min_degree)];
}

QMatrix CochainComplex::differential(long degree) const {
  if (degree < min_degree || degree >= max_degree) return QMatrix(dim(degree + 1), dim(degree));
  return differentials[static_cast<std::size_t>(degree - min_degree)];
}

void CochainComplex::validate() const {
  if (max_degree < min_degree) throw InputError("complex: empty degree range");
  const std::size_t span = static_cast<std::size_t>(max_degree - min_degree) + 1;
  if (dims.size() != span) throw InputError("complex: dims length does not match degree range");
  if (differentials.size() + 1 != span) {
    throw InputError("complex: expected one differential per degree pair");
  }
  for (std::size_t i = 0; i < differentials.size(); ++i) {
    if (differentials[i].rows() != dims[i + 1] || differentials[i].cols() != dims[i]) {
      throw InputError("complex: differential at degree " +
                       std::to_string(min_degree + static_cast<long>(i)) + " has wrong shape");
    }
  }
  for (std::size_t i = 0; i + 1 < differentials.size(); ++i) {
    if (!is_zero_matrix(mat_mul(differentials[i + 1], differentials[i]))) {
      throw InputError("complex: d∘d != 0 at degree " +
                       std::to_string(min_degree + static_cast<long>(i)));
    }
  }
}

QMatrix FilteredComplex::filtration_matrix(long degree, long level) const {
  const std::size_t n = complex.dim(degree);
  if (degree < complex.min_degree || degree > complex.max_degree) return QMatrix(0, 0);
  if (level <= 0) return identity_matrix(n);
  const auto& chain = filtration[static_cast<std::size_t>(degree - complex.min_degree)];
  if (static_cast<std::size_t>(level) >= chain.size()) return QMatrix(n, 0);
  return chain[static_cast<std::size_t>(level)];
}

std::size_t FilteredComplex::filtration_length() const {
  std::size_t len = 0;
  for (const auto& chain : filtration) len = std::max(len, chain.size());
  return len;
}

void FilteredComplex::validate() const {
  complex.validate();
  if (filtration.size() != complex.dims.size()) {
    throw InputError("filtration: expected one chain per degree");
  }
  for (long m = complex.min_degree; m <= complex.max_degree; ++m) {
    const auto& chain = filtration[static_cast<std::size_t>(m - complex.min_degree)];
    const std::size_t n = complex.dim(m);
    for (const QMatrix& level : chain) {
      if (level.rows() != n) {
        throw InputError("filtration: level matrix at degree " + std::to_string(m) +
                         " has wrong row count");
      }
    }
    if (n > 0 && (chain.empty() || span_dim(chain.front()) != n)) {
      throw InputError("filtration: F^0 at degree " + std::to_string(m) +
                       " does not span the whole space");
    }
    for (std::size_t lvl = 1; lvl < chain.size(); ++lvl) {
      if (!contains_columns(chain[lvl - 1], chain[lvl])) {
        throw InputError("filtration: level " + std::to_string(lvl) + " at degree " +
                         std::to_string(m) + " is not nested in level " + std::to_string(lvl - 1));
      }
    }
  }
  const std::size_t levels = filtration_length();
  for (long m = complex.min_degree; m < complex.max_degree; ++m) {
    const QMatrix d = complex.differential(m);
    for (std::size_t lvl = 1; lvl < levels; ++lvl) {
      const QMatrix image = mat_mul(d, filtration_matrix(m, static_cast<long>(lvl)));
      if (!contains_columns(filtration_matrix(m + 1, static_cast<long>(lvl)), image)) {
        throw InputError("filtration: differential does not preserve level " +
                         std::to_string(lvl) + " at degree " + std::to_string(m));
      }
    }
  }
}

std::pair<long, long> SpectralPage::target_of(long p, long q) const {
  const long s = std::max(r - 1, 0L);
  return {p + s, q - s + 1};
}

std::size_t SpectralPage::entry(long p, long q) const {
  auto it = entries.find({p, q});
  return it == entries.end() ? 0 : it->second;
}

std::size_t SpectralPage::total_on_diagonal(long m) const {
  std::size_t total = 0;
  for (const auto& [pq, dim] : entries) {
    if (pq.first + pq.second == m) total += dim;
  }
  return total;
}

bool SpectralPage::all_differentials_zero() const {
  for (const auto& [pq, d] : differentials) {
    if (!is_zero_matrix(d)) return false;
  }
  return true;
}

namespace {

struct PageCell {
  QMatrix cycles;      // Z = F^p ∩ d^{-1}(F^(p+s))
  QMatrix boundaries;  // D ⊆ Z
  QMatrix reps;        // columns of Z giving a basis of Z/D
};

PageCell compute_cell(const FilteredComplex& fc, long m, long p, long s) {
  const QMatrix fp = fc.filtration_matrix(m, p);
  const QMatrix d_here = fc.complex.differential(m);
  const QMatrix d_prev = fc.complex.differential(m - 1);

  PageCell cell;
  cell.cycles = intersect(fp, preimage(d_here, fc.filtration_matrix(m + 1, p + s)));
  const QMatrix d1 =
      intersect(fc.filtration_matrix(m, p + 1), preimage(d_here, fc.filtration_matrix(m + 1, p + s)));
  const QMatrix lower = intersect(fc.filtration_matrix(m - 1, p - s + 1), preimage(d_prev, fp));
  cell.boundaries = sum_spans(d1, mat_mul(d_prev, lower));
  cell.reps = quotient_reps(cell.boundaries, cell.cycles);
  return cell;
}

SpectralPage page_unchecked(const FilteredComplex& fc, long r) {
  const long s = std::max(r - 1, 0L);
  const long max_p = static_cast<long>(fc.filtration_length());
  SpectralPage result;
  result.r = r;

  std::map<std::pair<long, long>, PageCell> cells;  // keyed by (degree, p)
  for (long m = fc.complex.min_degree; m <= fc.complex.max_degree; ++m) {
    for (long p = 0; p <= max_p; ++p) {
      PageCell cell = compute_cell(fc, m, p, s);
      result.entries[{p, m - p}] = cell.reps.cols();
      cells[{m, p}] = std::move(cell);
    }
  }
  for (long m = fc.complex.min_degree; m <= fc.complex.max_degree; ++m) {
    for (long p = 0; p <= max_p; ++p) {
      const PageCell& src = cells[{m, p}];
      const long tp = p + s;
      std::size_t target_dim = 0;
      const PageCell* tgt = nullptr;
      auto it = cells.find({m + 1, tp});
      if (it != cells.end()) {
        tgt = &it->second;
        target_dim = tgt->reps.cols();
      }
      QMatrix d_matrix(target_dim, src.reps.cols());
      if (tgt != nullptr) {
        const QMatrix d_here = fc.complex.differential(m);
        for (std::size_t c = 0; c < src.reps.cols(); ++c) {
          const RatVec image = mat_vec(d_here, column_of(src.reps, c));
          const RatVec coords = quotient_coords(tgt->boundaries, tgt->reps, image);
          for (std::size_t rr = 0; rr < target_dim; ++rr) d_matrix.at(rr, c) = coords[rr];
        }
      }
      result.differentials[{p, m - p}] = std::move(d_matrix);
    }
  }
  return result;
}

long stable_page_bound(const FilteredComplex& fc) {
  return static_cast<long>(fc.filtration_length()) +
         (fc.complex.max_degree - fc.complex.min_degree + 1) + 1;
}

}  // namespace

SpectralPage page(const FilteredComplex& fc, long r) {
  if (r < 0) throw InputError("page: r must be >= 0");
  fc.validate();
  return page_unchecked(fc, r);
}

long degeneration_page(const FilteredComplex& fc) {
  fc.validate();
  const long bound = stable_page_bound(fc);
  long last_nonzero = 0;
  for (long r = 1; r <= bound; ++r) {
    if (!page_unchecked(fc, r).all_differentials_zero()) last_nonzero = r;
  }
  return last_nonzero + 1;
}

SpectralPage infinity_page(const FilteredComplex& fc) {
  fc.validate();
  return page_unchecked(fc, stable_page_bound(fc));
}

std::vector<std::size_t> cohomology_dims(const CochainComplex& complex) {
  std::vector<std::size_t> out;
  for (long m = complex.min_degree; m <= complex.max_degree; ++m) {
    const std::size_t kernel = complex.dim(m) - rref(complex.differential(m)).rank;
    const std::size_t image = rref(complex.differential(m - 1)).rank;
    out.push_back(kernel - image);
  }
  return out;
}

namespace {

struct CohomologyData {
  QMatrix reps;        // cocycle representatives, one column per class
  QMatrix boundaries;  // basis of the image of the previous differential
};

CohomologyData cohomology_of(const CochainComplex& complex, long m) {
  const std::vector<RatVec> ker = kernel_basis(complex.differential(m));
  QMatrix ker_matrix(complex.dim(m), ker.size());
  for (std::size_t i = 0; i < ker.size(); ++i)
    for (std::size_t r = 0; r < ker[i].size(); ++r) ker_matrix.at(r, i) = ker[i][r];
  CohomologyData data;
  data.boundaries = column_space_basis(complex.differential(m - 1));
  data.reps = quotient_reps(data.boundaries, ker_matrix);
  return data;
}

std::size_t matrix_rank(const QMatrix& m) { return rref(m).rank; }

}  // namespace

TwoTermLesReport two_term_les(const FilteredComplex& fc) {
  fc.validate();
  for (long m = fc.complex.min_degree; m <= fc.complex.max_degree; ++m) {
    const auto& chain = fc.filtration[static_cast<std::size_t>(m - fc.complex.min_degree)];
    for (std::size_t lvl = 2; lvl < chain.size(); ++lvl) {
      if (span_dim(chain[lvl]) > 0) {
        throw InputError("two_term_les: more than two filtration levels at degree " +
                         std::to_string(m));
      }
    }
  }

  const long a = fc.complex.min_degree, b = fc.complex.max_degree;
  const auto idx = [&](long m) { return static_cast<std::size_t>(m - a); };

  // Bases: W0 = F^1 inside K, and coordinate representatives for K/W0.
  std::vector<QMatrix> w_basis(idx(b) + 1), q_reps(idx(b) + 1);
  for (long m = a; m <= b; ++m) {
    w_basis[idx(m)] = column_space_basis(fc.filtration_matrix(m, 1));
    q_reps[idx(m)] = quotient_reps(w_basis[idx(m)], identity_matrix(fc.complex.dim(m)));
  }

  // The three complexes in their own coordinates.
  CochainComplex sub{a, b, {}, {}}, quot{a, b, {}, {}};
  for (long m = a; m <= b; ++m) {
    sub.dims.push_back(w_basis[idx(m)].cols());
    quot.dims.push_back(q_reps[idx(m)].cols());
  }
  for (long m = a; m < b; ++m) {
    const QMatrix d = fc.complex.differential(m);
    QMatrix dw(sub.dims[idx(m + 1)], sub.dims[idx(m)]);
    for (std::size_t c = 0; c < w_basis[idx(m)].cols(); ++c) {
      const RatVec image = mat_vec(d, column_of(w_basis[idx(m)], c));
      auto coords = solve(w_basis[idx(m + 1)], image);
      if (!coords) throw Error("internal", "two_term_les: W0 is not a subcomplex");
      for (std::size_t rr = 0; rr < coords->size(); ++rr) dw.at(rr, c) = (*coords)[rr];
    }
    sub.differentials.push_back(std::move(dw));

    QMatrix dq(quot.dims[idx(m + 1)], quot.dims[idx(m)]);
    for (std::size_t c = 0; c < q_reps[idx(m)].cols(); ++c) {
      const RatVec image = mat_vec(d, column_of(q_reps[idx(m)], c));
      const RatVec coords = quotient_coords(w_basis[idx(m + 1)], q_reps[idx(m + 1)], image);
      for (std::size_t rr = 0; rr < coords.size(); ++rr) dq.at(rr, c) = coords[rr];
    }
    quot.differentials.push_back(std::move(dq));
  }

  std::vector<CohomologyData> hw(idx(b) + 1), hk(idx(b) + 1), hq(idx(b) + 1);
  for (long m = a; m <= b; ++m) {
    hw[idx(m)] = cohomology_of(sub, m);
    hk[idx(m)] = cohomology_of(fc.complex, m);
    hq[idx(m)] = cohomology_of(quot, m);
  }

  // Maps between cohomologies, as matrices in the chosen representative bases.
  std::vector<QMatrix> alpha(idx(b) + 1), beta(idx(b) + 1), delta(idx(b) + 1);
  for (long m = a; m <= b; ++m) {
    const std::size_t dim_hw = hw[idx(m)].reps.cols();
    const std::size_t dim_hk = hk[idx(m)].reps.cols();
    const std::size_t dim_hq = hq[idx(m)].reps.cols();

    QMatrix am(dim_hk, dim_hw);
    for (std::size_t c = 0; c < dim_hw; ++c) {
      // W0 class -> ambient coordinates -> class in H(K).
      const RatVec ambient = mat_vec(w_basis[idx(m)], column_of(hw[idx(m)].reps, c));
      const RatVec coords = quotient_coords(hk[idx(m)].boundaries, hk[idx(m)].reps, ambient);
      for (std::size_t rr = 0; rr < dim_hk; ++rr) am.at(rr, c) = coords[rr];
    }
    alpha[idx(m)] = std::move(am);

    QMatrix bm(dim_hq, dim_hk);
    for (std::size_t c = 0; c < dim_hk; ++c) {
      // Project the K-cocycle to K/W0 coordinates, then take its class.
      const RatVec cocycle = column_of(hk[idx(m)].reps, c);
      const RatVec qcoords = quotient_coords(w_basis[idx(m)], q_reps[idx(m)], cocycle);
      const RatVec coords = quotient_coords(hq[idx(m)].boundaries, hq[idx(m)].reps, qcoords);
      for (std::size_t rr = 0; rr < dim_hq; ++rr) bm.at(rr, c) = coords[rr];
    }
    beta[idx(m)] = std::move(bm);

    const std::size_t dim_hw_next = (m + 1 <= b) ? hw[idx(m + 1)].reps.cols() : 0;
    QMatrix dm(dim_hw_next, dim_hq);
    if (m + 1 <= b) {
      for (std::size_t c = 0; c < dim_hq; ++c) {
        // Lift the quotient class, differentiate; the result lands in W0.
        const RatVec lifted = mat_vec(q_reps[idx(m)], column_of(hq[idx(m)].reps, c));
        const RatVec image = mat_vec(fc.complex.differential(m), lifted);
        auto wcoords = solve(w_basis[idx(m + 1)], image);
        if (!wcoords) throw Error("internal", "two_term_les: connecting image outside W0");
        const RatVec coords =
            quotient_coords(hw[idx(m + 1)].boundaries, hw[idx(m + 1)].reps, *wcoords);
        for (std::size_t rr = 0; rr < dim_hw_next; ++rr) dm.at(rr, c) = coords[rr];
      }
    }
    delta[idx(m)] = std::move(dm);
  }

  // Walk the sequence ... -> H^m(W0) -> H^m(K) -> H^m(K/W0) -> H^(m+1)(W0) -> ...
  TwoTermLesReport report;
  report.all_exact = true;
  auto push_node = [&](const std::string& name, std::size_t dim, const QMatrix& in,
                       const QMatrix& out, bool composite_zero) {
    LesNode node;
    node.name = name;
    node.dim = dim;
    node.rank_in = matrix_rank(in);
    node.rank_out = matrix_rank(out);
    node.exact = composite_zero && (node.rank_in + node.rank_out == dim);
    report.all_exact = report.all_exact && node.exact;
    report.nodes.push_back(std::move(node));
  };

  for (long m = a; m <= b; ++m) {
    const QMatrix in_w = (m == a) ? QMatrix(hw[idx(m)].reps.cols(), 0) : delta[idx(m - 1)];
    push_node("H^" + std::to_string(m) + "(W0)", hw[idx(m)].reps.cols(), in_w, alpha[idx(m)],
              is_zero_matrix(mat_mul(alpha[idx(m)], in_w)));
    push_node("H^" + std::to_string(m) + "(K)", hk[idx(m)].reps.cols(), alpha[idx(m)],
              beta[idx(m)], is_zero_matrix(mat_mul(beta[idx(m)], alpha[idx(m)])));
    push_node("H^" + std::to_string(m) + "(K/W0)", hq[idx(m)].reps.cols(), beta[idx(m)],
              delta[idx(m)], is_zero_matrix(mat_mul(delta[idx(m)], beta[idx(m)])));
  }
  return report;
}

FilteredComplex make_filtration(const CochainComplex& complex, TruncationKind kind, long cut) {
  complex.validate();
  FilteredComplex fc;
  fc.complex = complex;
  fc.filtration.resize(complex.dims.size());
  for (long m = complex.min_degree; m <= complex.max_degree; ++m) {
    const std::size_t n = complex.dim(m);
    QMatrix level1(n, 0);
    if (kind == TruncationKind::CanonicalBelow) {
      if (m < cut) {
        level1 = identity_matrix(n);
      } else if (m == cut) {
        const std::vector<RatVec> ker = kernel_basis(complex.differential(m));
        level1 = QMatrix(n, ker.size());
        for (std::size_t i = 0; i < ker.size(); ++i)
          for (std::size_t r = 0; r < n; ++r) level1.at(r, i) = ker[i][r];
      }
    } else {
      if (m >= cut) level1 = identity_matrix(n);
    }
    auto& chain = fc.filtration[static_cast<std::size_t>(m - complex.min_degree)];
    chain.push_back(identity_matrix(n));
    chain.push_back(std::move(level1));
  }
  return fc;
}

namespace {

using nlohmann::json;

Rat rat_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    auto r = rat_from_string(j.get<std::string>());
    if (r) return *r;
  }
  throw InputError("expected a rational string in " + where);
}

}  // namespace

FilteredComplex parse_filtered_complex(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("filtered complex: expected a JSON object");
  if (!j.contains("degrees") || !j["degrees"].is_array() || j["degrees"].size() != 2 ||
      !j["degrees"][0].is_number_integer() || !j["degrees"][1].is_number_integer()) {
    throw InputError("filtered complex: \"degrees\" must be [a, b]");
  }
  FilteredComplex fc;
  fc.complex.min_degree = j["degrees"][0].get<long>();
  fc.complex.max_degree = j["degrees"][1].get<long>();
  if (fc.complex.max_degree < fc.complex.min_degree) {
    throw InputError("filtered complex: degrees out of order");
  }
  const std::size_t span =
      static_cast<std::size_t>(fc.complex.max_degree - fc.complex.min_degree) + 1;

  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != span) {
    throw InputError("filtered complex: \"dims\" must list one dimension per degree");
  }
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<long>() < 0) {
      throw InputError("filtered complex: dimensions must be non-negative integers");
    }
    fc.complex.dims.push_back(d.get<std::size_t>());
  }

  if (!j.contains("differentials") || !j["differentials"].is_array() ||
      j["differentials"].size() + 1 != span) {
    throw InputError("filtered complex: expected " + std::to_string(span - 1) +
                     " differentials");
  }
  for (std::size_t i = 0; i < span - 1; ++i) {
    const std::size_t rows = fc.complex.dims[i + 1], cols = fc.complex.dims[i];
    const auto& flat = j["differentials"][i];
    if (!flat.is_array() || flat.size() != rows * cols) {
      throw InputError("filtered complex: differential " + std::to_string(i) +
                       " must have " + std::to_string(rows * cols) + " row-major entries");
    }
    std::vector<Rat> entries;
    entries.reserve(flat.size());
    for (const auto& e : flat) entries.push_back(rat_from_json(e, "differentials"));
    fc.complex.differentials.emplace_back(rows, cols, std::move(entries));
  }

  if (!j.contains("filtration") || !j["filtration"].is_array() || j["filtration"].size() != span) {
    throw InputError("filtered complex: \"filtration\" must list one chain per degree");
  }
  for (std::size_t i = 0; i < span; ++i) {
    const std::size_t n = fc.complex.dims[i];
    std::vector<QMatrix> chain;
    const auto& levels = j["filtration"][i];
    if (!levels.is_array()) throw InputError("filtered complex: filtration chain must be an array");
    for (const auto& level : levels) {
      if (!level.is_array()) throw InputError("filtered complex: filtration level must be an array of columns");
      QMatrix matrix(n, level.size());
      for (std::size_t c = 0; c < level.size(); ++c) {
        const auto& col = level[c];
        if (!col.is_array() || col.size() != n) {
          throw InputError("filtered complex: filtration column must have " + std::to_string(n) +
                           " entries");
        }
        for (std::size_t r = 0; r < n; ++r) matrix.at(r, c) = rat_from_json(col[r], "filtration");
      }
      chain.push_back(std::move(matrix));
    }
    fc.filtration.push_back(std::move(chain));
  }
  fc.validate();
  return fc;
}

std::string filtered_complex_to_json(const FilteredComplex& fc) {
  json j;
  j["degrees"] = {fc.complex.min_degree, fc.complex.max_degree};
  j["dims"] = fc.complex.dims;
  json diffs = json::array();
  for (const QMatrix& d : fc.complex.differentials) {
    json flat = json::array();
    for (const Rat& e : d.entries()) flat.push_back(rat_to_string(e));
    diffs.push_back(std::move(flat));
  }
  j["differentials"] = std::move(diffs);
  json filt = json::array();
  for (const auto& chain : fc.filtration) {
    json levels = json::array();
    for (const QMatrix& level : chain) {
      json cols = json::array();
      for (std::size_t c = 0; c < level.cols(); ++c) {
        json col = json::array();
        for (std::size_t r = 0; r < level.rows(); ++r) col.push_back(rat_to_string(level.at(r, c)));
        cols.push_back(std::move(col));
      }
      levels.push_back(std::move(cols));
    }
    filt.push_back(std::move(levels));
  }
  j["filtration"] = std::move(filt);
  return j.dump(2) + "\n";
}

}  // namespace ratderham
