#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ratderham/qmatrix.hpp"

namespace ratderham {

// Finite cochain complex over Q on a degree range [a, b]. differentials[i]
// is d^(a+i): K^(a+i) -> K^(a+i+1) (dims[i+1] x dims[i]); d vanishes outside
// the range.
struct CochainComplex {
  long min_degree = 0;
  long max_degree = 0;
  std::vector<std::size_t> dims;
  std::vector<QMatrix> differentials;

  std::size_t dim(long degree) const;
  QMatrix differential(long degree) const;  // zero-shaped outside the range
  void validate() const;                    // shapes and d∘d = 0
};

// Decreasing filtration F^0 ⊇ F^1 ⊇ ... on a cochain complex, one chain of
// column-span matrices per degree (outermost level first). Levels beyond the
// per-degree list are zero; F^0 must span the whole space.
struct FilteredComplex {
  CochainComplex complex;
  std::vector<std::vector<QMatrix>> filtration;  // aligned with complex.dims

  /// F^level at the given degree as a column-span matrix. Levels <= 0 give
  /// the identity span, levels past the listed chain the zero span.
  QMatrix filtration_matrix(long degree, long level) const;
  std::size_t filtration_length() const;  // max listed chain length

  /// Checks every structural invariant (shapes, d∘d = 0, F^0 exhaustive,
  /// nesting, d-compatibility) and throws InputError naming the first
  /// failure.
  void validate() const;
};

// One page of the spectral sequence of a filtered complex. Pages are
// numbered from 1: page 1 is the associated graded of the filtration, and
// the page-r differential has bidegree (r-1, 2-r) in (p, q). page(fc, 0) is
// accepted and coincides with page 1.
struct SpectralPage {
  long r = 1;
  std::map<std::pair<long, long>, std::size_t> entries;       // (p,q) -> dim
  std::map<std::pair<long, long>, QMatrix> differentials;     // source (p,q)

  std::pair<long, long> target_of(long p, long q) const;
  std::size_t entry(long p, long q) const;
  /// Sum over p+q = m of the entry dimensions.
  std::size_t total_on_diagonal(long m) const;
  bool all_differentials_zero() const;
};

/// Computes the page by the explicit cycle/boundary quotient construction,
/// with differentials as matrices in the chosen quotient bases. Validates fc.
SpectralPage page(const FilteredComplex& fc, long r);

/// Smallest r with E_r = E_{r+s} for all s, detected by vanishing of every
/// differential from page r on. Pages are certified stable past
/// filtration length + complex length + 1 for support reasons.
long degeneration_page(const FilteredComplex& fc);

/// The stable page (computed at the certified bound).
SpectralPage infinity_page(const FilteredComplex& fc);

/// dim H^m for m in [a, b], computed directly from the differentials.
std::vector<std::size_t> cohomology_dims(const CochainComplex& complex);

// Long exact sequence of a two-level filtration W0 = F^1 ⊆ K:
//   ... -> H^m(W0) -> H^m(K) -> H^m(K/W0) -> H^(m+1)(W0) -> ...
// Exactness at every node is verified by exact rank identities.
struct LesNode {
  std::string name;        // e.g. "H^2(K/W0)"
  std::size_t dim = 0;
  std::size_t rank_in = 0;   // rank of the incoming map
  std::size_t rank_out = 0;  // rank of the outgoing map
  bool exact = false;        // incoming image == outgoing kernel
};

struct TwoTermLesReport {
  std::vector<LesNode> nodes;  // in sequence order
  bool all_exact = false;
};

/// Requires the filtration to have exactly two effective levels (F^2 = 0
/// everywhere); throws InputError otherwise.
TwoTermLesReport two_term_les(const FilteredComplex& fc);

enum class TruncationKind {
  CanonicalBelow,  // full spaces below the cut, kernel of d at the cut, zero above
  StupidAtLeast,   // zero below the cut, full spaces at and above
};

/// Installs the truncation at `cut` as a two-level filtration
/// F^0 = everything, F^1 = truncation subcomplex.
FilteredComplex make_filtration(const CochainComplex& complex, TruncationKind kind, long cut);

/// JSON wire format:
/// {"degrees":[a,b], "dims":[...],
///  "differentials":[[row-major "p/q" strings] per degree a..b-1],
///  "filtration":[per degree: [per level: [per column: ["p/q", ...]]]]}
/// Integer JSON numbers are accepted wherever a rational string is expected.
FilteredComplex parse_filtered_complex(const std::string& json_text);
std::string filtered_complex_to_json(const FilteredComplex& fc);

}  // namespace ratderham
