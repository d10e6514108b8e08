#include "uebk/patterns.hpp"

#include "uebk/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace uebk {

namespace {

// Rank probes inside constructors use a fixed stream so results are reproducible.
constexpr std::uint64_t kProbeSeed = 0x9a77e27ULL;

ZeroPattern rows_to_pattern(std::initializer_list<std::string_view> rows) {
  return ZeroPattern::from_rows(std::vector<std::string_view>(rows));
}

Decomposition make_decomposition(int k, std::vector<ZeroPattern> blocks) {
  Decomposition d;
  d.rows = blocks.front().rows();
  d.cols = blocks.front().cols();
  d.k = k;
  ZeroPattern used(d.rows, d.cols);
  for (const auto& b : blocks) {
    if (!used.disjoint(b)) throw Error(ErrorKind::DecompositionInvalid, "overlapping blocks");
    used = used.united(b);
  }
  d.blocks = std::move(blocks);
  d.residual = used.complement();
  return d;
}

// Demotes blocks of generic rank < k into the residual, rejects blocks above
// k, and checks that the residual cannot hold a rank-k matrix.
Decomposition finalize(Decomposition d) {
  SeededRng rng(kProbeSeed);
  std::vector<ZeroPattern> kept;
  for (const auto& b : d.blocks) {
    int g = generic_rank(b, rng);
    if (g < d.k) {
      d.residual = d.residual.united(b);
    } else if (g > d.k) {
      std::ostringstream why;
      why << "block with " << b.popcount() << " cells has generic rank " << g << " > k = " << d.k;
      throw Error(ErrorKind::DecompositionInvalid, why.str());
    } else {
      kept.push_back(b);
    }
  }
  d.blocks = std::move(kept);
  validate_decomposition(d, rng);
  return d;
}

}  // namespace

ZeroPattern::ZeroPattern(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorKind::InvalidInput, "pattern needs positive shape");
  mask_.assign(static_cast<std::size_t>(rows) * cols, false);
}

ZeroPattern::ZeroPattern(int rows, int cols, const std::vector<std::pair<int, int>>& cells)
    : ZeroPattern(rows, cols) {
  for (auto [i, j] : cells) set(i, j);
}

ZeroPattern ZeroPattern::from_rows(const std::vector<std::string_view>& rows) {
  if (rows.empty()) throw Error(ErrorKind::InvalidInput, "empty pattern");
  ZeroPattern p(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < p.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != p.cols()) throw Error(ErrorKind::InvalidInput, "ragged pattern");
    for (int j = 0; j < p.cols(); ++j) {
      if (rows[i][j] == '*') p.set(i, j);
    }
  }
  return p;
}

void ZeroPattern::set(int i, int j, bool value) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw Error(ErrorKind::InvalidInput, "cell out of range");
  mask_[static_cast<std::size_t>(i) * cols_ + j] = value;
}

int ZeroPattern::popcount() const {
  int n = 0;
  for (bool b : mask_) n += b ? 1 : 0;
  return n;
}

std::vector<std::pair<int, int>> ZeroPattern::cells() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      if (at(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

bool ZeroPattern::disjoint(const ZeroPattern& other) const {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw Error(ErrorKind::InvalidInput, "shape mismatch");
  for (std::size_t c = 0; c < mask_.size(); ++c) {
    if (mask_[c] && other.mask_[c]) return false;
  }
  return true;
}

ZeroPattern ZeroPattern::united(const ZeroPattern& other) const {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw Error(ErrorKind::InvalidInput, "shape mismatch");
  ZeroPattern out = *this;
  for (std::size_t c = 0; c < mask_.size(); ++c) out.mask_[c] = mask_[c] || other.mask_[c];
  return out;
}

ZeroPattern ZeroPattern::complement() const {
  ZeroPattern out = *this;
  for (std::size_t c = 0; c < mask_.size(); ++c) out.mask_[c] = !mask_[c];
  return out;
}

int Decomposition::block_cells() const {
  int n = 0;
  for (const auto& b : blocks) n += b.popcount();
  return n;
}

std::vector<ComplexMatrix> subspace_of(const ZeroPattern& p) {
  std::vector<ComplexMatrix> out;
  for (auto [i, j] : p.cells()) {
    ComplexMatrix e = ComplexMatrix::Zero(p.rows(), p.cols());
    e(i, j) = 1.0;
    out.push_back(std::move(e));
  }
  return out;
}

int generic_rank(const std::vector<ComplexMatrix>& span, SeededRng& rng, int trials) {
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "generic_rank needs trials >= 1");
  if (span.empty()) return 0;
  int best = 0;
  for (int t = 0; t < trials; ++t) {
    ComplexMatrix combo = ComplexMatrix::Zero(span.front().rows(), span.front().cols());
    for (const auto& m : span) combo += rng.complex_normal() * m;
    best = std::max(best, numerical_rank(combo));
  }
  return best;
}

int generic_rank(const ZeroPattern& p, SeededRng& rng, int trials) {
  return generic_rank(subspace_of(p), rng, trials);
}

HSBasis isometry_substitute(const ZeroPattern& p, const ComplexMatrix& u) {
  const auto cells = p.cells();
  const int n = static_cast<int>(cells.size());
  if (u.rows() != n || u.cols() != n) {
    throw Error(ErrorKind::InvalidInput, "isometry must be popcount x popcount");
  }
  if (unitarity_defect(u) > 1e-10) throw Error(ErrorKind::InvalidInput, "matrix is not an isometry");
  if (u.cwiseAbs().minCoeff() <= 1e-14) throw Error(ErrorKind::ZeroEntryIsometry, "isometry has a zero entry");

  SeededRng rng(kProbeSeed);
  HSBasis basis;
  basis.rank = generic_rank(p, rng);
  for (int col = 0; col < n; ++col) {
    ComplexMatrix a = ComplexMatrix::Zero(p.rows(), p.cols());
    for (int c = 0; c < n; ++c) a(cells[c].first, cells[c].second) = u(c, col);
    int r = numerical_rank(a);
    if (r != basis.rank) {
      std::ostringstream why;
      why << "member " << col << " has rank " << r << ", pattern generic rank is " << basis.rank;
      throw Error(ErrorKind::RankDefect, why.str());
    }
    basis.matrices.push_back(std::move(a));
  }
  return basis;
}

Decomposition catalog_k2(CatalogShape shape) {
  switch (shape) {
    case CatalogShape::K2_2x2:
      return finalize(make_decomposition(2, {rows_to_pattern({"*0", "**"})}));
    case CatalogShape::K2_2x3:
      return finalize(make_decomposition(2, {rows_to_pattern({"**0", "**0"})}));
    case CatalogShape::K2_3x3_V1:
      return finalize(make_decomposition(2, {rows_to_pattern({"***", "***", "000"})}));
    case CatalogShape::K2_3x3_V2:
      return finalize(make_decomposition(2, {rows_to_pattern({"000", "*00", "**0"}),
                                             rows_to_pattern({"*00", "0*0", "000"}),
                                             rows_to_pattern({"0*0", "00*", "000"})}));
    case CatalogShape::K2_3x3_V3:
      return finalize(make_decomposition(2, {rows_to_pattern({"**0", "**0", "000"}),
                                             rows_to_pattern({"000", "00*", "0*0"}),
                                             rows_to_pattern({"00*", "000", "*00"})}));
  }
  throw Error(ErrorKind::NotInCatalog, "unknown k = 2 shape");
}

Decomposition catalog_k3(int rows, int cols) {
  // Blocks exactly as displayed; cells a display leaves uncovered fall into
  // the residual through the complement.
  if (rows == 3 && cols == 3) {
    return finalize(make_decomposition(3, {rows_to_pattern({"00*", "*00", "**0"}),
                                           rows_to_pattern({"*00", "0*0", "00*"})}));
  }
  if (rows == 3 && cols == 4) {
    return finalize(make_decomposition(3, {rows_to_pattern({"000*", "*000", "**00"}),
                                           rows_to_pattern({"*000", "0*00", "00*0"}),
                                           rows_to_pattern({"0*00", "00*0", "000*"})}));
  }
  if (rows == 3 && cols == 5) {
    return finalize(make_decomposition(3, {rows_to_pattern({"0000*", "*0000", "**000"}),
                                           rows_to_pattern({"*0000", "0*000", "00*00"}),
                                           rows_to_pattern({"0*000", "00*00", "000*0"}),
                                           rows_to_pattern({"00*00", "000*0", "0000*"})}));
  }
  if (rows == 4 && cols == 4) {
    return finalize(make_decomposition(3, {rows_to_pattern({"000*", "0000", "*000", "**00"}),
                                           rows_to_pattern({"0000", "*000", "0*00", "00*0"}),
                                           rows_to_pattern({"*000", "0*00", "00*0", "0000"}),
                                           rows_to_pattern({"0*00", "00*0", "000*", "0000"})}));
  }
  if (rows == 4 && cols == 5) {
    return finalize(make_decomposition(
        3, {rows_to_pattern({"0000*", "00000", "*0000", "**000"}),
            rows_to_pattern({"00000", "*0000", "0*000", "00*00"}),
            rows_to_pattern({"*0000", "0*000", "00*00", "00000"}),
            rows_to_pattern({"0*000", "00*00", "000*0", "00000"}),
            rows_to_pattern({"00*00", "000*0", "0000*", "00000"})}));
  }
  if (rows == 5 && cols == 5) {
    return finalize(make_decomposition(
        3, {rows_to_pattern({"0000*", "00000", "00000", "*0000", "**000"}),
            rows_to_pattern({"00000", "00000", "*0000", "0*000", "00*00"}),
            rows_to_pattern({"00000", "*0000", "0*000", "00*00", "00000"}),
            rows_to_pattern({"*0000", "0*000", "00*00", "00000", "00000"}),
            rows_to_pattern({"0*000", "00*00", "000*0", "00000", "00000"}),
            rows_to_pattern({"00*00", "000*0", "0000*", "00000", "00000"})}));
  }
  std::ostringstream why;
  why << "no k = 3 catalog entry for " << rows << "x" << cols;
  throw Error(ErrorKind::NotInCatalog, why.str());
}

Decomposition general_decomposition(int k, int r, int r_prime) {
  if (k < 2 || r < 0 || r >= k || r_prime < 0 || r_prime >= k) {
    throw Error(ErrorKind::InvalidParameters, "need k >= 2 and 0 <= r, r' < k");
  }
  const int rows = k + r;
  const int cols = k + r_prime;

  ZeroPattern corner(rows, cols);
  corner.set(0, cols - 1);
  ZeroPattern staircase(rows, cols);
  for (int s = 1; s <= k - 1; ++s) {
    for (int j = 0; j < s; ++j) staircase.set(r + s, j);
  }

  std::vector<ZeroPattern> down;  // shifted along rows, first k columns
  for (int t = 0; t <= r; ++t) {
    ZeroPattern p(rows, cols);
    for (int j = 0; j < k; ++j) p.set(j + t, j);
    down.push_back(p);
  }
  std::vector<ZeroPattern> right;  // shifted along columns, first k rows
  for (int t = 1; t <= r_prime; ++t) {
    ZeroPattern p(rows, cols);
    for (int i = 0; i < k; ++i) p.set(i, i + t);
    right.push_back(p);
  }

  std::vector<ZeroPattern> blocks;
  blocks.push_back(corner.united(staircase));
  for (auto& p : down) blocks.push_back(p);
  for (auto& p : right) blocks.push_back(p);

  Decomposition d = make_decomposition(k, blocks);
  if (d.residual.popcount() == 0) {
    // Full tiling leaves nothing to be unextendible against; release the corner.
    blocks.erase(blocks.begin());
    blocks.front() = blocks.front().united(staircase);
    d = make_decomposition(k, blocks);
  }
  return finalize(std::move(d));
}

void validate_decomposition(const Decomposition& d, SeededRng& rng) {
  ZeroPattern used = d.residual;
  for (const auto& b : d.blocks) {
    if (!used.disjoint(b)) throw Error(ErrorKind::DecompositionInvalid, "blocks overlap");
    used = used.united(b);
  }
  if (used.popcount() != d.rows * d.cols) throw Error(ErrorKind::DecompositionInvalid, "blocks do not tile the grid");
  for (const auto& b : d.blocks) {
    if (generic_rank(b, rng) != d.k) throw Error(ErrorKind::DecompositionInvalid, "block generic rank differs from k");
  }
  if (generic_rank(d.residual, rng) >= d.k) {
    throw Error(ErrorKind::DecompositionInvalid, "residual admits rank-k matrices");
  }
}

HSBasis complete_rank_k_basis(int a, int b, int k) {
  if (k < 1 || a < 1 || b < 1 || k > std::min(a, b)) {
    throw Error(ErrorKind::InvalidTiling, "need 1 <= k <= min(a, b)");
  }
  if (b % k != 0) {
    if (a % k != 0) throw Error(ErrorKind::InvalidTiling, "k divides neither side");
    HSBasis t = complete_rank_k_basis(b, a, k);
    for (auto& m : t.matrices) m = m.transpose().eval();
    return t;
  }
  HSBasis basis;
  basis.rank = k;
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  for (int m = 0; m < a; ++m) {
    for (int n = 0; n < k; ++n) {
      for (int l = 0; l < b / k; ++l) {
        ComplexMatrix x = ComplexMatrix::Zero(a, b);
        for (int p = 0; p < k; ++p) {
          double angle = 2.0 * std::numbers::pi * n * p / k;
          x((p + m) % a, l * k + p) = scale * Complex(std::cos(angle), std::sin(angle));
        }
        basis.matrices.push_back(std::move(x));
      }
    }
  }
  return basis;
}

}  // namespace uebk
