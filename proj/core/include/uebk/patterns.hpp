#pragma once

#include "uebk/numerics.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uebk {

/// Boolean mask on a rows x cols grid; true cells may be nonzero.
class ZeroPattern {
 public:
  ZeroPattern(int rows, int cols);
  ZeroPattern(int rows, int cols, const std::vector<std::pair<int, int>>& cells);
  /// Parses rows of '*' and '0' (or '.'), e.g. {"*0", "**"}.
  static ZeroPattern from_rows(const std::vector<std::string_view>& rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool at(int i, int j) const { return mask_[static_cast<std::size_t>(i) * cols_ + j]; }
  void set(int i, int j, bool value = true);
  int popcount() const;
  /// True cells in row-major order; this is the isometry substitution order.
  std::vector<std::pair<int, int>> cells() const;

  bool disjoint(const ZeroPattern& other) const;
  ZeroPattern united(const ZeroPattern& other) const;
  ZeroPattern complement() const;

  friend bool operator==(const ZeroPattern&, const ZeroPattern&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<bool> mask_;
};

/// A tiling of the grid by rank-k blocks plus a residual of generic rank < k.
struct Decomposition {
  int rows = 0;
  int cols = 0;
  int k = 0;
  std::vector<ZeroPattern> blocks;
  ZeroPattern residual{1, 1};

  int block_cells() const;
};

/// Trace-orthonormal set of matrices sharing one declared rank.
struct HSBasis {
  std::vector<ComplexMatrix> matrices;
  int rank = 0;
};

/// One elementary matrix E_ij per true cell, row-major.
std::vector<ComplexMatrix> subspace_of(const ZeroPattern& p);

/// Maximum numerical rank over `trials` random complex combinations of the
/// pattern's elementary matrices.
int generic_rank(const ZeroPattern& p, SeededRng& rng, int trials = 8);
/// Generic rank of the span of arbitrary matrices of equal shape.
int generic_rank(const std::vector<ComplexMatrix>& span, SeededRng& rng, int trials = 8);

/// Member i carries column i of U in the pattern's cells (row-major).
/// U must be p x p unitary with no zero entry, p = popcount.
HSBasis isometry_substitute(const ZeroPattern& p, const ComplexMatrix& u);

enum class CatalogShape { K2_2x2, K2_2x3, K2_3x3_V1, K2_3x3_V2, K2_3x3_V3 };

/// The displayed k = 2 decompositions of M_2x2, M_2x3 and M_3x3.
Decomposition catalog_k2(CatalogShape shape);
/// The displayed k = 3 decompositions for (rows, cols) in
/// {3x3, 3x4, 3x5, 4x4, 4x5, 5x5}. Throws NotInCatalog otherwise.
Decomposition catalog_k3(int rows, int cols);

/// Staircase / shifted-diagonal decomposition of M_(k+r) x (k+r').
///
/// Blocks: L1 holds the corner (1, k+r') and rows r+1+s, columns 1..s
/// (s = 1..k-1); L2..L_{r+2} are k-cell diagonals shifted down; the next r'
/// blocks are k-cell diagonals shifted right. The residual is the complement.
/// When these blocks tile the whole grid (k = 2 with r*r' = 0) the
/// staircase cells of L1 are folded into L2 and the corner becomes the
/// residual, which reproduces the k = 2 catalog structure.
Decomposition general_decomposition(int k, int r, int r_prime);

/// Checks tiling, per-block generic rank == k, and residual generic rank < k.
/// Throws DecompositionInvalid on failure.
void validate_decomposition(const Decomposition& d, SeededRng& rng);

/// Complete orthonormal basis of M_a x b whose members all have rank k,
/// from the cyclic shift construction; requires k | b or k | a.
HSBasis complete_rank_k_basis(int a, int b, int k);

}  // namespace uebk
