#include "oracles.hpp"

#include "uebk/error.hpp"
#include "uebk/patterns.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace uebk;

namespace {

ComplexMatrix elementary(int rows, int cols, int i, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(rows, cols);
  e(i, j) = 1.0;
  return e;
}

// Trace Gram deviation of a list of equal-shape matrices.
double hs_gram_deviation(const std::vector<ComplexMatrix>& ms) {
  oracle::Mat cols(ms.front().size(), static_cast<Eigen::Index>(ms.size()));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    cols.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const ComplexVector>(ms[i].data(), ms[i].size());
  }
  return oracle::gram_deviation(cols);
}

oracle::Mat vectorized(const std::vector<ComplexMatrix>& ms) {
  oracle::Mat cols(ms.front().size(), static_cast<Eigen::Index>(ms.size()));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    cols.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const ComplexVector>(ms[i].data(), ms[i].size());
  }
  return cols;
}

// Counts how many masks cover each cell; a tiling covers every cell once.
bool tiles_exactly(const Decomposition& d) {
  for (int i = 0; i < d.rows; ++i) {
    for (int j = 0; j < d.cols; ++j) {
      int covered = d.residual.at(i, j) ? 1 : 0;
      for (const auto& b : d.blocks) covered += b.at(i, j) ? 1 : 0;
      if (covered != 1) return false;
    }
  }
  return true;
}

// Max rank of a random element of the pattern subspace, computed with the
// eigenvalue oracle rather than the library's SVD.
int oracle_generic_rank(const ZeroPattern& p, std::uint64_t seed) {
  SeededRng rng(seed);
  int best = 0;
  for (int t = 0; t < 4; ++t) {
    oracle::Mat m = oracle::Mat::Zero(p.rows(), p.cols());
    for (auto [i, j] : p.cells()) m(i, j) = rng.complex_normal();
    best = std::max(best, oracle::rank(m));
  }
  return best;
}

void expect_decomposition_sound(const Decomposition& d) {
  EXPECT_TRUE(tiles_exactly(d));
  for (const auto& b : d.blocks) EXPECT_EQ(oracle_generic_rank(b, 17), d.k);
  EXPECT_LT(oracle_generic_rank(d.residual, 17), d.k);
  SeededRng rng(3);
  EXPECT_NO_THROW(validate_decomposition(d, rng));
}

}  // namespace

TEST(ZeroPattern, FromRowsAndSetOps) {
  ZeroPattern p = ZeroPattern::from_rows({"*0", "**"});
  EXPECT_EQ(p.popcount(), 3);
  EXPECT_TRUE(p.at(1, 0));
  EXPECT_FALSE(p.at(0, 1));
  EXPECT_TRUE(p.disjoint(p.complement()));
  EXPECT_EQ(p.united(p.complement()).popcount(), 4);
  EXPECT_THROW(ZeroPattern::from_rows({"*0", "*"}), Error);
}

TEST(SubspaceOf, Examples) {
  EXPECT_TRUE(subspace_of(ZeroPattern(2, 3)).empty());
  auto l3 = subspace_of(ZeroPattern::from_rows({"*0", "**"}));
  ASSERT_EQ(l3.size(), 3u);
  EXPECT_EQ(l3[0], elementary(2, 2, 0, 0));
  EXPECT_EQ(l3[1], elementary(2, 2, 1, 0));
  EXPECT_EQ(l3[2], elementary(2, 2, 1, 1));
  EXPECT_EQ(subspace_of(ZeroPattern::from_rows({"***", "***", "***"})).size(), 9u);
}

TEST(GenericRank, Examples) {
  SeededRng rng(1);
  EXPECT_EQ(generic_rank(ZeroPattern(3, 3, {{1, 2}}), rng), 1);
  EXPECT_EQ(generic_rank(ZeroPattern(3, 3, {{2, 2}}), rng), 1);
  EXPECT_EQ(generic_rank(ZeroPattern::from_rows({"*0", "**"}), rng), 2);
  EXPECT_EQ(generic_rank(ZeroPattern(2, 2), rng), 0);
}

TEST(GenericRank, AgreesWithOracleOnRandomMasks) {
  SeededRng rng(404);
  for (int t = 0; t < 50; ++t) {
    ZeroPattern p(3, 4);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 4; ++j) p.set(i, j, rng.uniform() < 0.4);
    }
    EXPECT_EQ(generic_rank(p, rng), oracle_generic_rank(p, 1000 + t)) << t;
  }
}

TEST(IsometrySubstitute, CanonicalUnitaryGivesTheThreeRankTwoMatrices) {
  HSBasis h = isometry_substitute(ZeroPattern::from_rows({"*0", "**"}), canonical_unitary_no_zeros(3));
  ASSERT_EQ(h.matrices.size(), 3u);
  EXPECT_EQ(h.rank, 2);
  ComplexMatrix a1(2, 2), a2(2, 2), a3(2, 2);
  a1 << -1, 0, 2, 2;
  a2 << 2, 0, -1, 2;
  a3 << 2, 0, 2, -1;
  EXPECT_LE((h.matrices[0] - a1 / 3.0).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((h.matrices[1] - a2 / 3.0).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((h.matrices[2] - a3 / 3.0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(IsometrySubstitute, SingleStarAndStaircase) {
  ComplexMatrix one = ComplexMatrix::Ones(1, 1);
  HSBasis s = isometry_substitute(ZeroPattern(2, 3, {{1, 2}}), one);
  ASSERT_EQ(s.matrices.size(), 1u);
  EXPECT_EQ(s.matrices[0], elementary(2, 3, 1, 2));
  EXPECT_EQ(s.rank, 1);

  // 4-star k = 3 staircase from the first k = 3 display.
  ZeroPattern l11 = ZeroPattern::from_rows({"00*", "*00", "**0"});
  HSBasis h = isometry_substitute(l11, canonical_unitary_no_zeros(4));
  ASSERT_EQ(h.matrices.size(), 4u);
  for (const auto& m : h.matrices) EXPECT_EQ(oracle::rank(m), 3);
  EXPECT_LE(hs_gram_deviation(h.matrices), 1e-12);
}

TEST(IsometrySubstitute, Errors) {
  // Unitary, but with zero entries.
  ComplexMatrix u = ComplexMatrix::Zero(3, 3);
  u(0, 1) = u(1, 2) = u(2, 0) = 1.0;
  try {
    isometry_substitute(ZeroPattern::from_rows({"*0", "**"}), u);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroEntryIsometry);
  }
  // Full 2x2 block has generic rank 2, but the first Hadamard column
  // lands as the all-ones matrix, which has rank 1.
  ComplexMatrix h2(4, 4);
  h2 << 1, 1, 1, 1,
        1, -1, 1, -1,
        1, 1, -1, -1,
        1, -1, -1, 1;
  h2 /= 2.0;
  try {
    isometry_substitute(ZeroPattern::from_rows({"**", "**"}), h2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RankDefect);
  }
  EXPECT_THROW(isometry_substitute(ZeroPattern::from_rows({"*0", "**"}), canonical_unitary_no_zeros(2)), Error);
}

TEST(IsometrySubstitute, GramIdentityAndSpanIndependentOfUnitary) {
  ZeroPattern p = ZeroPattern::from_rows({"*0*", "**0", "0**"});
  const oracle::Mat reference = oracle::span_projector(vectorized(subspace_of(p)));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRng rng(seed);
    HSBasis h = isometry_substitute(p, random_unitary_no_zeros(p.popcount(), rng));
    EXPECT_LE(hs_gram_deviation(h.matrices), 1e-12);
    EXPECT_LE((oracle::span_projector(vectorized(h.matrices)) - reference).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(CatalogK2, TwoByTwo) {
  Decomposition d = catalog_k2(CatalogShape::K2_2x2);
  ASSERT_EQ(d.blocks.size(), 1u);
  EXPECT_EQ(d.blocks[0], ZeroPattern::from_rows({"*0", "**"}));
  EXPECT_EQ(d.residual, ZeroPattern::from_rows({"0*", "00"}));
  EXPECT_EQ(d.block_cells(), 3);
  expect_decomposition_sound(d);
}

TEST(CatalogK2, TwoByThreeAndThreeByThreeVariants) {
  Decomposition d23 = catalog_k2(CatalogShape::K2_2x3);
  expect_decomposition_sound(d23);
  EXPECT_EQ(d23.residual, ZeroPattern::from_rows({"00*", "00*"}));

  Decomposition v1 = catalog_k2(CatalogShape::K2_3x3_V1);
  EXPECT_EQ(v1.block_cells(), 6);
  EXPECT_EQ(v1.residual, ZeroPattern::from_rows({"000", "000", "***"}));
  expect_decomposition_sound(v1);

  Decomposition v2 = catalog_k2(CatalogShape::K2_3x3_V2);
  EXPECT_EQ(v2.block_cells(), 7);
  expect_decomposition_sound(v2);

  Decomposition v3 = catalog_k2(CatalogShape::K2_3x3_V3);
  EXPECT_EQ(v3.block_cells(), 8);
  EXPECT_EQ(v3.residual, ZeroPattern(3, 3, {{2, 2}}));
  expect_decomposition_sound(v3);
}

TEST(CatalogK3, EveryShapeTilesWithRankDeficientResidual) {
  const std::vector<std::pair<int, int>> shapes = {{3, 3}, {3, 4}, {3, 5}, {4, 4}, {4, 5}, {5, 5}};
  for (auto [r, c] : shapes) {
    Decomposition d = catalog_k3(r, c);
    EXPECT_EQ(d.rows, r);
    EXPECT_EQ(d.cols, c);
    EXPECT_EQ(d.block_cells() + d.residual.popcount(), r * c);
    expect_decomposition_sound(d);
    // The first block of every display is a 4-star staircase.
    EXPECT_EQ(d.blocks.front().popcount(), 4) << r << "x" << c;
  }
}

TEST(CatalogK3, DisplayedBlockCounts) {
  // Blocks used for members: i0 + 1 for the first three displays, i0 after.
  EXPECT_EQ(catalog_k3(3, 3).blocks.size(), 2u);
  EXPECT_EQ(catalog_k3(3, 4).blocks.size(), 3u);
  EXPECT_EQ(catalog_k3(3, 5).blocks.size(), 4u);
  EXPECT_EQ(catalog_k3(4, 4).blocks.size(), 4u);
  EXPECT_EQ(catalog_k3(4, 5).blocks.size(), 5u);
  EXPECT_EQ(catalog_k3(5, 5).blocks.size(), 6u);
}

TEST(CatalogK3, UnknownShapeThrows) {
  try {
    catalog_k3(6, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInCatalog);
  }
}

TEST(GeneralDecomposition, KTwoNoSlackMatchesTwoByTwoCatalog) {
  Decomposition g = general_decomposition(2, 0, 0);
  Decomposition c = catalog_k2(CatalogShape::K2_2x2);
  EXPECT_EQ(g.rows, 2);
  EXPECT_EQ(g.cols, 2);
  EXPECT_EQ(g.residual.popcount(), 1);
  EXPECT_EQ(g.block_cells(), c.block_cells());
  expect_decomposition_sound(g);
}

TEST(GeneralDecomposition, KTwoUnitSlackHasSingleStarResidual) {
  Decomposition g = general_decomposition(2, 1, 1);
  EXPECT_EQ(g.rows, 3);
  EXPECT_EQ(g.cols, 3);
  EXPECT_EQ(g.block_cells(), 8);
  EXPECT_EQ(g.residual.popcount(), 1);
  expect_decomposition_sound(g);
}

TEST(GeneralDecomposition, BulletsEnumeratedDirectly) {
  // Independent enumeration of the three bullets (1-based indices).
  for (int k = 3; k <= 5; ++k) {
    for (int r = 0; r < k; ++r) {
      for (int rp = 0; rp < k; ++rp) {
        const int rows = k + r, cols = k + rp;
        std::vector<std::vector<int>> owner(rows + 1, std::vector<int>(cols + 1, 0));
        int block_cells = 0;
        // L1: corner (1, k + r') plus rows r + 1 + s, columns 1..s.
        owner[1][k + rp] = 1;
        ++block_cells;
        for (int s = 1; s <= k - 1; ++s) {
          for (int j = 1; j <= s; ++j) {
            owner[r + 1 + s][j] = 1;
            ++block_cells;
          }
        }
        // L2..L_{r+2}: i = j + l - 2, j <= k.
        for (int l = 2; l <= r + 2; ++l) {
          for (int j = 1; j <= k; ++j) {
            const int i = j + l - 2;
            if (i <= rows && owner[i][j] == 0) {
              owner[i][j] = l;
              ++block_cells;
            }
          }
        }
        // L_{r+3}..L_{r+r'+2}: j = i + l - r - 2, i <= k.
        for (int l = r + 3; l <= r + rp + 2; ++l) {
          for (int i = 1; i <= k; ++i) {
            const int j = i + l - r - 2;
            if (j <= cols && owner[i][j] == 0) {
              owner[i][j] = l;
              ++block_cells;
            }
          }
        }
        Decomposition d = general_decomposition(k, r, rp);
        EXPECT_EQ(d.block_cells(), block_cells) << k << "," << r << "," << rp;
        EXPECT_EQ(d.residual.popcount(), rows * cols - block_cells);
        expect_decomposition_sound(d);
      }
    }
  }
}

TEST(GeneralDecomposition, KThreeWithSlackOneTwo) {
  Decomposition d = general_decomposition(3, 1, 2);
  EXPECT_EQ(d.rows, 4);
  EXPECT_EQ(d.cols, 5);
  EXPECT_EQ(d.block_cells() + d.residual.popcount(), 20);
  SeededRng rng(5);
  EXPECT_LT(generic_rank(d.residual, rng), 3);
}

TEST(GeneralDecomposition, KTwoFoldedCases) {
  for (auto [r, rp] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {0, 0}, {1, 1}}) {
    Decomposition d = general_decomposition(2, r, rp);
    expect_decomposition_sound(d);
    EXPECT_EQ(d.residual.popcount(), 1) << r << "," << rp;
  }
}

TEST(GeneralDecomposition, BadParameters) {
  EXPECT_THROW(general_decomposition(1, 0, 0), Error);
  EXPECT_THROW(general_decomposition(3, 3, 0), Error);
  EXPECT_THROW(general_decomposition(3, 0, -1), Error);
}

TEST(ValidateDecomposition, RejectsOverlapAndFullRankResidual) {
  Decomposition d = catalog_k2(CatalogShape::K2_2x2);
  d.residual = ZeroPattern::from_rows({"**", "00"});
  SeededRng rng(2);
  EXPECT_THROW(validate_decomposition(d, rng), Error);
  Decomposition e = catalog_k2(CatalogShape::K2_2x2);
  e.blocks.push_back(ZeroPattern::from_rows({"0*", "00"}));
  e.residual = ZeroPattern(2, 2);
  EXPECT_THROW(validate_decomposition(e, rng), Error);
}

TEST(CompleteRankKBasis, PauliLikeTwoByTwo) {
  HSBasis h = complete_rank_k_basis(2, 2, 2);
  ASSERT_EQ(h.matrices.size(), 4u);
  EXPECT_LE(hs_gram_deviation(h.matrices), 1e-12);
  for (const auto& m : h.matrices) {
    EXPECT_EQ(oracle::rank(m), 2);
    // (1/sqrt2) x unitary
    EXPECT_LE((2.0 * m * m.adjoint() - ComplexMatrix::Identity(2, 2)).norm(), 1e-12);
  }
}

TEST(CompleteRankKBasis, BothDivisibilityBranches) {
  for (auto [a, b, k] : std::vector<std::tuple<int, int, int>>{{3, 4, 2}, {2, 3, 2}, {4, 3, 2}, {3, 6, 3}, {6, 5, 3}, {5, 4, 4}}) {
    HSBasis h = complete_rank_k_basis(a, b, k);
    ASSERT_EQ(static_cast<int>(h.matrices.size()), a * b);
    EXPECT_LE(hs_gram_deviation(h.matrices), 1e-12);
    for (const auto& m : h.matrices) {
      EXPECT_EQ(m.rows(), a);
      EXPECT_EQ(m.cols(), b);
      EXPECT_EQ(oracle::rank(m), k);
    }
  }
}

TEST(CompleteRankKBasis, NeitherSideDivisible) {
  try {
    complete_rank_k_basis(3, 5, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidTiling);
  }
}
