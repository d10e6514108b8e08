#pragma once

#include "uebk/basis.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace uebk {

/// Which decomposition fills the (k+r) x (k+r') core block.
enum class CoreVariant {
  General,  ///< staircase / shifted diagonals, any k
  Catalog,  ///< the displayed k = 2 or k = 3 decompositions
  V1,       ///< 3x3 core, k = 2: 6-member variant
  V2,       ///< 3x3 core, k = 2: 7-member variant
  V3,       ///< 3x3 core, k = 2: 8-member variant
};

std::string_view to_string(CoreVariant v);
/// Accepts "general", "catalog", "v1", "v2", "v3". Throws InvalidParameters.
CoreVariant parse_core_variant(std::string_view name);

/// Bipartite UEBk in C^d1 (x) C^d2 from full rank-k tiles plus a decomposed
/// core block. Without a seed every block uses canonical_unitary_no_zeros;
/// with a seed, fresh random isometries are drawn block by block.
BasisCandidate construct_bipartite_uebk(int d1, int d2, int k,
                                        CoreVariant variant = CoreVariant::General,
                                        std::optional<std::uint64_t> seed = std::nullopt);

/// The three-member UEB2 of C^2 (x) C^2 built from the canonical isometry.
BasisCandidate eq6_ueb2_2x2();
/// Four UEB2 members in C^2 (x) C^3 with Schmidt coefficients {1/2, sqrt(3)/2}.
BasisCandidate eq14_ueb2_2x3();
/// Three-member UEB2 of C^2 (x) C^2 whose members share no zero entry.
BasisCandidate eq9_nonpattern_ueb2();
BasisCandidate tiles_upb_3x3();
BasisCandidate pyramid_upb_3x3();
/// phi0 = (|00> + |11>)/sqrt(2) and (sigma_i (x) I_3) phi0 in C^2 (x) C^3.
BasisCandidate umeb_2x3();
/// Six three-qubit states whose 1|23 matricizations form an unextendible
/// rank-2 Hilbert-Schmidt basis of M_2x4, declared k = 2. Used as a negative
/// control: several members are not in multipartite Schmidt form.
BasisCandidate three_qubit_hs_fixture();

/// phi_mnls = k^{-1/2} sum_p zeta_k^{np} |p+m mod d1>|(l-1)k+p>|p+s mod d3>.
/// Requires 1 < k < d1 <= d2, d2 mod k != 0, and k <= d3 so the third-party
/// vectors are distinct. Throws InvalidParameters.
BasisCandidate suebk_tripartite(int d1, int d2, int d3, int k);

/// True iff the matricized members share at least d1*d2 - n zero cells.
/// Throws InvalidArity unless bipartite.
bool detect_zero_entries_condition(const BasisCandidate& b, double zero_tol = 1e-12);

}  // namespace uebk
