#pragma once

#include "uebk/basis.hpp"

#include <vector>

namespace uebk {

/// Schmidt form of member i used by the lift: the stored form when it
/// reassembles the member with b.k branches, otherwise the SVD form
/// (bipartite) or the detected multipartite form. Throws LiftBlocked when
/// no form with b.k branches is available.
SchmidtForm lift_form(const BasisCandidate& b, int i, const MultipartiteSchmidtOptions& options = {});

/// |psi_ij> = sum_l lambda_l |psi_i^l> |(j + l) mod d_next>, i-major.
/// Throws InvalidDimension when d_next < 2.
BasisCandidate lift_uebk(const BasisCandidate& b, int d_next, const MultipartiteSchmidtOptions& options = {});

/// |psi_ij> = |psi_i>|j> for a product basis (k = 1). Throws InvalidK otherwise.
BasisCandidate lift_upb(const BasisCandidate& b, int d_next);

/// Left fold of lift_upb (k = 1) or lift_uebk over dims_next.
BasisCandidate lift_chain(const BasisCandidate& b, const std::vector<int>& dims_next,
                          const MultipartiteSchmidtOptions& options = {});

}  // namespace uebk
