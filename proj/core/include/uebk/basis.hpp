#pragma once

#include "uebk/schmidt.hpp"
#include "uebk/states.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uebk {

/// Free-form construction record: constructor name, parameters, seeds, lifts.
using Provenance = std::map<std::string, std::string>;

/// An ordered set of states claimed to form an n-member UEBk in dims.
///
/// `forms` optionally carries a known Schmidt decomposition per member, in
/// the branch order the construction defines. Lifting uses it when present
/// (after checking it reassembles the member); verification never trusts it.
struct BasisCandidate {
  Dims dims;
  int k = 1;
  std::vector<MultiState> members;
  Provenance provenance;
  bool claimed_special = false;
  std::vector<std::optional<SchmidtForm>> forms;

  int size() const noexcept { return static_cast<int>(members.size()); }
  Eigen::Index space_dimension() const { return total_dimension(dims); }

  /// 1 <= k <= min(dims), 0 < n < prod(dims), members normalized with
  /// matching dims, forms empty or one per member. Throws InvalidInput.
  void check_invariants() const;
};

/// Multiplies every member by its canonical phase (first largest-modulus
/// amplitude real positive) and moves the same phase into the last-party
/// frame of any stored form.
void normalize_member_phases(BasisCandidate& b);

/// Members as columns of a D x n matrix.
ComplexMatrix member_matrix(const BasisCandidate& b);

/// Same amplitudes viewed as a bipartite system across `cut`
/// (dims become {prod(left), prod(right)}). Stored forms are dropped.
BasisCandidate regroup(const BasisCandidate& b, const Cut& cut);

}  // namespace uebk
