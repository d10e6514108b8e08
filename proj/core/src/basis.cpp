#include "uebk/basis.hpp"

#include "uebk/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uebk {

void BasisCandidate::check_invariants() const {
  if (dims.empty()) throw Error(ErrorKind::InvalidInput, "basis has no parties");
  const int min_dim = *std::min_element(dims.begin(), dims.end());
  if (k < 1 || k > min_dim) {
    std::ostringstream why;
    why << "k = " << k << " outside [1, " << min_dim << "]";
    throw Error(ErrorKind::InvalidInput, why.str());
  }
  if (members.empty()) throw Error(ErrorKind::InvalidInput, "basis has no members");
  if (static_cast<Eigen::Index>(members.size()) >= space_dimension()) {
    throw Error(ErrorKind::InvalidInput, "member count must be below the space dimension");
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].dims() != dims) throw Error(ErrorKind::InvalidInput, "member dims mismatch");
    if (std::abs(members[i].norm() - 1.0) > 1e-10) {
      throw Error(ErrorKind::InvalidInput, "member " + std::to_string(i) + " is not normalized");
    }
  }
  if (!forms.empty() && forms.size() != members.size()) {
    throw Error(ErrorKind::InvalidInput, "stored forms must be one per member");
  }
}

void normalize_member_phases(BasisCandidate& b) {
  for (std::size_t i = 0; i < b.members.size(); ++i) {
    Complex c = b.members[i].canonical_phase();
    b.members[i] = MultiState(b.members[i].dims(), b.members[i].amplitudes() * c);
    if (i < b.forms.size() && b.forms[i]) b.forms[i]->frames.back() *= c;
  }
}

ComplexMatrix member_matrix(const BasisCandidate& b) {
  ComplexMatrix m(b.space_dimension(), b.size());
  for (int i = 0; i < b.size(); ++i) m.col(i) = b.members[i].amplitudes();
  return m;
}

BasisCandidate regroup(const BasisCandidate& b, const Cut& cut) {
  BasisCandidate out;
  int left = 1;
  int right = 1;
  for (int p : cut.left()) left *= b.dims[p];
  for (int p : cut.right()) right *= b.dims[p];
  out.dims = {left, right};
  out.k = b.k;
  out.claimed_special = b.claimed_special;
  out.provenance = b.provenance;
  std::ostringstream view;
  view << "cut";
  for (int p : cut.left()) view << ' ' << p + 1;
  view << " |";
  for (int p : cut.right()) view << ' ' << p + 1;
  out.provenance["view"] = view.str();
  for (const auto& m : b.members) {
    ComplexMatrix a = matricize(m, cut);
    out.members.push_back(dematricize(a, out.dims, Cut::first(2)));
  }
  return out;
}

}  // namespace uebk
