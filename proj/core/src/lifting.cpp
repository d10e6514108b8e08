#include "uebk/lifting.hpp"

#include "uebk/error.hpp"

#include <sstream>

namespace uebk {

namespace {

void require_dimension(int d_next) {
  if (d_next < 2) throw Error(ErrorKind::InvalidDimension, "lift dimension must be >= 2");
}

void record_lift(BasisCandidate& out, const BasisCandidate& parent, int d_next) {
  out.provenance = parent.provenance;
  std::string& lifts = out.provenance["lifts"];
  if (!lifts.empty()) lifts += ",";
  lifts += std::to_string(d_next);
}

std::string blocked(int i, const std::string& why) {
  std::ostringstream msg;
  msg << "member " << i << ": " << why;
  return msg.str();
}

}  // namespace

SchmidtForm lift_form(const BasisCandidate& b, int i, const MultipartiteSchmidtOptions& options) {
  const MultiState& psi = b.members.at(i);
  if (i < static_cast<int>(b.forms.size()) && b.forms[i] && b.forms[i]->k() == b.k &&
      form_matches(*b.forms[i], psi)) {
    return *b.forms[i];
  }
  if (psi.parties() == 2) {
    SchmidtForm f = schmidt_bipartite(psi);
    if (f.k() != b.k) {
      throw Error(ErrorKind::LiftBlocked,
                  blocked(i, "Schmidt rank " + std::to_string(f.k()) + ", declared k = " + std::to_string(b.k)));
    }
    return f;
  }
  SchmidtDetection det = schmidt_form_multipartite(psi, options);
  if (det.outcome != SchmidtOutcome::Form) {
    throw Error(ErrorKind::LiftBlocked, blocked(i, std::string(to_string(det.outcome)) + " (" + det.reason + ")"));
  }
  if (det.form->k() != b.k) {
    throw Error(ErrorKind::LiftBlocked, blocked(i, "Schmidt form has " + std::to_string(det.form->k()) +
                                                       " branches, declared k = " + std::to_string(b.k)));
  }
  return *det.form;
}

BasisCandidate lift_uebk(const BasisCandidate& b, int d_next, const MultipartiteSchmidtOptions& options) {
  require_dimension(d_next);
  BasisCandidate out;
  out.dims = b.dims;
  out.dims.push_back(d_next);
  out.k = b.k;
  out.claimed_special = b.claimed_special;
  record_lift(out, b, d_next);
  const bool distinct = d_next >= b.k;  // otherwise the last-party vectors repeat
  for (int i = 0; i < b.size(); ++i) {
    const SchmidtForm parent = lift_form(b, i, options);
    for (int j = 0; j < d_next; ++j) {
      SchmidtForm f = parent;
      ComplexMatrix last = ComplexMatrix::Zero(d_next, parent.k());
      for (int l = 0; l < parent.k(); ++l) last((j + l) % d_next, l) = 1.0;
      f.frames.push_back(last);
      out.members.push_back(f.assemble());
      out.forms.push_back(distinct ? std::optional<SchmidtForm>(f) : std::nullopt);
    }
  }
  normalize_member_phases(out);
  out.check_invariants();
  return out;
}

BasisCandidate lift_upb(const BasisCandidate& b, int d_next) {
  if (b.k != 1) throw Error(ErrorKind::InvalidK, "product-basis lift needs k = 1");
  require_dimension(d_next);
  BasisCandidate out;
  out.dims = b.dims;
  out.dims.push_back(d_next);
  out.k = 1;
  out.claimed_special = b.claimed_special;
  record_lift(out, b, d_next);
  const bool has_forms = !b.forms.empty();
  for (int i = 0; i < b.size(); ++i) {
    for (int j = 0; j < d_next; ++j) {
      ComplexVector e = ComplexVector::Zero(d_next);
      e(j) = 1.0;
      out.members.push_back(b.members[i].append(e));
      if (!has_forms) continue;
      std::optional<SchmidtForm> f = b.forms[i];
      if (f) f->frames.emplace_back(e);
      out.forms.push_back(std::move(f));
    }
  }
  normalize_member_phases(out);
  out.check_invariants();
  return out;
}

BasisCandidate lift_chain(const BasisCandidate& b, const std::vector<int>& dims_next,
                          const MultipartiteSchmidtOptions& options) {
  BasisCandidate cur = b;
  for (int d : dims_next) cur = cur.k == 1 ? lift_upb(cur, d) : lift_uebk(cur, d, options);
  return cur;
}

}  // namespace uebk
