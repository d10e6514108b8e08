#include "uebk/verifier.hpp"

#include "uebk/error.hpp"
#include "uebk/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace uebk {

namespace {

constexpr double kComplementTol = 1e-10;

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::string party_list(const std::vector<int>& parties) {
  std::ostringstream out;
  for (std::size_t i = 0; i < parties.size(); ++i) out << (i ? "," : "") << parties[i] + 1;
  return out.str();
}

std::string cut_name(const Cut& cut) { return party_list(cut.left()) + "|" + party_list(cut.right()); }

int min_dim(const Dims& dims) { return *std::min_element(dims.begin(), dims.end()); }

// Every element of span(complement) matricized at `cut`.
std::vector<ComplexMatrix> matricized_span(const Dims& dims, const ComplexMatrix& complement, const Cut& cut) {
  std::vector<ComplexMatrix> out;
  for (Eigen::Index c = 0; c < complement.cols(); ++c) {
    out.push_back(matricize(MultiState(dims, complement.col(c)), cut));
  }
  return out;
}

UnextendibilityVerdict vacuous(int k, const std::string& why) {
  UnextendibilityVerdict v;
  v.kind = VerdictKind::Certified;
  v.k = k;
  v.certificate = why;
  return v;
}

struct RankObjective {
  double value = 0.0;
  double sigma_k = 0.0;
};

// f(B) = sum_{j>k} sigma_j^2 + max(0, floor - sigma_k)^2 and, optionally,
// its gradient with respect to conj(B) in flattened row-major form.
RankObjective rank_objective(const ComplexVector& flat, int d1, int d2, int k, double floor,
                             ComplexVector* gradient) {
  RowMajor b = Eigen::Map<const RowMajor>(flat.data(), d1, d2);
  Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix(b), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  RankObjective out;
  out.sigma_k = s(k - 1);
  const double shortfall = std::max(0.0, floor - out.sigma_k);
  for (Eigen::Index j = k; j < s.size(); ++j) out.value += s(j) * s(j);
  out.value += shortfall * shortfall;
  if (gradient) {
    ComplexMatrix g = ComplexMatrix::Zero(d1, d2);
    const auto& u = svd.matrixU();
    const auto& v = svd.matrixV();
    for (Eigen::Index j = k; j < s.size(); ++j) g += s(j) * u.col(j) * v.col(j).adjoint();
    if (shortfall > 0.0) g -= shortfall * u.col(k - 1) * v.col(k - 1).adjoint();
    RowMajor gr = g;
    *gradient = Eigen::Map<const ComplexVector>(gr.data(), gr.size());
  }
  return out;
}

// Best rank-k approximation of the flattened matrix.
ComplexVector truncate_rank(const ComplexVector& flat, int d1, int d2, int k) {
  RowMajor b = Eigen::Map<const RowMajor>(flat.data(), d1, d2);
  Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix(b), Eigen::ComputeThinU | Eigen::ComputeThinV);
  RowMajor t = svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal() *
               svd.matrixV().leftCols(k).adjoint();
  return Eigen::Map<const ComplexVector>(t.data(), t.size());
}

bool member_failed(const MemberResult& m) {
  return m.outcome == SchmidtOutcome::NotSchmidtForm || (m.outcome == SchmidtOutcome::Form && !m.matches_k);
}

}  // namespace

std::string_view to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::CertificateOnly: return "cert";
    case VerifyMode::CertificateThenSearch: return "cert+search";
    case VerifyMode::SearchOnly: return "search";
  }
  return "?";
}

VerifyMode parse_verify_mode(std::string_view name) {
  for (auto m : {VerifyMode::CertificateOnly, VerifyMode::CertificateThenSearch, VerifyMode::SearchOnly}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorKind::InvalidParameters, "unknown verification mode '" + std::string(name) + "'");
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Certified: return "Certified";
    case VerdictKind::Falsified: return "Falsified";
    case VerdictKind::SearchPassed: return "SearchPassed";
    case VerdictKind::Inconclusive: return "Inconclusive";
    case VerdictKind::Indeterminate: return "Indeterminate";
  }
  return "?";
}

bool VerificationReport::members_ok() const {
  return std::all_of(members.begin(), members.end(),
                     [](const MemberResult& m) { return m.outcome == SchmidtOutcome::Form && m.matches_k; });
}

int VerificationReport::exit_code() const {
  bool failed = !orthonormal || unextendibility.kind == VerdictKind::Falsified || suebk_check == false;
  failed = failed || std::any_of(members.begin(), members.end(), member_failed);
  if (prop2) {
    failed = failed || std::any_of(prop2->per_k.begin(), prop2->per_k.end(), [](const auto& v) {
               return v.kind == VerdictKind::Falsified;
             });
  }
  if (failed) return 2;
  const bool open = unextendibility.kind == VerdictKind::Inconclusive ||
                    unextendibility.kind == VerdictKind::Indeterminate || !members_ok();
  return open ? 3 : 0;
}

double verify_orthonormal(const BasisCandidate& b) {
  const ComplexMatrix m = member_matrix(b);
  const ComplexMatrix gram = m.adjoint() * m;
  return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

ComplexMatrix complement_matrix(const BasisCandidate& b) {
  const ComplexMatrix m = member_matrix(b);
  const Eigen::Index d = m.rows();
  ComplexMatrix residual = ComplexMatrix::Identity(d, d) - m * m.adjoint();
  ComplexMatrix q(d, 0);
  while (q.cols() < d) {
    Eigen::Index pivot = 0;
    const double best = residual.colwise().norm().maxCoeff(&pivot);
    if (best <= kComplementTol) break;
    ComplexVector v = residual.col(pivot) / best;
    // Second orthogonalization pass against the members and earlier columns.
    v -= m * (m.adjoint() * v);
    v -= q * (q.adjoint() * v);
    v.normalize();
    residual -= v * (v.adjoint() * residual);
    const Complex phase = MultiState({static_cast<int>(d)}, v).canonical_phase();
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = v * phase;
  }
  return q;
}

std::vector<MultiState> complement_basis(const BasisCandidate& b) {
  const ComplexMatrix q = complement_matrix(b);
  std::vector<MultiState> out;
  for (Eigen::Index c = 0; c < q.cols(); ++c) out.emplace_back(b.dims, q.col(c));
  return out;
}

UnextendibilityVerdict certify_unextendible(const Dims& dims, int k, const ComplexMatrix& complement,
                                            const SeededRng& rng) {
  const int m = static_cast<int>(dims.size());
  if (k > min_dim(dims)) return vacuous(k, "k exceeds the smallest local dimension");
  if (complement.cols() == 0) return vacuous(k, "complement is empty");

  std::vector<Cut> cuts;
  if (m == 2) {
    cuts.push_back(Cut::first(2));
  } else {
    for (int s = 0; s < m; ++s) cuts.push_back(Cut::single(s, m));
    for (const Cut& c : all_cuts(m)) {
      if (c.left().size() > 1 && c.right().size() > 1) cuts.push_back(c);
    }
  }
  SeededRng local = rng;
  UnextendibilityVerdict v;
  v.k = k;
  v.kind = VerdictKind::Inconclusive;
  std::ostringstream tried;
  for (const Cut& cut : cuts) {
    const int g = generic_rank(matricized_span(dims, complement, cut), local);
    if (g < k) {
      std::ostringstream why;
      why << "complement generic rank " << g << " < " << k << " at cut " << cut_name(cut);
      v.kind = VerdictKind::Certified;
      v.certificate = why.str();
      return v;
    }
    tried << (tried.tellp() > 0 ? ", " : "") << cut_name(cut) << ":" << g;
  }
  v.certificate = "complement generic ranks " + tried.str();
  return v;
}

UnextendibilityVerdict certify_unextendible(const BasisCandidate& b, const SeededRng& rng) {
  return certify_unextendible(b.dims, b.k, complement_matrix(b), rng);
}

UnextendibilityVerdict search_rank_k_in_subspace(const ComplexMatrix& complement, int k, const Dims& dims,
                                                 const SeededRng& rng, const SearchSettings& settings) {
  if (dims.size() != 2) throw Error(ErrorKind::InvalidArity, "rank search is bipartite");
  if (k < 1) throw Error(ErrorKind::InvalidK, "k must be positive");
  if (settings.restarts < 1) throw Error(ErrorKind::InvalidParameters, "need at least one restart");
  UnextendibilityVerdict v;
  v.k = k;
  v.seed = rng.seed();
  if (k > min_dim(dims)) return vacuous(k, "k exceeds the smallest local dimension");
  if (complement.cols() == 0) return vacuous(k, "complement is empty");

  const int d1 = dims[0];
  const int d2 = dims[1];
  const Eigen::Index c = complement.cols();
  auto objective = [&](const ComplexVector& coeffs, ComplexVector* grad) {
    ComplexVector g;
    RankObjective r = rank_objective(complement * coeffs, d1, d2, k, settings.floor, grad ? &g : nullptr);
    if (grad) *grad = complement.adjoint() * g;
    return r;
  };

  double best = std::numeric_limits<double>::infinity();
  ComplexVector best_coeffs;
  for (int r = 0; r < settings.restarts; ++r) {
    SeededRng local = rng.derive(static_cast<std::uint64_t>(r));
    ComplexVector x = random_complex_gaussian(c, 1, local).col(0);
    x.normalize();
    ComplexVector grad;
    RankObjective cur = objective(x, &grad);
    double step = 1.0;
    for (int it = 0; it < settings.max_iterations && cur.value > settings.tol * 1e-3; ++it) {
      // Tangent component on the unit sphere.
      ComplexVector tangent = grad - x * x.dot(grad);
      if (tangent.norm() < 1e-15) break;
      bool moved = false;
      while (step > 1e-12) {
        ComplexVector trial = (x - step * tangent).normalized();
        ComplexVector trial_grad;
        RankObjective next = objective(trial, &trial_grad);
        if (next.value < cur.value) {
          x = trial;
          grad = trial_grad;
          cur = next;
          step = std::min(step * 2.0, 1e3);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    // Polish by alternating projection between rank-k matrices and the span.
    for (int it = 0; it < settings.max_iterations && cur.value > 0.0; ++it) {
      ComplexVector y = complement.adjoint() * truncate_rank(complement * x, d1, d2, k);
      if (y.norm() < 1e-300) break;
      y.normalize();
      RankObjective next = objective(y, nullptr);
      if (!(next.value < cur.value)) break;
      x = y;
      cur = next;
    }
    if (cur.value < best) {
      best = cur.value;
      best_coeffs = x;
    }
    v.restarts = r + 1;
    if (cur.value < settings.tol && cur.sigma_k >= settings.floor) {
      v.kind = VerdictKind::Falsified;
      v.best_objective = cur.value;
      v.witness = MultiState(dims, complement * x).phase_normalized();
      std::ostringstream why;
      why << "rank-" << k << " complement element, objective " << cur.value << ", sigma_k " << cur.sigma_k;
      v.certificate = why.str();
      return v;
    }
  }
  v.kind = VerdictKind::SearchPassed;
  v.best_objective = best;
  return v;
}

UnextendibilityVerdict search_schmidt_form_in_subspace(const ComplexMatrix& complement, int k, const Dims& dims,
                                                       const SeededRng& rng, const SearchSettings& settings) {
  if (settings.restarts < 1) throw Error(ErrorKind::InvalidParameters, "need at least one restart");
  UnextendibilityVerdict v;
  v.k = k;
  v.seed = rng.seed();
  if (k > min_dim(dims)) return vacuous(k, "k exceeds the smallest local dimension");
  if (complement.cols() == 0) return vacuous(k, "complement is empty");

  FrameSearchOptions opts;
  opts.max_sweeps = settings.max_iterations;
  opts.lambda_min = k > 1 ? settings.floor : 0.0;
  FrameSearchResult found = maximize_projected_schmidt(complement, dims, k, rng, settings.restarts, opts);
  v.best_objective = found.best_value;
  v.restarts = found.restarts_run;
  if (found.best_value > 1.0 - settings.tol) {
    v.kind = VerdictKind::Falsified;
    v.witness = found.best_form.assemble().normalized().phase_normalized();
    std::ostringstream why;
    why << k << "-branch Schmidt-form state with squared overlap " << std::setprecision(17) << found.best_value;
    v.certificate = why.str();
  } else {
    v.kind = VerdictKind::SearchPassed;
  }
  return v;
}

Prop2Check check_prop2(const BasisCandidate& b, const SeededRng& rng, const SearchSettings& settings) {
  Prop2Check out;
  const ComplexMatrix q = complement_matrix(b);
  const int top = min_dim(b.dims);
  UnextendibilityVerdict cert = certify_unextendible(b.dims, b.k, q, rng.derive(0));
  if (cert.kind == VerdictKind::Certified) out.certificate = cert.certificate;
  for (int kp = b.k; kp <= top; ++kp) {
    SeededRng local = rng.derive(static_cast<std::uint64_t>(kp));
    if (b.dims.size() == 2) {
      if (out.certificate) {
        UnextendibilityVerdict v = vacuous(kp, *out.certificate);
        out.per_k.push_back(v);
      } else {
        out.per_k.push_back(search_rank_k_in_subspace(q, kp, b.dims, local, settings));
      }
    } else {
      out.per_k.push_back(search_schmidt_form_in_subspace(q, kp, b.dims, local, settings));
    }
  }
  return out;
}

VerificationReport verify(const BasisCandidate& b, const VerifyOptions& options) {
  VerificationReport report;
  report.orthonormality_residual = verify_orthonormal(b);
  report.orthonormal = report.orthonormality_residual <= options.orthonormality_tol;

  MultipartiteSchmidtOptions detect;
  detect.seed = options.seed;
  bool all_special = true;
  for (const auto& psi : b.members) {
    MemberResult r;
    SchmidtDetection det = detect_schmidt_form(psi, detect);
    r.outcome = det.outcome;
    r.reason = det.reason;
    if (det.form) {
      r.schmidt_number = det.form->k();
      r.coefficients = det.form->coefficients;
      r.matches_k = r.schmidt_number == b.k;
      r.suebk = is_suebk_member(*det.form);
    }
    all_special = all_special && r.suebk;
    report.members.push_back(std::move(r));
  }
  if (b.claimed_special) report.suebk_check = all_special;

  const bool bipartite = b.dims.size() == 2;
  SearchSettings settings;
  settings.restarts = options.restarts > 0 ? options.restarts : (bipartite ? 100 : 200);
  settings.max_iterations = options.max_iterations;
  settings.tol = options.tol;

  const SeededRng base(options.seed);
  if (!report.orthonormal) {
    report.unextendibility.kind = VerdictKind::Indeterminate;
    report.unextendibility.k = b.k;
    report.unextendibility.certificate = "skipped: members are not orthonormal";
    return report;
  }
  const ComplexMatrix q = complement_matrix(b);
  auto search = [&] {
    const SeededRng rng = base.derive(2);
    return bipartite ? search_rank_k_in_subspace(q, b.k, b.dims, rng, settings)
                     : search_schmidt_form_in_subspace(q, b.k, b.dims, rng, settings);
  };
  if (options.mode == VerifyMode::SearchOnly) {
    report.unextendibility = search();
  } else {
    report.unextendibility = certify_unextendible(b.dims, b.k, q, base.derive(1));
    if (report.unextendibility.kind == VerdictKind::Inconclusive &&
        options.mode == VerifyMode::CertificateThenSearch) {
      report.unextendibility = search();
    }
  }
  if (options.prop2) {
    report.prop2 = check_prop2(b, base.derive(3), settings);
    for (auto& v : report.prop2->per_k) v.seed = options.seed;
  }
  // Report the caller's seed; the sub-streams are derived from it.
  report.unextendibility.seed = options.seed;
  return report;
}

std::string format_report(const BasisCandidate& b, const VerificationReport& report) {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "dims:";
  for (std::size_t i = 0; i < b.dims.size(); ++i) out << (i ? "x" : " ") << b.dims[i];
  out << "  k: " << b.k << "  members: " << b.size() << "\n";
  out << "orthonormality residual: " << report.orthonormality_residual
      << (report.orthonormal ? " (pass)" : " (FAIL)") << "\n";
  for (std::size_t i = 0; i < report.members.size(); ++i) {
    const auto& m = report.members[i];
    out << "member " << i << ": " << to_string(m.outcome);
    if (m.schmidt_number >= 0) {
      out << ", Schmidt number " << m.schmidt_number << ", coefficients [";
      for (std::size_t j = 0; j < m.coefficients.size(); ++j) out << (j ? ", " : "") << m.coefficients[j];
      out << "]";
    }
    if (member_failed(m)) out << "  FAIL";
    if (!m.reason.empty() && m.outcome != SchmidtOutcome::Form) out << "  (" << m.reason << ")";
    out << "\n";
  }
  if (report.suebk_check) out << "equal coefficients 1/sqrt(k): " << (*report.suebk_check ? "yes" : "NO") << "\n";
  auto verdict = [&](const UnextendibilityVerdict& v) {
    std::ostringstream s;
    s << std::setprecision(6) << to_string(v.kind);
    switch (v.kind) {
      case VerdictKind::Certified:
      case VerdictKind::Falsified:
      case VerdictKind::Inconclusive:
      case VerdictKind::Indeterminate:
        if (!v.certificate.empty()) s << " (" << v.certificate << ")";
        break;
      case VerdictKind::SearchPassed:
        s << " (heuristic: best objective " << v.best_objective << " over " << v.restarts << " restarts, seed "
          << v.seed << ")";
        break;
    }
    return s.str();
  };
  out << "unextendibility at k = " << b.k << ": " << verdict(report.unextendibility) << "\n";
  if (report.prop2) {
    if (report.prop2->certificate) out << "complement bound: " << *report.prop2->certificate << "\n";
    for (const auto& v : report.prop2->per_k) out << "complement at k' = " << v.k << ": " << verdict(v) << "\n";
  }
  const int code = report.exit_code();
  out << "result: " << (code == 0 ? "PASS" : code == 2 ? "FAIL" : "INDETERMINATE") << "\n";
  return out.str();
}

}  // namespace uebk
