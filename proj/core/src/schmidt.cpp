#include "uebk/schmidt.hpp"

#include "uebk/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uebk {

namespace {

Complex unit_phase_of_leading(const ComplexVector& v) {
  double best = v.cwiseAbs().maxCoeff();
  if (best == 0.0) return 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= best - 1e-12) return std::conj(v(i)) / std::abs(v(i));
  }
  return 1.0;
}

std::vector<ComplexVector> branch_vectors(const std::vector<ComplexMatrix>& frames, int j) {
  std::vector<ComplexVector> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.emplace_back(f.col(j));
  return out;
}

ComplexVector assemble_amplitudes(const std::vector<double>& lambda,
                                  const std::vector<ComplexMatrix>& frames) {
  ComplexVector acc;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    auto factors = branch_vectors(frames, static_cast<int>(j));
    ComplexVector b = kron_all(factors);
    if (acc.size() == 0) acc = ComplexVector::Zero(b.size());
    acc += lambda[j] * b;
  }
  return acc;
}

// Squared singular values of the single-party matricization, i.e. the
// nonzero spectrum of the reduced state of `party`.
RealVector nonzero_spectrum(const MultiState& psi, int party) {
  ComplexMatrix a = matricize(psi, Cut::single(party, psi.parties()));
  RealVector s = svd(a).singular_values;
  if (s.size() == 0 || s(0) == 0.0) return RealVector(0);
  Eigen::Index count = (s.array() > kDefaultRankTol * s(0)).count();
  return s.head(count).array().square();
}

ComplexMatrix polar_factor(const ComplexMatrix& g) {
  Eigen::JacobiSVD<ComplexMatrix> solver(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return solver.matrixU() * solver.matrixV().adjoint();
}

ComplexMatrix random_frame(int d, int k, SeededRng& rng) {
  ComplexMatrix g = random_complex_gaussian(d, k, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(d, k);
}

}  // namespace

Dims SchmidtForm::dims() const {
  Dims d;
  for (const auto& f : frames) d.push_back(static_cast<int>(f.rows()));
  return d;
}

MultiState SchmidtForm::branch(int j) const {
  auto factors = branch_vectors(frames, j);
  return MultiState::product(factors);
}

MultiState SchmidtForm::assemble() const {
  return MultiState(dims(), assemble_amplitudes(coefficients, frames));
}

double frame_defect(const SchmidtForm& form) {
  double worst = 0.0;
  for (const auto& f : form.frames) worst = std::max(worst, unitarity_defect(f));
  return worst;
}

void canonicalize_phases(SchmidtForm& form) {
  const int m = static_cast<int>(form.frames.size());
  for (int s = 0; s + 1 < m; ++s) {
    for (int j = 0; j < form.k(); ++j) {
      Complex p = unit_phase_of_leading(form.frames[s].col(j));
      form.frames[s].col(j) *= p;
      form.frames[m - 1].col(j) *= std::conj(p);
    }
  }
}

bool form_matches(const SchmidtForm& form, const MultiState& psi, double reassembly_tol,
                  double frame_tol) {
  if (form.dims() != psi.dims()) return false;
  double sum_sq = 0.0;
  for (double l : form.coefficients) {
    if (!(l > 0.0)) return false;
    sum_sq += l * l;
  }
  if (std::abs(sum_sq - 1.0) > 1e-10 * std::max(1.0, psi.norm())) return false;
  if (frame_defect(form) > frame_tol) return false;
  return (form.assemble().amplitudes() - psi.amplitudes()).norm() <= reassembly_tol;
}

SchmidtForm schmidt_bipartite(const MultiState& psi, double tol) {
  if (psi.parties() != 2) throw Error(ErrorKind::InvalidArity, "schmidt_bipartite needs two parties");
  ComplexMatrix a = matricize(psi, Cut::first(2));
  SingularTriplet t = svd(a);
  int k = 0;
  if (t.singular_values.size() > 0 && t.singular_values(0) > 0.0) {
    k = static_cast<int>((t.singular_values.array() > tol * t.singular_values(0)).count());
  }
  SchmidtForm form;
  for (int j = 0; j < k; ++j) form.coefficients.push_back(t.singular_values(j));
  form.frames.push_back(t.left_frame.leftCols(k));
  form.frames.push_back(t.right_frame.leftCols(k).conjugate());
  canonicalize_phases(form);
  return form;
}

std::string_view to_string(SchmidtOutcome outcome) {
  switch (outcome) {
    case SchmidtOutcome::Form: return "Form";
    case SchmidtOutcome::NotSchmidtForm: return "NotSchmidtForm";
    case SchmidtOutcome::Indeterminate: return "Indeterminate";
  }
  return "?";
}

SchmidtDetection schmidt_form_multipartite(const MultiState& psi,
                                           const MultipartiteSchmidtOptions& options) {
  const int m = psi.parties();
  if (m < 3) throw Error(ErrorKind::InvalidArity, "multipartite Schmidt detection needs m >= 3");

  SchmidtDetection out;

  // (a) every single-party reduced state must share one nonzero spectrum.
  std::vector<RealVector> spectra;
  for (int s = 0; s < m; ++s) spectra.push_back(nonzero_spectrum(psi, s));
  for (int s = 1; s < m; ++s) {
    bool same = spectra[s].size() == spectra[0].size() &&
                (spectra[s] - spectra[0]).cwiseAbs().maxCoeff() <= options.tol;
    if (spectra[0].size() == 0 && spectra[s].size() == 0) same = true;
    if (!same) {
      std::ostringstream why;
      why << "spectra mismatch: party 1 has reduced rank " << spectra[0].size() << ", party " << s + 1
          << " has reduced rank " << spectra[s].size();
      out.outcome = SchmidtOutcome::NotSchmidtForm;
      out.reason = why.str();
      return out;
    }
  }
  const int k = static_cast<int>(spectra[0].size());
  if (k == 0) {
    out.outcome = SchmidtOutcome::NotSchmidtForm;
    out.reason = "zero state";
    return out;
  }

  bool degenerate = false;
  for (int j = 0; j + 1 < k; ++j) {
    if (spectra[0](j) - spectra[0](j + 1) < options.degeneracy_gap) degenerate = true;
  }

  if (!degenerate) {
    // (b) eigenvectors of rho_1 are forced; conditionals must be product.
    const Cut first = Cut::first(m);
    SingularTriplet t = svd(matricize(psi, first));
    Dims rest_dims(psi.dims().begin() + 1, psi.dims().end());
    const int rest_m = m - 1;

    SchmidtForm form;
    form.frames.push_back(t.left_frame.leftCols(k));
    for (int s = 1; s < m; ++s) form.frames.emplace_back(psi.dims()[s], k);

    for (int j = 0; j < k; ++j) {
      MultiState conditional(rest_dims, t.right_frame.col(j).conjugate());
      std::vector<ComplexVector> factors;
      for (int r = 0; r < rest_m; ++r) {
        ComplexMatrix a = matricize(conditional, Cut::single(r, rest_m));
        if (numerical_rank(a, options.tol) != 1) {
          std::ostringstream why;
          why << "conditional vector " << j << " along party-1 eigenvector is not a product state";
          out.outcome = SchmidtOutcome::NotSchmidtForm;
          out.reason = why.str();
          return out;
        }
        factors.emplace_back(svd(a).left_frame.col(0));
      }
      Complex coef = inner(MultiState::product(factors), conditional) * t.singular_values(j);
      if (std::abs(coef) > 0.0) factors.back() *= coef / std::abs(coef);
      form.coefficients.push_back(std::abs(coef));
      for (int r = 0; r < rest_m; ++r) form.frames[r + 1].col(j) = factors[r];
    }
    if (frame_defect(form) > options.tol) {
      out.outcome = SchmidtOutcome::NotSchmidtForm;
      out.reason = "conditional factors are not orthonormal on some party";
      return out;
    }
    canonicalize_phases(form);
    double residual = (form.assemble().amplitudes() - psi.amplitudes()).norm();
    if (residual > 1e-8) {
      out.outcome = SchmidtOutcome::Indeterminate;
      out.reason = "reassembly residual " + std::to_string(residual);
      return out;
    }
    out.outcome = SchmidtOutcome::Form;
    out.form = std::move(form);
    out.best_overlap = 1.0;
    return out;
  }

  // (c) degenerate spectrum: seeded alternating search for the best Schmidt-form overlap.
  ComplexMatrix q = psi.amplitudes() / psi.norm();
  SeededRng rng(options.seed);
  FrameSearchOptions search;
  search.max_sweeps = options.max_sweeps;
  FrameSearchResult found = maximize_projected_schmidt(q, psi.dims(), k, rng, options.restarts, search);
  out.best_overlap = std::sqrt(std::max(0.0, found.best_value));
  if (out.best_overlap < 1.0 - options.accept_gap) {
    out.outcome = SchmidtOutcome::Indeterminate;
    std::ostringstream why;
    why << "degenerate spectrum; fallback search reached overlap " << out.best_overlap << " after "
        << found.restarts_run << " restarts";
    out.reason = why.str();
    return out;
  }
  // Refit coefficients against the source state exactly.
  SchmidtForm form = std::move(found.best_form);
  const int last = m - 1;
  for (int j = 0; j < k; ++j) {
    Complex c = inner(form.branch(j), psi);
    if (std::abs(c) > 0.0) form.frames[last].col(j) *= c / std::abs(c);
    form.coefficients[j] = std::abs(c);
  }
  canonicalize_phases(form);
  out.outcome = SchmidtOutcome::Form;
  out.form = std::move(form);
  out.reason = "degenerate spectrum resolved by fallback search";
  return out;
}

SchmidtDetection detect_schmidt_form(const MultiState& psi, const MultipartiteSchmidtOptions& options) {
  if (psi.parties() == 2) {
    SchmidtDetection out;
    out.outcome = SchmidtOutcome::Form;
    out.form = schmidt_bipartite(psi);
    out.best_overlap = 1.0;
    return out;
  }
  return schmidt_form_multipartite(psi, options);
}

bool is_suebk_member(const SchmidtForm& form, double tol) {
  if (form.k() == 0) return false;
  const double target = 1.0 / std::sqrt(static_cast<double>(form.k()));
  for (double l : form.coefficients) {
    if (std::abs(l - target) > tol) return false;
  }
  return true;
}

namespace {

// Unit vector nearest (by rescaling) to `mags` with every entry >= floor:
// entries that would fall below the floor are pinned to it and the rest
// share the remaining norm in proportion.
std::vector<double> unit_with_floor(const std::vector<double>& mags, double floor) {
  const std::size_t k = mags.size();
  std::vector<bool> pinned(k, false);
  std::vector<double> out(k, floor);
  for (;;) {
    double free_sq = 0.0;
    std::size_t n_pinned = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (pinned[j]) ++n_pinned;
      else free_sq += mags[j] * mags[j];
    }
    const double room = std::max(0.0, 1.0 - static_cast<double>(n_pinned) * floor * floor);
    const std::size_t n_free = k - n_pinned;
    if (n_free == 0) return out;
    bool changed = false;
    for (std::size_t j = 0; j < k; ++j) {
      if (pinned[j]) continue;
      out[j] = free_sq > 0.0 ? mags[j] * std::sqrt(room / free_sq) : std::sqrt(room / static_cast<double>(n_free));
      if (out[j] < floor) {
        pinned[j] = true;
        out[j] = floor;
        changed = true;
      }
    }
    if (!changed) return out;
  }
}

}  // namespace

FrameSearchResult maximize_projected_schmidt(const ComplexMatrix& q, const Dims& dims, int k,
                                             const SeededRng& rng, int restarts,
                                             const FrameSearchOptions& options) {
  const int m = static_cast<int>(dims.size());
  if (k < 1) throw Error(ErrorKind::InvalidInput, "Schmidt search needs k >= 1");
  for (int d : dims) {
    if (d < k) throw Error(ErrorKind::InvalidInput, "Schmidt rank exceeds a party dimension");
  }
  if (q.rows() != total_dimension(dims)) throw Error(ErrorKind::InvalidInput, "subspace basis has wrong length");

  FrameSearchResult result;
  result.best_value = -1.0;

  auto evaluate = [&](const std::vector<double>& lambda, const std::vector<ComplexMatrix>& frames) {
    ComplexVector phi = assemble_amplitudes(lambda, frames);
    return (q.adjoint() * phi).squaredNorm();
  };

  for (int r = 0; r < restarts; ++r) {
    SeededRng local = rng.derive(static_cast<std::uint64_t>(r));
    std::vector<ComplexMatrix> frames;
    for (int d : dims) frames.push_back(random_frame(d, k, local));
    std::vector<double> lambda(k);
    for (auto& l : lambda) l = 0.5 + local.uniform();
    lambda = unit_with_floor(lambda, options.lambda_min);

    double value = evaluate(lambda, frames);
    double restart_best = value;
    std::vector<double> best_lambda = lambda;
    std::vector<ComplexMatrix> best_frames = frames;

    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      for (int s = 0; s < m; ++s) {
        ComplexVector phi = assemble_amplitudes(lambda, frames);
        ComplexVector chi = q * (q.adjoint() * phi);
        ComplexMatrix grad(dims[s], k);
        for (int j = 0; j < k; ++j) {
          auto vecs = branch_vectors(frames, j);
          grad.col(j) = lambda[j] * contract_except(chi, dims, s, vecs);
        }
        frames[s] = polar_factor(grad);
      }
      // Coefficient block: top eigenvector of the compressed Gram matrix.
      ComplexMatrix proj(q.cols(), k);
      for (int j = 0; j < k; ++j) {
        auto vecs = branch_vectors(frames, j);
        proj.col(j) = q.adjoint() * kron_all(vecs);
      }
      ComplexMatrix gram = proj.adjoint() * proj;
      gram = 0.5 * (gram + gram.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
      ComplexVector c = eig.eigenvectors().col(k - 1);
      for (int j = 0; j < k; ++j) {
        double mag = std::abs(c(j));
        if (mag > 0.0) frames[m - 1].col(j) *= c(j) / mag;
        lambda[j] = mag;
      }
      lambda = unit_with_floor(lambda, options.lambda_min);

      double next = evaluate(lambda, frames);
      if (next > restart_best) {
        restart_best = next;
        best_lambda = lambda;
        best_frames = frames;
      }
      bool stalled = next - value < options.stall;
      value = next;
      if (stalled || restart_best >= options.stop_at) break;
    }

    ++result.restarts_run;
    if (restart_best > result.best_value) {
      result.best_value = restart_best;
      result.best_form.coefficients = best_lambda;
      result.best_form.frames = best_frames;
    }
    if (result.best_value >= options.stop_at) break;
  }
  canonicalize_phases(result.best_form);
  return result;
}

}  // namespace uebk
