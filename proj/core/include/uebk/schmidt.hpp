#pragma once

#include "uebk/numerics.hpp"
#include "uebk/states.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uebk {

/// sum_j lambda_j e_j^(1) (x) e_j^(2) (x) ... (x) e_j^(m).
///
/// frames[s] is d_s x k with orthonormal columns. Canonical phases: the
/// first largest-modulus entry of every frame vector on parties 1..m-1 is
/// real positive and all remaining phase sits on party m, so the
/// coefficients are real positive.
struct SchmidtForm {
  std::vector<double> coefficients;
  std::vector<ComplexMatrix> frames;

  int k() const noexcept { return static_cast<int>(coefficients.size()); }
  Dims dims() const;
  /// The j-th branch e_j^(1) (x) ... (x) e_j^(m).
  MultiState branch(int j) const;
  MultiState assemble() const;
};

/// Largest deviation of any party's Gram matrix from the identity.
double frame_defect(const SchmidtForm& form);
void canonicalize_phases(SchmidtForm& form);
/// Checks the form invariants against a source state within the given bounds.
bool form_matches(const SchmidtForm& form, const MultiState& psi, double reassembly_tol = 1e-8,
                  double frame_tol = 1e-9);

/// Bipartite Schmidt decomposition via SVD; k = numerical rank.
SchmidtForm schmidt_bipartite(const MultiState& psi, double tol = kDefaultRankTol);

enum class SchmidtOutcome { Form, NotSchmidtForm, Indeterminate };

std::string_view to_string(SchmidtOutcome outcome);

struct SchmidtDetection {
  SchmidtOutcome outcome = SchmidtOutcome::Indeterminate;
  std::optional<SchmidtForm> form;
  /// Disqualifying certificate for NotSchmidtForm, diagnostics otherwise.
  std::string reason;
  /// Best overlap |<psi|phi>| reached by the fallback search (1 on the fast path).
  double best_overlap = 0.0;
};

struct MultipartiteSchmidtOptions {
  double tol = 1e-8;
  /// Adjacent-eigenvalue gap below which the party-1 spectrum counts as degenerate.
  double degeneracy_gap = 1e-8;
  /// Fallback search budget.
  int restarts = 32;
  int max_sweeps = 500;
  std::uint64_t seed = 0x5c4d1d7ULL;
  /// Fallback acceptance: overlap >= 1 - accept_gap.
  double accept_gap = 1e-8;
};

/// Detects whether an m >= 3 party state admits the multipartite Schmidt
/// form. NotSchmidtForm is only returned with a certificate (spectra
/// mismatch, or non-product / non-orthonormal conditional vectors under a
/// nondegenerate party-1 spectrum). When the party-1 spectrum is
/// degenerate a seeded alternating search is used and its failure yields
/// Indeterminate.
SchmidtDetection schmidt_form_multipartite(const MultiState& psi,
                                           const MultipartiteSchmidtOptions& options = {});

/// Dispatches to schmidt_bipartite for two parties.
SchmidtDetection detect_schmidt_form(const MultiState& psi,
                                     const MultipartiteSchmidtOptions& options = {});

bool is_suebk_member(const SchmidtForm& form, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Alternating maximization over the Schmidt-form manifold.

struct FrameSearchOptions {
  int max_sweeps = 500;
  /// Lower bound on every coefficient (keeps the search on the exactly-k stratum).
  double lambda_min = 0.0;
  /// A restart stops once its objective improves by less than this per sweep.
  double stall = 1e-15;
  /// All restarts stop once the objective reaches this value.
  double stop_at = 1.0 - 1e-14;
};

struct FrameSearchResult {
  double best_value = 0.0;
  SchmidtForm best_form;
  int restarts_run = 0;
};

/// Maximizes ||Q Q^H phi||^2 over unit Schmidt-form states phi with exactly k
/// branches, where Q (D x c) has orthonormal columns. Restart r draws its
/// start point from rng.derive(r).
FrameSearchResult maximize_projected_schmidt(const ComplexMatrix& q, const Dims& dims, int k,
                                             const SeededRng& rng, int restarts,
                                             const FrameSearchOptions& options = {});

}  // namespace uebk
