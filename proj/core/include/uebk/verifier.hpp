#pragma once

#include "uebk/basis.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uebk {

enum class VerifyMode { CertificateOnly, CertificateThenSearch, SearchOnly };
std::string_view to_string(VerifyMode mode);
/// Accepts "cert", "cert+search", "search". Throws InvalidParameters.
VerifyMode parse_verify_mode(std::string_view name);

enum class VerdictKind {
  Certified,     ///< a sound sufficient condition holds
  Falsified,     ///< an explicit complement state of Schmidt number k exists
  SearchPassed,  ///< heuristic evidence only: the search found no witness
  Inconclusive,  ///< no certificate and no search was run
  Indeterminate,
};
std::string_view to_string(VerdictKind kind);

struct UnextendibilityVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  int k = 0;
  std::string certificate;
  std::optional<MultiState> witness;
  /// Bipartite search: min f. Multipartite search: max ||P phi||^2.
  double best_objective = 0.0;
  int restarts = 0;
  std::uint64_t seed = 0;
};

struct MemberResult {
  SchmidtOutcome outcome = SchmidtOutcome::Indeterminate;
  /// Detected number of branches, -1 when no form was found.
  int schmidt_number = -1;
  std::vector<double> coefficients;
  bool matches_k = false;
  bool suebk = false;
  std::string reason;
};

struct Prop2Check {
  /// Set when one complement-rank bound covers every k' >= k.
  std::optional<std::string> certificate;
  std::vector<UnextendibilityVerdict> per_k;
};

struct VerificationReport {
  double orthonormality_residual = 0.0;
  bool orthonormal = false;
  std::vector<MemberResult> members;
  UnextendibilityVerdict unextendibility;
  std::optional<bool> suebk_check;
  std::optional<Prop2Check> prop2;

  bool members_ok() const;
  /// 0 when every check passes, 2 on any failed check, 3 when nothing
  /// failed but some outcome is indeterminate or inconclusive.
  int exit_code() const;
};

struct VerifyOptions {
  VerifyMode mode = VerifyMode::CertificateThenSearch;
  std::uint64_t seed = 1;
  /// 0 picks the default: 100 bipartite, 200 multipartite.
  int restarts = 0;
  int max_iterations = 500;
  double tol = 1e-8;
  double orthonormality_tol = 1e-10;
  bool prop2 = false;
};

/// Max-entry deviation of the Gram matrix from the identity.
double verify_orthonormal(const BasisCandidate& b);

/// Orthonormal basis (columns) of the orthogonal complement of the members,
/// by pivoted Gram-Schmidt on the residual projector with tolerance 1e-10.
ComplexMatrix complement_matrix(const BasisCandidate& b);
std::vector<MultiState> complement_basis(const BasisCandidate& b);

/// Certified when the complement's generic matricization rank is below k at
/// the 1|2 cut (bipartite) or at some cut, single parties first (multipartite).
/// Otherwise Inconclusive.
UnextendibilityVerdict certify_unextendible(const Dims& dims, int k, const ComplexMatrix& complement,
                                            const SeededRng& rng);
UnextendibilityVerdict certify_unextendible(const BasisCandidate& b, const SeededRng& rng);

struct SearchSettings {
  int restarts = 100;
  int max_iterations = 500;
  double tol = 1e-8;
  /// Floor on sigma_k (bipartite) or on every lambda (multipartite).
  double floor = 1e-3;
};

/// Minimizes sum_{j>k} sigma_j^2 + max(0, floor - sigma_k)^2 over unit
/// elements of span(complement) seen as d1 x d2 matrices. Falsified when the
/// minimum drops below tol with sigma_k >= floor, SearchPassed otherwise.
UnextendibilityVerdict search_rank_k_in_subspace(const ComplexMatrix& complement, int k, const Dims& dims,
                                                 const SeededRng& rng, const SearchSettings& settings = {});

/// Maximizes ||P phi||^2 over unit Schmidt-form states with exactly k
/// branches (every lambda >= floor). Falsified when it exceeds 1 - tol.
UnextendibilityVerdict search_schmidt_form_in_subspace(const ComplexMatrix& complement, int k, const Dims& dims,
                                                       const SeededRng& rng, const SearchSettings& settings = {});

/// Whether the complement also excludes every Schmidt number k' >= k.
Prop2Check check_prop2(const BasisCandidate& b, const SeededRng& rng, const SearchSettings& settings = {});

VerificationReport verify(const BasisCandidate& b, const VerifyOptions& options = {});

/// Human-readable multi-line summary.
std::string format_report(const BasisCandidate& b, const VerificationReport& report);

}  // namespace uebk
