#pragma once

#include "uebk/basis.hpp"
#include "uebk/verifier.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace uebk {

inline constexpr int kBasisFormatVersion = 1;

/// The verification fields embedded in a basis file.
struct VerificationSummary {
  double orthonormality_residual = 0.0;
  bool members_ok = false;
  std::string verdict;
  std::string certificate;
  double best_objective = 0.0;
  int restarts = 0;
  std::uint64_t seed = 0;
  int exit_code = 0;

  static VerificationSummary from(const VerificationReport& report);
  friend bool operator==(const VerificationSummary&, const VerificationSummary&) = default;
};

struct ParsedBasis {
  BasisCandidate basis;
  std::optional<VerificationSummary> verification;
};

/// JSON text with fixed key order; doubles use the shortest representation
/// that round-trips exactly. Stored Schmidt forms go under "schmidt_forms".
std::string serialize(const BasisCandidate& b, const std::optional<VerificationSummary>& verification = std::nullopt);

/// Throws ParseError (malformed text or structure, with position where known)
/// or InvalidBasisFile (well-formed but violating the basis invariants).
ParsedBasis parse(std::string_view text);

}  // namespace uebk
