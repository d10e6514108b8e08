#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace uebk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr double kZeroEntryFloor = 1e-6;

/// Thin SVD with singular values sorted nonincreasing.
///
/// Phase convention: each left singular vector is rotated so that its
/// first largest-modulus entry is real and positive; the matching right
/// singular vector absorbs the conjugate phase, so U diag(s) V^H is unchanged.
struct SingularTriplet {
  RealVector singular_values;
  ComplexMatrix left_frame;
  ComplexMatrix right_frame;
};

SingularTriplet svd(const ComplexMatrix& a);

/// Number of singular values strictly above tol * sigma_max (0 for the zero matrix).
int numerical_rank(const ComplexMatrix& a, double tol = kDefaultRankTol);

struct HermitianEigen {
  RealVector eigenvalues;     // nonincreasing
  ComplexMatrix eigenvectors; // columns, orthonormal
};

HermitianEigen hermitian_eig(const ComplexMatrix& h);

/// xoshiro256** seeded through splitmix64. The stream depends only on the
/// seed, and normal deviates use a fixed Box-Muller transform, so draws are
/// identical across platforms and standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed = 0);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  double normal();
  /// Standard complex Gaussian (real and imaginary parts each N(0, 1/2)).
  Complex complex_normal();

  /// Independent generator for sub-task `stream`, derived from the
  /// construction seed only (not from how much of this stream was consumed).
  SeededRng derive(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

ComplexMatrix random_complex_gaussian(Eigen::Index rows, Eigen::Index cols, SeededRng& rng);

/// Haar-distributed n x n unitary whose entries all exceed kZeroEntryFloor
/// in modulus. Throws GenerationFailed after max_attempts rejections.
ComplexMatrix random_unitary_no_zeros(int n, SeededRng& rng, int max_attempts = 1000);

/// Real orthogonal matrix without zero entries: (2/n)J - I for n >= 3,
/// the normalized Hadamard matrix for n = 2 and [1] for n = 1.
ComplexMatrix canonical_unitary_no_zeros(int n);

/// Max-modulus entry of A^H A - I.
double unitarity_defect(const ComplexMatrix& a);

bool all_finite(const ComplexMatrix& a);

}  // namespace uebk
