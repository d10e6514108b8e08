#include "uebk/numerics.hpp"

#include "uebk/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uebk {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Index of the first entry whose modulus is within 1e-12 of the maximum.
Eigen::Index leading_index(const ComplexVector& v) {
  double best = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= best - 1e-12) return i;
  }
  return 0;
}

}  // namespace

SingularTriplet svd(const ComplexMatrix& a) {
  if (a.size() == 0) throw Error(ErrorKind::InvalidInput, "svd of an empty matrix");
  if (!all_finite(a)) throw Error(ErrorKind::InvalidInput, "svd input has non-finite entries");

  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SingularTriplet out{solver.singularValues(), solver.matrixU(), solver.matrixV()};
  // JacobiSVD already sorts nonincreasing; fix phases.
  for (Eigen::Index j = 0; j < out.left_frame.cols(); ++j) {
    ComplexVector u = out.left_frame.col(j);
    Complex lead = u(leading_index(u));
    if (std::abs(lead) == 0.0) continue;
    Complex phase = std::conj(lead) / std::abs(lead);
    out.left_frame.col(j) *= phase;
    out.right_frame.col(j) *= phase;
  }
  return out;
}

int numerical_rank(const ComplexMatrix& a, double tol) {
  if (tol <= 0.0) throw Error(ErrorKind::InvalidInput, "rank tolerance must be positive");
  if (a.size() == 0) return 0;
  if (!all_finite(a)) throw Error(ErrorKind::InvalidInput, "rank input has non-finite entries");
  Eigen::JacobiSVD<ComplexMatrix> solver(a);
  const RealVector& s = solver.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  double cutoff = tol * s(0);
  return static_cast<int>((s.array() > cutoff).count());
}

HermitianEigen hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.size() == 0) {
    throw Error(ErrorKind::InvalidInput, "hermitian_eig needs a nonempty square matrix");
  }
  if (!all_finite(h)) throw Error(ErrorKind::InvalidInput, "hermitian_eig input has non-finite entries");
  double scale = h.norm();
  if ((h - h.adjoint()).norm() > 1e-10 * std::max(scale, 1e-300)) {
    throw Error(ErrorKind::InvalidInput, "matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const Eigen::Index n = h.rows();
  HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    ComplexVector v = solver.eigenvectors().col(n - 1 - i);
    Complex lead = v(leading_index(v));
    if (std::abs(lead) > 0.0) v *= std::conj(lead) / std::abs(lead);
    out.eigenvectors.col(i) = v;
  }
  return out;
}

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) word = splitmix64(x);
}

std::uint64_t SeededRng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double SeededRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double SeededRng::normal() {
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex SeededRng::complex_normal() {
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  double re = normal();
  double im = normal();
  return {re * inv_sqrt2, im * inv_sqrt2};
}

SeededRng SeededRng::derive(std::uint64_t stream) const {
  std::uint64_t x = seed_ ^ 0xd1b54a32d192ed03ULL;
  std::uint64_t a = splitmix64(x);
  std::uint64_t y = stream + 0x8cb92ba72f3d8dd7ULL;
  std::uint64_t b = splitmix64(y);
  return SeededRng(a ^ rotl(b, 17));
}

ComplexMatrix random_complex_gaussian(Eigen::Index rows, Eigen::Index cols, SeededRng& rng) {
  ComplexMatrix m(rows, cols);
  // Fill row-major so the draw order is independent of Eigen's storage order.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

ComplexMatrix random_unitary_no_zeros(int n, SeededRng& rng, int max_attempts) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "unitary size must be >= 1");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    ComplexMatrix g = random_complex_gaussian(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the QR phase ambiguity so the result is Haar distributed.
    for (int j = 0; j < n; ++j) {
      Complex d = r(j, j);
      if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    if (q.cwiseAbs().minCoeff() > kZeroEntryFloor) return q;
  }
  throw Error(ErrorKind::GenerationFailed,
              "no zero-free unitary after " + std::to_string(max_attempts) + " attempts");
}

ComplexMatrix canonical_unitary_no_zeros(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "unitary size must be >= 1");
  if (n == 1) return ComplexMatrix::Ones(1, 1);
  if (n == 2) {
    ComplexMatrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    return h / std::sqrt(2.0);
  }
  return ComplexMatrix::Constant(n, n, Complex(2.0 / n, 0.0)) - ComplexMatrix::Identity(n, n);
}

double unitarity_defect(const ComplexMatrix& a) {
  ComplexMatrix g = a.adjoint() * a - ComplexMatrix::Identity(a.cols(), a.cols());
  return g.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex& z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

}  // namespace uebk
