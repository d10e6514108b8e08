#pragma once

#include "uebk/numerics.hpp"

#include <span>
#include <vector>

namespace uebk {

using Dims = std::vector<int>;

Eigen::Index total_dimension(std::span<const int> dims);

/// Dense pure state over an ordered list of parties. Amplitudes are stored
/// row-major with party 1 slowest: the flat index of |i1 i2 ... im> is
/// ((i1 * d2 + i2) * d3 + i3) ... .
class MultiState {
 public:
  MultiState(Dims dims, ComplexVector amplitudes);

  /// |i1>|i2>...|im> in the computational basis.
  static MultiState basis_state(Dims dims, std::span<const int> digits);
  /// Tensor product of single-party vectors, in party order.
  static MultiState product(std::span<const ComplexVector> factors);

  const Dims& dims() const noexcept { return dims_; }
  int parties() const noexcept { return static_cast<int>(dims_.size()); }
  Eigen::Index size() const noexcept { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

  double norm() const { return amplitudes_.norm(); }
  MultiState normalized() const;
  /// Global phase chosen so the first largest-modulus amplitude is real positive.
  MultiState phase_normalized() const;
  /// Phase factor c (|c| = 1) such that phase_normalized() == c * (*this).
  Complex canonical_phase() const;

  /// This state tensored with one more party vector.
  MultiState append(const ComplexVector& last) const;

 private:
  Dims dims_;
  ComplexVector amplitudes_;
};

/// Bipartition of the parties {0, ..., m-1} (zero-based) into a nonempty
/// proper subset and its complement; both kept in ascending order.
class Cut {
 public:
  Cut(std::vector<int> left, int parties);

  /// The cut {0} | {1, ..., m-1}.
  static Cut first(int parties) { return Cut({0}, parties); }
  static Cut single(int party, int parties) { return Cut({party}, parties); }

  const std::vector<int>& left() const noexcept { return left_; }
  const std::vector<int>& right() const noexcept { return right_; }
  int parties() const noexcept { return parties_; }

 private:
  std::vector<int> left_;
  std::vector<int> right_;
  int parties_;
};

/// Every nonempty proper subset of parties, up to complement (left side holds party 0).
std::vector<Cut> all_cuts(int parties);

ComplexMatrix matricize(const MultiState& psi, const Cut& cut);
MultiState dematricize(const ComplexMatrix& a, const Dims& dims, const Cut& cut);

/// <phi|psi>, conjugate-linear in the first argument.
Complex inner(const MultiState& phi, const MultiState& psi);

/// Reduced density matrix on `parties` (ascending party indices).
ComplexMatrix reduced_density(const MultiState& psi, std::vector<int> parties);

/// Partial inner product of a full tensor against one vector on every party
/// except `keep`: out(i) = sum conj(v_t(i_t)) * psi(..., i, ...).
ComplexVector contract_except(const ComplexVector& amplitudes, std::span<const int> dims, int keep,
                              std::span<const ComplexVector> vectors);

/// Kronecker product of vectors, first vector slowest.
ComplexVector kron_all(std::span<const ComplexVector> factors);

}  // namespace uebk
