#include "uebk/states.hpp"

#include "uebk/error.hpp"

#include <algorithm>
#include <numeric>

namespace uebk {

namespace {

std::vector<Eigen::Index> strides_of(std::span<const int> dims) {
  std::vector<Eigen::Index> strides(dims.size(), 1);
  for (int s = static_cast<int>(dims.size()) - 2; s >= 0; --s) {
    strides[s] = strides[s + 1] * dims[s + 1];
  }
  return strides;
}

// Composite-index maps for a cut: flat index -> (row, col).
struct CutIndex {
  std::vector<Eigen::Index> row_of;
  std::vector<Eigen::Index> col_of;
  Eigen::Index rows = 1;
  Eigen::Index cols = 1;
};

CutIndex cut_index(const Dims& dims, const Cut& cut) {
  if (cut.parties() != static_cast<int>(dims.size())) {
    throw Error(ErrorKind::InvalidCut, "cut arity does not match the state");
  }
  const auto strides = strides_of(dims);
  const Eigen::Index total = total_dimension(dims);

  std::vector<Eigen::Index> weight(dims.size(), 0);
  CutIndex out;
  for (auto it = cut.left().rbegin(); it != cut.left().rend(); ++it) {
    weight[*it] = out.rows;
    out.rows *= dims[*it];
  }
  std::vector<Eigen::Index> col_weight(dims.size(), 0);
  for (auto it = cut.right().rbegin(); it != cut.right().rend(); ++it) {
    col_weight[*it] = out.cols;
    out.cols *= dims[*it];
  }
  std::vector<bool> on_left(dims.size(), false);
  for (int p : cut.left()) on_left[p] = true;

  out.row_of.assign(total, 0);
  out.col_of.assign(total, 0);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      Eigen::Index digit = (idx / strides[s]) % dims[s];
      if (on_left[s]) {
        row += digit * weight[s];
      } else {
        col += digit * col_weight[s];
      }
    }
    out.row_of[idx] = row;
    out.col_of[idx] = col;
  }
  return out;
}

}  // namespace

Eigen::Index total_dimension(std::span<const int> dims) {
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  return total;
}

MultiState::MultiState(Dims dims, ComplexVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (dims_.empty()) throw Error(ErrorKind::InvalidInput, "a state needs at least one party");
  for (int d : dims_) {
    if (d < 2) throw Error(ErrorKind::InvalidInput, "party dimensions must be >= 2");
  }
  if (amplitudes_.size() != total_dimension(dims_)) {
    throw Error(ErrorKind::InvalidInput, "amplitude count does not match the product of dimensions");
  }
  if (!all_finite(amplitudes_)) throw Error(ErrorKind::InvalidInput, "non-finite amplitude");
}

MultiState MultiState::basis_state(Dims dims, std::span<const int> digits) {
  if (digits.size() != dims.size()) throw Error(ErrorKind::InvalidInput, "digit count mismatch");
  const auto strides = strides_of(dims);
  Eigen::Index idx = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (digits[s] < 0 || digits[s] >= dims[s]) throw Error(ErrorKind::InvalidInput, "digit out of range");
    idx += digits[s] * strides[s];
  }
  ComplexVector amps = ComplexVector::Zero(total_dimension(dims));
  amps(idx) = 1.0;
  return MultiState(std::move(dims), std::move(amps));
}

MultiState MultiState::product(std::span<const ComplexVector> factors) {
  Dims dims;
  for (const auto& f : factors) dims.push_back(static_cast<int>(f.size()));
  return MultiState(std::move(dims), kron_all(factors));
}

MultiState MultiState::normalized() const {
  double n = norm();
  if (n == 0.0) throw Error(ErrorKind::InvalidInput, "cannot normalize the zero vector");
  return MultiState(dims_, amplitudes_ / n);
}

Complex MultiState::canonical_phase() const {
  double best = amplitudes_.cwiseAbs().maxCoeff();
  if (best == 0.0) return 1.0;
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    if (std::abs(amplitudes_(i)) >= best - 1e-12) {
      return std::conj(amplitudes_(i)) / std::abs(amplitudes_(i));
    }
  }
  return 1.0;
}

MultiState MultiState::phase_normalized() const {
  return MultiState(dims_, amplitudes_ * canonical_phase());
}

MultiState MultiState::append(const ComplexVector& last) const {
  Dims dims = dims_;
  dims.push_back(static_cast<int>(last.size()));
  ComplexVector amps(amplitudes_.size() * last.size());
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    amps.segment(i * last.size(), last.size()) = amplitudes_(i) * last;
  }
  return MultiState(std::move(dims), std::move(amps));
}

Cut::Cut(std::vector<int> left, int parties) : left_(std::move(left)), parties_(parties) {
  std::sort(left_.begin(), left_.end());
  if (parties < 2) throw Error(ErrorKind::InvalidCut, "a cut needs at least two parties");
  if (left_.empty() || static_cast<int>(left_.size()) >= parties) {
    throw Error(ErrorKind::InvalidCut, "left side must be a nonempty proper subset");
  }
  if (std::adjacent_find(left_.begin(), left_.end()) != left_.end()) {
    throw Error(ErrorKind::InvalidCut, "repeated party index");
  }
  if (left_.front() < 0 || left_.back() >= parties) {
    throw Error(ErrorKind::InvalidCut, "party index out of range");
  }
  for (int p = 0; p < parties; ++p) {
    if (!std::binary_search(left_.begin(), left_.end(), p)) right_.push_back(p);
  }
}

std::vector<Cut> all_cuts(int parties) {
  std::vector<Cut> cuts;
  const unsigned full = (1u << parties) - 1u;
  for (unsigned mask = 1; mask < full; ++mask) {
    if (!(mask & 1u)) continue;
    std::vector<int> left;
    for (int p = 0; p < parties; ++p) {
      if (mask & (1u << p)) left.push_back(p);
    }
    cuts.emplace_back(std::move(left), parties);
  }
  return cuts;
}

ComplexMatrix matricize(const MultiState& psi, const Cut& cut) {
  const CutIndex map = cut_index(psi.dims(), cut);
  ComplexMatrix a(map.rows, map.cols);
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
    a(map.row_of[idx], map.col_of[idx]) = psi.amplitudes()(idx);
  }
  return a;
}

MultiState dematricize(const ComplexMatrix& a, const Dims& dims, const Cut& cut) {
  const CutIndex map = cut_index(dims, cut);
  if (a.rows() != map.rows || a.cols() != map.cols) {
    throw Error(ErrorKind::InvalidInput, "matrix shape does not match the cut");
  }
  ComplexVector amps(total_dimension(dims));
  for (Eigen::Index idx = 0; idx < amps.size(); ++idx) {
    amps(idx) = a(map.row_of[idx], map.col_of[idx]);
  }
  return MultiState(dims, std::move(amps));
}

Complex inner(const MultiState& phi, const MultiState& psi) {
  if (phi.dims() != psi.dims()) throw Error(ErrorKind::InvalidInput, "inner product of mismatched dims");
  return phi.amplitudes().dot(psi.amplitudes());
}

ComplexMatrix reduced_density(const MultiState& psi, std::vector<int> parties) {
  Cut cut = [&] {
    try {
      return Cut(std::move(parties), psi.parties());
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidInput, e.what());
    }
  }();
  ComplexMatrix m = matricize(psi, cut);
  return m * m.adjoint();
}

ComplexVector contract_except(const ComplexVector& amplitudes, std::span<const int> dims, int keep,
                              std::span<const ComplexVector> vectors) {
  const auto strides = strides_of(dims);
  const int m = static_cast<int>(dims.size());
  ComplexVector out = ComplexVector::Zero(dims[keep]);
  for (Eigen::Index idx = 0; idx < amplitudes.size(); ++idx) {
    Complex w = amplitudes(idx);
    if (w == Complex(0.0)) continue;
    for (int t = 0; t < m; ++t) {
      if (t == keep) continue;
      w *= std::conj(vectors[t]((idx / strides[t]) % dims[t]));
    }
    out((idx / strides[keep]) % dims[keep]) += w;
  }
  return out;
}

ComplexVector kron_all(std::span<const ComplexVector> factors) {
  ComplexVector acc = ComplexVector::Ones(1);
  for (const auto& f : factors) {
    ComplexVector next(acc.size() * f.size());
    for (Eigen::Index i = 0; i < acc.size(); ++i) next.segment(i * f.size(), f.size()) = acc(i) * f;
    acc = std::move(next);
  }
  return acc;
}

}  // namespace uebk
