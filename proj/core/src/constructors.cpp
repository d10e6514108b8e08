#include "uebk/constructors.hpp"

#include "uebk/error.hpp"
#include "uebk/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace uebk {

namespace {

ComplexVector ket(int dim, int index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

ComplexVector real_vector(std::initializer_list<double> values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

SchmidtForm product_form(std::vector<ComplexVector> factors) {
  SchmidtForm f;
  f.coefficients = {1.0};
  for (auto& v : factors) f.frames.emplace_back(v);
  return f;
}

// Two-branch bipartite form with explicit branch vectors.
SchmidtForm two_branch_form(double l0, const ComplexVector& a0, const ComplexVector& b0, double l1,
                            const ComplexVector& a1, const ComplexVector& b1) {
  SchmidtForm f;
  f.coefficients = {l0, l1};
  ComplexMatrix fa(a0.size(), 2);
  fa << a0, a1;
  ComplexMatrix fb(b0.size(), 2);
  fb << b0, b1;
  f.frames = {fa, fb};
  return f;
}

void add_form_member(BasisCandidate& b, const SchmidtForm& form) {
  b.members.push_back(form.assemble());
  b.forms.emplace_back(form);
}

ZeroPattern transposed(const ZeroPattern& p) {
  ZeroPattern t(p.cols(), p.rows());
  for (auto [i, j] : p.cells()) t.set(j, i);
  return t;
}

Decomposition transposed(const Decomposition& d) {
  Decomposition t;
  t.rows = d.cols;
  t.cols = d.rows;
  t.k = d.k;
  for (const auto& b : d.blocks) t.blocks.push_back(transposed(b));
  t.residual = transposed(d.residual);
  return t;
}

Decomposition core_decomposition(int k, int r, int r_prime, CoreVariant variant) {
  const int rows = k + r;
  const int cols = k + r_prime;
  auto oriented = [&](auto&& build) {
    return rows <= cols ? build(rows, cols) : transposed(build(cols, rows));
  };
  switch (variant) {
    case CoreVariant::General:
      return general_decomposition(k, r, r_prime);
    case CoreVariant::Catalog:
      if (k == 2) {
        if (rows == 3 && cols == 3) {
          throw Error(ErrorKind::InvalidParameters, "the 3x3 core has three catalog variants: v1, v2, v3");
        }
        return oriented([](int, int c) {
          return catalog_k2(c == 2 ? CatalogShape::K2_2x2 : CatalogShape::K2_2x3);
        });
      }
      if (k == 3) return oriented([](int rr, int cc) { return catalog_k3(rr, cc); });
      throw Error(ErrorKind::NotInCatalog, "catalog decompositions exist for k = 2 and k = 3 only");
    case CoreVariant::V1:
    case CoreVariant::V2:
    case CoreVariant::V3: {
      if (k != 2 || rows != 3 || cols != 3) {
        throw Error(ErrorKind::InvalidParameters, "variants v1..v3 need k = 2 and a 3x3 core (d1, d2 odd)");
      }
      const CatalogShape shape = variant == CoreVariant::V1   ? CatalogShape::K2_3x3_V1
                                 : variant == CoreVariant::V2 ? CatalogShape::K2_3x3_V2
                                                              : CatalogShape::K2_3x3_V3;
      return catalog_k2(shape);
    }
  }
  throw Error(ErrorKind::InvalidParameters, "unknown variant");
}

std::string cells_string(const ZeroPattern& p, bool swap) {
  std::ostringstream out;
  bool first = true;
  for (auto [i, j] : p.cells()) {
    if (!first) out << ' ';
    first = false;
    if (swap) std::swap(i, j);
    out << '(' << i << ',' << j << ')';
  }
  return out.str();
}

}  // namespace

std::string_view to_string(CoreVariant v) {
  switch (v) {
    case CoreVariant::General: return "general";
    case CoreVariant::Catalog: return "catalog";
    case CoreVariant::V1: return "v1";
    case CoreVariant::V2: return "v2";
    case CoreVariant::V3: return "v3";
  }
  return "?";
}

CoreVariant parse_core_variant(std::string_view name) {
  for (auto v : {CoreVariant::General, CoreVariant::Catalog, CoreVariant::V1, CoreVariant::V2, CoreVariant::V3}) {
    if (to_string(v) == name) return v;
  }
  throw Error(ErrorKind::InvalidParameters, "unknown variant '" + std::string(name) + "'");
}

BasisCandidate construct_bipartite_uebk(int d1, int d2, int k, CoreVariant variant,
                                        std::optional<std::uint64_t> seed) {
  if (d1 < 2 || d2 < 2) throw Error(ErrorKind::InvalidDimension, "local dimensions must be >= 2");
  if (k < 2 || k > std::min(d1, d2)) {
    std::ostringstream why;
    why << "k = " << k << " outside [2, " << std::min(d1, d2) << "]";
    throw Error(ErrorKind::InvalidK, why.str());
  }
  // Work with a <= b and transpose back at the end.
  const bool swap = d1 > d2;
  const int a = std::min(d1, d2);
  const int b = std::max(d1, d2);
  const int s = a / k;
  const int r = a % k;
  const int sp = b / k;
  const int rp = b % k;

  const Decomposition core = core_decomposition(k, r, rp, variant);
  std::optional<SeededRng> rng;
  if (seed) rng.emplace(*seed);
  auto isometry = [&](int n) {
    return rng ? random_unitary_no_zeros(n, *rng) : canonical_unitary_no_zeros(n);
  };

  std::vector<ComplexMatrix> mats;
  auto embed = [&](const ComplexMatrix& m, int row0, int col0) {
    ComplexMatrix full = ComplexMatrix::Zero(a, b);
    full.block(row0, col0, m.rows(), m.cols()) = m;
    mats.push_back(swap ? ComplexMatrix(full.transpose()) : full);
  };
  if (sp > 1) {
    for (const auto& m : complete_rank_k_basis(a, (sp - 1) * k, k).matrices) embed(m, 0, 0);
  }
  if (s > 1) {
    for (const auto& m : complete_rank_k_basis((s - 1) * k, k + rp, k).matrices) embed(m, 0, (sp - 1) * k);
  }
  for (const auto& block : core.blocks) {
    HSBasis hb = isometry_substitute(block, isometry(block.popcount()));
    for (const auto& m : hb.matrices) embed(m, (s - 1) * k, (sp - 1) * k);
  }

  BasisCandidate out;
  out.dims = {d1, d2};
  out.k = k;
  for (const auto& m : mats) {
    if (numerical_rank(m) != k) throw Error(ErrorKind::RankDefect, "constructed member lost rank k");
    out.members.push_back(dematricize(m, out.dims, Cut::first(2)));
  }
  normalize_member_phases(out);

  ZeroPattern residual(a, b);
  for (auto [i, j] : core.residual.cells()) residual.set((s - 1) * k + i, (sp - 1) * k + j);
  out.provenance["constructor"] = "construct_bipartite_uebk";
  out.provenance["dims"] = std::to_string(d1) + "," + std::to_string(d2);
  out.provenance["k"] = std::to_string(k);
  out.provenance["variant"] = std::string(to_string(variant));
  out.provenance["isometry"] = seed ? "seeded" : "canonical";
  if (seed) out.provenance["seed"] = std::to_string(*seed);
  out.provenance["residual_cells"] = cells_string(residual, swap);
  out.check_invariants();
  return out;
}

BasisCandidate eq6_ueb2_2x2() {
  BasisCandidate b = construct_bipartite_uebk(2, 2, 2);
  b.provenance["constructor"] = "eq6_ueb2_2x2";
  return b;
}

BasisCandidate eq14_ueb2_2x3() {
  const double h = 0.5;
  const double t = std::sqrt(3.0) / 2.0;
  const ComplexVector a0 = ket(2, 0), a1 = ket(2, 1);
  const ComplexVector b0 = ket(3, 0), b1 = ket(3, 1);
  BasisCandidate b;
  b.dims = {2, 3};
  b.k = 2;
  add_form_member(b, two_branch_form(h, a0, b0, t, a1, b1));
  add_form_member(b, two_branch_form(t, a0, b0, h, a1, -b1));
  add_form_member(b, two_branch_form(h, a0, b1, t, a1, b0));
  add_form_member(b, two_branch_form(t, a0, b1, h, a1, -b0));
  normalize_member_phases(b);
  b.provenance["constructor"] = "eq14_ueb2_2x3";
  b.check_invariants();
  return b;
}

BasisCandidate eq9_nonpattern_ueb2() {
  ComplexMatrix a1(2, 2), a2(2, 2), a3(2, 2);
  a1 << 0.5, 2.0, 1.0, 1.0;
  a1 *= 2.0 / 5.0;
  a2 << 1.0, -1.25, 1.0, 1.0;
  a2 *= 4.0 / std::sqrt(73.0);
  a3 << 52.0 / 21.0, 8.0 / 21.0, -1.0, -1.0;
  a3 *= 21.0 / std::sqrt(3650.0);
  BasisCandidate b;
  b.dims = {2, 2};
  b.k = 2;
  for (const auto* a : {&a1, &a2, &a3}) b.members.push_back(dematricize(*a, b.dims, Cut::first(2)));
  normalize_member_phases(b);
  b.provenance["constructor"] = "eq9_nonpattern_ueb2";
  b.check_invariants();
  return b;
}

BasisCandidate tiles_upb_3x3() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const ComplexVector k0 = ket(3, 0), k1 = ket(3, 1), k2 = ket(3, 2);
  const ComplexVector all = (k0 + k1 + k2) / std::sqrt(3.0);
  BasisCandidate b;
  b.dims = {3, 3};
  b.k = 1;
  add_form_member(b, product_form({k0, (k0 - k1) * r2}));
  add_form_member(b, product_form({k2, (k1 - k2) * r2}));
  add_form_member(b, product_form({(k0 - k1) * r2, k2}));
  add_form_member(b, product_form({(k1 - k2) * r2, k0}));
  add_form_member(b, product_form({all, all}));
  normalize_member_phases(b);
  b.provenance["constructor"] = "tiles_upb_3x3";
  b.provenance["certificate"] = "known UPB of 3x3 (TILES)";
  b.check_invariants();
  return b;
}

BasisCandidate pyramid_upb_3x3() {
  const double h = 0.5 * std::sqrt(1.0 + std::sqrt(5.0));
  const double n = 2.0 / std::sqrt(5.0 + std::sqrt(5.0));
  std::vector<ComplexVector> v;
  for (int i = 0; i < 5; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / 5.0;
    v.push_back(n * real_vector({std::cos(angle), std::sin(angle), h}));
  }
  BasisCandidate b;
  b.dims = {3, 3};
  b.k = 1;
  for (int i = 0; i < 5; ++i) add_form_member(b, product_form({v[i], v[(2 * i) % 5]}));
  normalize_member_phases(b);
  b.provenance["constructor"] = "pyramid_upb_3x3";
  b.provenance["certificate"] = "known UPB of 3x3 (Pyramid)";
  b.check_invariants();
  return b;
}

BasisCandidate umeb_2x3() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  std::vector<ComplexMatrix> paulis(4, ComplexMatrix::Zero(2, 2));
  paulis[0] << 1.0, 0.0, 0.0, 1.0;
  paulis[1] << 0.0, 1.0, 1.0, 0.0;
  paulis[2] << 0.0, -i, i, 0.0;
  paulis[3] << 1.0, 0.0, 0.0, -1.0;
  BasisCandidate b;
  b.dims = {2, 3};
  b.k = 2;
  b.claimed_special = true;
  for (const auto& sigma : paulis) {
    ComplexVector e0 = sigma * ket(2, 0);
    ComplexVector e1 = sigma * ket(2, 1);
    add_form_member(b, two_branch_form(r2, e0, ket(3, 0), r2, e1, ket(3, 1)));
  }
  for (auto& f : b.forms) canonicalize_phases(*f);
  normalize_member_phases(b);
  b.provenance["constructor"] = "umeb_2x3";
  b.check_invariants();
  return b;
}

BasisCandidate three_qubit_hs_fixture() {
  // A_1..A_3 fill columns (0,1) of M_2x4, A_4..A_6 columns (2,3), each with
  // the (2/3)J - I pattern of the 2x2 construction.
  const ComplexMatrix u = canonical_unitary_no_zeros(3);
  BasisCandidate b;
  b.dims = {2, 2, 2};
  b.k = 2;
  for (int half = 0; half < 2; ++half) {
    for (int col = 0; col < 3; ++col) {
      ComplexMatrix a = ComplexMatrix::Zero(2, 4);
      a(0, 2 * half) = u(0, col);
      a(1, 2 * half) = u(1, col);
      a(1, 2 * half + 1) = u(2, col);
      b.members.push_back(dematricize(a, b.dims, Cut::first(3)));
    }
  }
  normalize_member_phases(b);
  b.provenance["constructor"] = "three_qubit_hs_fixture";
  b.check_invariants();
  return b;
}

BasisCandidate suebk_tripartite(int d1, int d2, int d3, int k) {
  if (!(1 < k && k < d1 && d1 <= d2)) throw Error(ErrorKind::InvalidParameters, "need 1 < k < d1 <= d2");
  if (d2 % k == 0) throw Error(ErrorKind::InvalidParameters, "need d2 mod k != 0");
  if (d3 < 2 || k > d3) throw Error(ErrorKind::InvalidParameters, "need 2 <= d3 and k <= d3");
  const int t = d2 / k;
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  BasisCandidate b;
  b.dims = {d1, d2, d3};
  b.k = k;
  b.claimed_special = true;
  for (int m = 0; m < d1; ++m) {
    for (int n = 0; n < k; ++n) {
      for (int l = 1; l <= t; ++l) {
        for (int s = 0; s < d3; ++s) {
          SchmidtForm f;
          f.coefficients.assign(k, scale);
          ComplexMatrix f1 = ComplexMatrix::Zero(d1, k);
          ComplexMatrix f2 = ComplexMatrix::Zero(d2, k);
          ComplexMatrix f3 = ComplexMatrix::Zero(d3, k);
          for (int p = 0; p < k; ++p) {
            const double angle = 2.0 * std::numbers::pi * n * p / k;
            f1((p + m) % d1, p) = 1.0;
            f2((l - 1) * k + p, p) = 1.0;
            f3((p + s) % d3, p) = Complex(std::cos(angle), std::sin(angle));
          }
          f.frames = {f1, f2, f3};
          add_form_member(b, f);
        }
      }
    }
  }
  normalize_member_phases(b);
  b.provenance["constructor"] = "suebk_tripartite";
  b.provenance["dims"] = std::to_string(d1) + "," + std::to_string(d2) + "," + std::to_string(d3);
  b.provenance["k"] = std::to_string(k);
  b.check_invariants();
  return b;
}

bool detect_zero_entries_condition(const BasisCandidate& b, double zero_tol) {
  if (b.dims.size() != 2) throw Error(ErrorKind::InvalidArity, "zero entries condition is bipartite");
  b.check_invariants();
  const Eigen::Index cells = b.space_dimension();
  Eigen::Index common = 0;
  for (Eigen::Index c = 0; c < cells; ++c) {
    bool zero = std::all_of(b.members.begin(), b.members.end(),
                            [&](const MultiState& m) { return std::abs(m.amplitudes()(c)) <= zero_tol; });
    if (zero) ++common;
  }
  return common >= cells - b.size();
}

}  // namespace uebk
