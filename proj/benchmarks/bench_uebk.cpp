#include "uebk/basis_io.hpp"
#include "uebk/constructors.hpp"
#include "uebk/lifting.hpp"
#include "uebk/verifier.hpp"

#include <benchmark/benchmark.h>

using namespace uebk;

namespace {

// d x d with k = 2, canonical isometries.
void BM_ConstructBipartite(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(construct_bipartite_uebk(d, d, 2));
  state.SetComplexityN(d * d);
}
BENCHMARK(BM_ConstructBipartite)->DenseRange(3, 9, 2)->Complexity();

void BM_ConstructSeeded(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(construct_bipartite_uebk(k + 2, k + 2, k, CoreVariant::General, seed++));
}
BENCHMARK(BM_ConstructSeeded)->DenseRange(2, 5);

void BM_Certify(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  BasisCandidate b = construct_bipartite_uebk(d, d, 2);
  VerifyOptions o;
  o.mode = VerifyMode::CertificateOnly;
  for (auto _ : state) benchmark::DoNotOptimize(verify(b, o));
}
BENCHMARK(BM_Certify)->DenseRange(3, 9, 2);

void BM_LiftUebk(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  BasisCandidate b = eq14_ueb2_2x3();
  for (auto _ : state) benchmark::DoNotOptimize(lift_uebk(b, d));
}
BENCHMARK(BM_LiftUebk)->DenseRange(2, 6, 2);

void BM_VerifyLiftedCertOnly(benchmark::State& state) {
  BasisCandidate b = lift_uebk(eq14_ueb2_2x3(), static_cast<int>(state.range(0)));
  VerifyOptions o;
  o.mode = VerifyMode::CertificateOnly;
  for (auto _ : state) benchmark::DoNotOptimize(verify(b, o));
}
BENCHMARK(BM_VerifyLiftedCertOnly)->DenseRange(2, 6, 2);

// Bipartite rank-k search over a two-dimensional complement; returns at the first witness.
void BM_RankSearch(benchmark::State& state) {
  BasisCandidate b = construct_bipartite_uebk(2, 2, 2);
  b.members.pop_back();
  b.forms.clear();
  const ComplexMatrix q = complement_matrix(b);
  SearchSettings s;
  s.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_rank_k_in_subspace(q, 2, b.dims, SeededRng(3), s));
}
BENCHMARK(BM_RankSearch)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

// Product-state search on the lifted TILES complement.
void BM_ProductSearchLiftedTiles(benchmark::State& state) {
  BasisCandidate b = lift_upb(tiles_upb_3x3(), 2);
  VerifyOptions o;
  o.mode = VerifyMode::SearchOnly;
  o.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify(b, o));
}
BENCHMARK(BM_ProductSearchLiftedTiles)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SchmidtFormSearch(benchmark::State& state) {
  BasisCandidate b = three_qubit_hs_fixture();
  const ComplexMatrix q = complement_matrix(b);
  SearchSettings s;
  s.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_schmidt_form_in_subspace(q, 2, b.dims, SeededRng(11), s));
}
BENCHMARK(BM_SchmidtFormSearch)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SerializeParse(benchmark::State& state) {
  BasisCandidate b = suebk_tripartite(4, 7, 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(parse(serialize(b)));
}
BENCHMARK(BM_SerializeParse)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
