// Microbenchmarks for the exact-arithmetic hot paths: both bracket
// formulations, lattice membership, and the cocycle reduction.

#include <benchmark/benchmark.h>

#include "hamlie/algebra.hpp"
#include "hamlie/cohomology.hpp"
#include "hamlie/sampling.hpp"

using namespace hamlie;

namespace {

AlgebraPtr graded_fixture() {
  Shape s = Shape::build({1, 0, 0, 0, 0, 0, 0});
  return Algebra::make(
      Lattice::build(s, Field::rational(), {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}));
}

AlgebraPtr mixed_fixture() {
  Shape s = Shape::build({1, 1, 0, 1, 1, 1, 1});
  std::vector<GroupVector> basis;
  for (int p = 1; p <= s.dim(); ++p)
    if (s.gamma_allowed(p)) basis.push_back(s.epsilon(p));
  return Algebra::make(Lattice::build(s, Field::rational(), basis));
}

std::vector<std::pair<Element, Element>> sample_pairs(const AlgebraPtr& alg, std::size_t n) {
  std::vector<std::pair<Element, Element>> pairs;
  SampleOptions opt;
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng = Rng::for_sample(42, k);
    pairs.emplace_back(sample_element(alg, rng, opt), sample_element(alg, rng, opt));
  }
  return pairs;
}

void BM_BracketStructural(benchmark::State& state) {
  auto alg = state.range(0) == 0 ? graded_fixture() : mixed_fixture();
  auto pairs = sample_pairs(alg, 64);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [u, v] = pairs[k++ % pairs.size()];
    benchmark::DoNotOptimize(bracket_structural(u, v));
  }
}
BENCHMARK(BM_BracketStructural)->Arg(0)->Arg(1);

void BM_BracketDefining(benchmark::State& state) {
  auto alg = state.range(0) == 0 ? graded_fixture() : mixed_fixture();
  auto pairs = sample_pairs(alg, 64);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [u, v] = pairs[k++ % pairs.size()];
    benchmark::DoNotOptimize(bracket_defining(u, v));
  }
}
BENCHMARK(BM_BracketDefining)->Arg(0)->Arg(1);

void BM_LatticeMembership(benchmark::State& state) {
  auto alg = mixed_fixture();
  const Lattice& L = alg->lattice();
  std::vector<GroupVector> probes;
  SampleOptions opt;
  for (std::size_t k = 0; k < 128; ++k) {
    Rng rng = Rng::for_sample(7, k);
    probes.push_back(sample_key(*alg, rng, opt).alpha);
  }
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(L.contains(probes[k++ % probes.size()]));
  }
}
BENCHMARK(BM_LatticeMembership);

void BM_ReduceCocycle(benchmark::State& state) {
  Shape s = Shape::build({0, 0, 0, 1, 0, 0, 0});
  auto alg = Algebra::make(
      Lattice::build(s, Field::rational(), {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}));
  auto box = enumerate_box(*alg, 1, 3);
  Rng rng(11);
  LinearFunctional g;
  SampleOptions opt;
  for (int k = 0; k < 6; ++k)
    g.values[sample_key(*alg, rng, opt)] = sample_scalar(alg->field(), rng, true);
  Cocycle psi = Cocycle::coboundary(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce_cocycle(alg, psi, box, 1));
  }
}
BENCHMARK(BM_ReduceCocycle);

} // namespace

BENCHMARK_MAIN();
