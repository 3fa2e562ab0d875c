#include <benchmark/benchmark.h>

#include "cyclam/formula.hpp"
#include "cyclam/search.hpp"

using namespace cyclam;

namespace {

void BM_prove_shift_lift(benchmark::State& state) {
  const Sequent s = parse_sequent("p -> q^c / (q^c / p)");
  for (auto _ : state) {
    Prover prover(SearchConfig{SystemId::LNeck});
    benchmark::DoNotOptimize(prover.derivable(s));
  }
}
BENCHMARK(BM_prove_shift_lift);

void BM_prove_shift_lift_memoized(benchmark::State& state) {
  const Sequent s = parse_sequent("p -> q^c / (q^c / p)");
  Prover prover(SearchConfig{SystemId::LNeck});
  for (auto _ : state) benchmark::DoNotOptimize(prover.derivable(s));
}
BENCHMARK(BM_prove_shift_lift_memoized);

void BM_refute_rotated_products(benchmark::State& state) {
  const Sequent s = parse_sequent("r, q, p -> ((p^c * q^c) * r^c)^c");
  for (auto _ : state) {
    Prover prover(SearchConfig{SystemId::LNeck});
    benchmark::DoNotOptimize(prover.derivable(s));
  }
}
BENCHMARK(BM_refute_rotated_products);

void BM_enumerate_small_universe(benchmark::State& state) {
  for (auto _ : state) {
    auto v = enumerate_sequents({"p", "q"}, static_cast<int>(state.range(0)),
                                SystemId::LNeck);
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_enumerate_small_universe)->Arg(2)->Arg(3);

void BM_exhaustive_agreement_slice(benchmark::State& state) {
  const auto universe = enumerate_sequents({"p", "q"}, 2, SystemId::L);
  for (auto _ : state) {
    Prover plain(SearchConfig{SystemId::L});
    Prover neck(SearchConfig{SystemId::LNeck});
    int agree = 0;
    for (const auto& s : universe)
      agree += plain.derivable(s) == neck.derivable(s);
    benchmark::DoNotOptimize(agree);
  }
}
BENCHMARK(BM_exhaustive_agreement_slice);

}  // namespace

BENCHMARK_MAIN();
