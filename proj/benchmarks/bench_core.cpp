#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "rmexit/channel.hpp"
#include "rmexit/codes.hpp"
#include "rmexit/exit.hpp"
#include "rmexit/gf2.hpp"
#include "rmexit/rng.hpp"

namespace {

using namespace rmexit;

void BM_hadamard_power(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hadamard_power(n));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_hadamard_power)->Arg(6)->Arg(8)->Arg(10);

void BM_row_reduce(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  BitMatrix m(n, n);
  const RngStream rs{7, 0};
  for (std::size_t r = 0; r < n; ++r) {
    const std::uint64_t key = rs.trial_key(r);
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, uniform_at(key, c) < 0.5);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(row_reduce(m));
  }
}
BENCHMARK(BM_row_reduce)->Arg(64)->Arg(128)->Arg(256);

// One decoder query at the threshold midpoint: build the span of non-erased
// generator columns, ask whether the focus column escapes it.  This is the
// inner loop of every Monte Carlo curve point.
void BM_failure_set_query(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const LinearCode code = rm_code(n, (n - 1) / 2);
  const std::size_t L = code.length - 1;
  const RngStream rs{11, 0};
  Gf2Span span(code.dim);
  std::uint64_t trial = 0, failures = 0;
  for (auto _ : state) {
    const std::uint64_t key = rs.trial_key(trial++);
    BitVector reduced(L);
    for (std::size_t k = 0; k < L; ++k)
      if (uniform_at(key, k) < 0.5) reduced.set(k, true);
    failures += in_failure_set(code, 0, reduced, span);
  }
  benchmark::DoNotOptimize(failures);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_failure_set_query)->Arg(5)->Arg(7)->Arg(9);

void BM_full_decode(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const LinearCode code = rm_code(n, (n - 1) / 2);
  const RngStream rs{13, 0};
  std::uint64_t trial = 0;
  for (auto _ : state) {
    const ErasurePattern pattern = sample_erasures(code.length, 0.5, rs, trial++);
    benchmark::DoNotOptimize(bit_map_decode(code, pattern));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_full_decode)->Arg(4)->Arg(5)->Arg(6);

void BM_exact_average_profile(benchmark::State& state) {
  const LinearCode code = rm_code(4, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exit_average_exact(code));
  }
}
BENCHMARK(BM_exact_average_profile);

void BM_mc_curve_point(benchmark::State& state) {
  const LinearCode code = rm_code(5, 2);
  MonteCarloOptions opts;
  opts.trials = static_cast<std::uint64_t>(state.range(0));
  opts.seed = 17;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exit_monte_carlo(code, std::nullopt, {0.45}, opts));
  }
  state.SetItemsProcessed(state.iterations() * opts.trials);
}
BENCHMARK(BM_mc_curve_point)->Arg(1000)->Arg(10000);

void BM_codeword_enumeration(benchmark::State& state) {
  const LinearCode code = rm_code(4, 2);
  for (auto _ : state) {
    std::size_t parity = 0;
    enumerate_codewords(code, [&](const BitVector& w) { parity ^= w.weight(); });
    benchmark::DoNotOptimize(parity);
  }
}
BENCHMARK(BM_codeword_enumeration);

}  // namespace

BENCHMARK_MAIN();
