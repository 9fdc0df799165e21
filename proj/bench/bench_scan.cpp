#include <benchmark/benchmark.h>
#include <omp.h>

#include <string>

#include "dzeta/config.hpp"
#include "dzeta/zeta.hpp"

using namespace dzeta;

namespace {

const char* const kFixtures[] = {"example1_q5", "example2_q5", "example4_q2", "example4_q3"};

struct Loaded {
  Session s;
  LevelData x;
};

Loaded load(std::size_t k) {
  const std::string path = std::string(DZETA_FIXTURE_DIR) + "/" + kFixtures[k] + ".json";
  Session s = open_session(SessionConfig::load(path));
  LevelData x = build_level_data(s.module, s.divisor);
  return {std::move(s), std::move(x)};
}

void run(benchmark::State& state, bool parallel) {
  const Loaded l = load(static_cast<std::size_t>(state.range(0)));
  if (parallel) omp_set_num_threads(static_cast<int>(state.range(1)));
  ScanOptions o;
  o.cap = 1'000'000;
  std::size_t pairs = 0;
  for (auto _ : state) {
    const Census c = parallel ? scan_graphs(l.x, o) : scan_graphs_reference(l.x, o);
    pairs = c.entries.size();
    benchmark::DoNotOptimize(pairs);
  }
  state.SetLabel(kFixtures[state.range(0)]);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * pairs));
}

void BM_ScanReference(benchmark::State& state) { run(state, false); }
void BM_ScanParallel(benchmark::State& state) { run(state, true); }

}  // namespace

BENCHMARK(BM_ScanReference)->Args({0, 1})->Args({1, 1})->Args({2, 1})->Args({3, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)
    ->ArgsProduct({{0, 1, 2, 3}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
