#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "snfc/code_builder.hpp"
#include "snfc/cut_lattice.hpp"
#include "snfc/function_table.hpp"
#include "snfc/gf_matrix.hpp"
#include "snfc/network.hpp"
#include "snfc/verifier.hpp"

namespace {

std::string data(const std::string& name) { return std::string(SNFC_BENCH_DATA_DIR) + "/" + name; }

struct Relay {
  snfc::Network net = snfc::read_network_file(data("relay.net"));
  snfc::GfMatrix target = snfc::read_matrix_file(data("relay_target.mat"));
  snfc::GfMatrix upsilon = snfc::read_matrix_file(data("relay_security.mat"));
};

const Relay& relay() {
  static const Relay r;
  return r;
}

void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const snfc::Field f = snfc::Field::parse(std::to_string(state.range(1)));
  std::mt19937_64 rng(1);
  snfc::GfMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<snfc::Elem>(rng() % f.order());
  }
  for (auto _ : state) benchmark::DoNotOptimize(snfc::rank(m));
}
BENCHMARK(BM_Rank)->Args({16, 3})->Args({64, 3})->Args({64, 16})->Args({128, 49});

void BM_PrimaryWiretaps(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(snfc::enumerate_primary_wiretaps(relay().net, level));
}
BENCHMARK(BM_PrimaryWiretaps)->DenseRange(1, 2);

void BM_Algorithm2Relay(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(snfc::algorithm2_bound(relay().net, relay().target, level));
}
BENCHMARK(BM_Algorithm2Relay)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_ConstructRelay(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(snfc::construct_secure_code(relay().net, relay().target, relay().upsilon, 1, 3));
  }
}
BENCHMARK(BM_ConstructRelay)->Unit(benchmark::kMillisecond);

void BM_FullReportRelay(benchmark::State& state) {
  const auto built = snfc::construct_secure_code(relay().net, relay().target, relay().upsilon, 1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(snfc::full_report(built.code, relay().upsilon, 1));
}
BENCHMARK(BM_FullReportRelay)->Unit(benchmark::kMillisecond);

void BM_GeneralBoundButterfly(benchmark::State& state) {
  const snfc::Network net = snfc::read_network_file(data("butterfly.net"));
  const snfc::TabularFunction f = snfc::read_tabular_file(data("butterfly_product.tab"));
  const snfc::TabularFunction zeta = snfc::read_tabular_file(data("butterfly_identity.tab"));
  for (auto _ : state) benchmark::DoNotOptimize(snfc::general_upper_bound(net, f, zeta, 1, 2));
}
BENCHMARK(BM_GeneralBoundButterfly)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
