// Serial reference kernels against their OpenMP versions on synthetic
// inputs. Run with OMP_NUM_THREADS to pick the parallel width.

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "dsg/dsg.hpp"
#include "dsg/kernels.hpp"
#include "dsg/rng.hpp"
#include "dsg/trace.hpp"

namespace {

using namespace dsg;
using namespace dsg::kernels;

Incidence clustered_incidence(std::size_t groups) {
  const Trace t = generate_clustered_trace({.groups = groups, .users_per_group = 10, .items_per_group = 15,
                                            .requests_per_user = 20, .cross_rate = 0.3, .seed = 1});
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& r : t.requests()) pairs.emplace_back(r.user, r.item);
  return make_incidence(t.users().size(), t.items().size(), std::move(pairs));
}

Graph clustered_graph(std::size_t groups) {
  const Trace t = generate_clustered_trace({.groups = groups, .users_per_group = 10, .items_per_group = 15,
                                            .requests_per_user = 20, .cross_rate = 0.3, .seed = 1});
  return build_dsg(t, 1).graph;
}

void BM_SharedItemEdgesSerial(benchmark::State& state) {
  const auto inc = clustered_incidence(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::shared_item_edges(inc, 1));
}

void BM_SharedItemEdgesOmp(benchmark::State& state) {
  const auto inc = clustered_incidence(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(omp::shared_item_edges(inc, 1));
}

void BM_TrianglesSerial(benchmark::State& state) {
  const Graph g = clustered_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::triangles_per_node(g));
}

void BM_TrianglesOmp(benchmark::State& state) {
  const Graph g = clustered_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(omp::triangles_per_node(g));
}

std::vector<NodeId> all_nodes(const Graph& g) {
  std::vector<NodeId> s(g.node_count());
  std::iota(s.begin(), s.end(), NodeId{0});
  return s;
}

void BM_BfsSerial(benchmark::State& state) {
  const Graph g = clustered_graph(static_cast<std::size_t>(state.range(0)));
  const auto sources = all_nodes(g);
  for (auto _ : state) benchmark::DoNotOptimize(serial::bfs_distance_sums(g, sources));
}

void BM_BfsOmp(benchmark::State& state) {
  const Graph g = clustered_graph(static_cast<std::size_t>(state.range(0)));
  const auto sources = all_nodes(g);
  for (auto _ : state) benchmark::DoNotOptimize(omp::bfs_distance_sums(g, sources));
}

}  // namespace

BENCHMARK(BM_SharedItemEdgesSerial)->Arg(40)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SharedItemEdgesOmp)->Arg(40)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrianglesSerial)->Arg(40)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrianglesOmp)->Arg(40)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BfsSerial)->Arg(40)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BfsOmp)->Arg(40)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
