#include "dsg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dsg/kernels.hpp"
#include "dsg/rng.hpp"

namespace dsg {

std::string PathLengthMode::describe() const {
  if (kind == Kind::kExact) return "exact";
  std::ostringstream out;
  out << "sampled(" << fraction << ",seed=" << seed << ")";
  return out.str();
}

ClusteringCounts clustering_counts(const Graph& g) {
  ClusteringCounts c;
  c.triangles_at = kernels::omp::triangles_per_node(g);
  std::uint64_t corner_sum = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::uint64_t k = g.degree(u);
    if (k >= 2) c.triples += k * (k - 1) / 2;
    corner_sum += c.triangles_at[u];
  }
  c.triangles = corner_sum / 3;
  return c;
}

std::optional<double> clustering_cc1(const Graph& g, const ClusteringCounts& counts) {
  if (g.node_count() == 0) return std::nullopt;
  double sum = 0.0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::uint64_t k = g.degree(u);
    if (k < 2) continue;
    sum += static_cast<double>(counts.triangles_at[u]) / static_cast<double>(k * (k - 1) / 2);
  }
  return sum / static_cast<double>(g.node_count());
}

std::optional<double> clustering_cc1(const Graph& g) {
  return clustering_cc1(g, clustering_counts(g));
}

std::optional<double> clustering_cc2(const ClusteringCounts& counts) {
  if (counts.triples == 0) return std::nullopt;
  return 3.0 * static_cast<double>(counts.triangles) / static_cast<double>(counts.triples);
}

std::optional<double> clustering_cc2(const Graph& g) { return clustering_cc2(clustering_counts(g)); }

std::vector<NodeId> sample_sources(std::size_t node_count, const PathLengthMode& mode) {
  std::vector<NodeId> all(node_count);
  std::iota(all.begin(), all.end(), NodeId{0});
  if (mode.kind == PathLengthMode::Kind::kExact) return all;
  if (!(mode.fraction > 0.0 && mode.fraction <= 1.0)) {
    throw PreconditionError("sample fraction must lie in (0, 1]");
  }
  // The epsilon keeps products like 0.05 * 100 from rounding up to 6.
  auto k = static_cast<std::size_t>(
      std::ceil(mode.fraction * static_cast<double>(node_count) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, node_count);
  Rng rng(mode.seed);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_below(node_count - i));
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

double average_path_length(const Graph& g, const PathLengthMode& mode) {
  const std::size_t n = g.node_count();
  if (n < 2) throw PreconditionError("average path length needs at least two nodes");
  if (find_components(g).count != 1) {
    throw PreconditionError("average path length requires a connected graph");
  }
  const auto sources = sample_sources(n, mode);
  const auto dist = kernels::omp::bfs_distance_sums(g, sources);
  std::uint64_t total = 0;
  for (const auto& d : dist) total += d.distance_sum;
  return static_cast<double>(total) /
         (static_cast<double>(sources.size()) * static_cast<double>(n - 1));
}

RandomBaselines random_baselines(std::size_t v, std::size_t e) {
  if (v < 2 || e < 1) throw PreconditionError("random baselines need |V| >= 2 and |E| >= 1");
  const double vd = static_cast<double>(v);
  const double ed = static_cast<double>(e);
  RandomBaselines b;
  b.cc_random = 2.0 * ed / (vd * (vd - 1.0));
  if (e > v) b.l_random = std::log(vd) / std::log(ed / vd);
  return b;
}

DegreeDistribution degree_distribution(const Graph& g) {
  DegreeDistribution d;
  for (NodeId u = 0; u < g.node_count(); ++u) ++d[g.degree(u)];
  return d;
}

bool MetricsReport::flagged(const std::string& flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

MetricsReport small_world_report(const DataSharingGraph& g, const PathLengthMode& path_mode,
                                 const ReportOptions& options) {
  MetricsReport r;
  r.path_mode = path_mode;
  r.node_count = g.node_count();
  r.edge_count = g.edge_count();
  if (g.empty()) {
    r.flags.push_back("empty");
    return r;
  }
  const ComponentSummary comps = connected_components(g);
  r.component_count = comps.count;
  const Graph& lcc = comps.largest.graph;
  r.largest_nodes = lcc.node_count();
  r.largest_edges = lcc.edge_count();

  const ClusteringCounts counts = clustering_counts(lcc);
  r.cc1 = clustering_cc1(lcc, counts);
  if (options.compute_cc2) {
    r.cc2 = clustering_cc2(counts);
    if (!r.cc2) r.flags.push_back("cc2_undefined");
  } else {
    r.flags.push_back("cc2_skipped");
  }
  r.avg_path_length = average_path_length(lcc, path_mode);

  const RandomBaselines base = random_baselines(r.largest_nodes, r.largest_edges);
  r.cc_random = base.cc_random;
  r.l_random = base.l_random;
  r.ratio_cc = *r.cc1 / base.cc_random;
  if (base.l_random) {
    r.ratio_l = *r.avg_path_length / *base.l_random;
  } else {
    r.flags.push_back("l_r_unstable");
  }
  return r;
}

}  // namespace dsg
