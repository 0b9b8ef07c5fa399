#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsg/dsg.hpp"
#include "dsg/graph.hpp"

namespace dsg {

/// How average path length is obtained: all sources, or BFS from a seeded
/// uniform sample of ceil(fraction * |V|) distinct sources.
struct PathLengthMode {
  enum class Kind { kExact, kSampled };
  Kind kind = Kind::kExact;
  double fraction = 0.05;
  std::uint64_t seed = 0;

  static PathLengthMode exact() { return {}; }
  static PathLengthMode sampled(double fraction, std::uint64_t seed) {
    return {Kind::kSampled, fraction, seed};
  }
  /// "exact" or "sampled(0.05,seed=7)".
  std::string describe() const;
};

struct ClusteringCounts {
  std::vector<std::uint64_t> triangles_at;  // triangles through each node
  std::uint64_t triangles = 0;
  std::uint64_t triples = 0;  // sum over nodes of C(degree, 2)
};

ClusteringCounts clustering_counts(const Graph& g);

/// Mean over all nodes of edges-among-neighbors / C(k, 2), with nodes of
/// degree < 2 contributing 0. Unset for a graph without nodes.
std::optional<double> clustering_cc1(const Graph& g);
std::optional<double> clustering_cc1(const Graph& g, const ClusteringCounts& counts);

/// 3 * triangles / connected triples. Unset when there are no triples.
std::optional<double> clustering_cc2(const Graph& g);
std::optional<double> clustering_cc2(const ClusteringCounts& counts);

/// Mean BFS hop distance. Throws PreconditionError if g has fewer than two
/// nodes or is disconnected, or if a sampled fraction is outside (0, 1].
double average_path_length(const Graph& g, const PathLengthMode& mode);

/// Source nodes a sampled run would use (ascending).
std::vector<NodeId> sample_sources(std::size_t node_count, const PathLengthMode& mode);

struct RandomBaselines {
  double cc_random = 0.0;
  std::optional<double> l_random;  // unset when |E| <= |V|
};

/// CC_r = 2E / (V (V - 1)) and l_r = ln V / ln(E / V).
/// Throws PreconditionError unless v >= 2 and e >= 1.
RandomBaselines random_baselines(std::size_t v, std::size_t e);

using DegreeDistribution = std::map<std::size_t, std::size_t>;  // degree -> nodes

DegreeDistribution degree_distribution(const Graph& g);

struct ReportOptions {
  bool compute_cc2 = true;
};

/// All small-world quantities for one data-sharing graph. Whole-graph counts
/// come first; everything else is measured on the largest component.
struct MetricsReport {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t component_count = 0;
  std::size_t largest_nodes = 0;
  std::size_t largest_edges = 0;
  std::optional<double> cc1;
  std::optional<double> cc2;
  std::optional<double> avg_path_length;
  std::optional<double> cc_random;
  std::optional<double> l_random;
  std::optional<double> ratio_cc;  // cc1 / CC_r
  std::optional<double> ratio_l;   // l / l_r
  PathLengthMode path_mode;
  std::vector<std::string> flags;

  bool flagged(const std::string& flag) const;
};

MetricsReport small_world_report(const DataSharingGraph& g, const PathLengthMode& path_mode,
                                 const ReportOptions& options = {});

}  // namespace dsg
