#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dsg/graph.hpp"
#include "dsg/trace.hpp"

namespace dsg {

/// Users linked when they requested at least `threshold` common distinct items
/// within `window`. Node ids index `node_names`, which is lexicographically
/// sorted; isolated users are not kept.
struct DataSharingGraph {
  std::vector<std::string> node_names;
  Graph graph;
  TimeWindow window;
  std::uint64_t threshold = 1;

  std::size_t node_count() const { return graph.node_count(); }
  std::size_t edge_count() const { return graph.edge_count(); }
  bool empty() const { return graph.edge_count() == 0; }
};

/// Builds the data-sharing graph of `window_trace`. Repeat requests for the
/// same item by one user count once. Throws PreconditionError on threshold < 1.
DataSharingGraph build_dsg(const Trace& window_trace, std::uint64_t threshold,
                           const TimeWindow& window = {});

/// Drops edges below `threshold` (which must be >= g.threshold) and the nodes
/// they isolate. Equivalent to rebuilding at the higher threshold.
DataSharingGraph filter_threshold(const DataSharingGraph& g, std::uint64_t threshold);

/// The graph with an arbitrary subset of nodes (ascending ids) kept.
DataSharingGraph induced_subgraph(const DataSharingGraph& g, std::span<const NodeId> keep);

struct WeightDistribution {
  std::map<std::uint64_t, std::size_t> histogram;  // weight -> edge count
  std::optional<double> median;                    // unset for an empty graph
  std::optional<double> mean;
};

WeightDistribution weight_distribution(const DataSharingGraph& g);

struct Components {
  std::size_t count = 0;
  /// Component index per node, numbered by smallest member node id.
  std::vector<std::size_t> label;
  std::vector<std::size_t> sizes;
  std::size_t largest = 0;  // index into sizes; ties -> smallest first member
};

Components find_components(const Graph& g);

struct ComponentSummary {
  std::size_t count = 0;
  DataSharingGraph largest;
};

/// Counts components and extracts the largest (ties broken by the
/// lexicographically smallest member id).
ComponentSummary connected_components(const DataSharingGraph& g);

/// Edge-list text: a '#'-prefixed JSON header line (window, threshold,
/// node_count, edge_count), then `u,v,weight` lines in (u, v) order.
/// Isolated nodes cannot occur, so nodes are recoverable from the edges.
void write_graph(const DataSharingGraph& g, std::ostream& out);
DataSharingGraph read_graph(std::istream& in);

}  // namespace dsg
