#include "dsg/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dsg/error.hpp"

namespace dsg {

Graph::Graph(std::size_t node_count, std::vector<WeightedEdge> edges) : edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw PreconditionError("self loop on node " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= node_count) throw PreconditionError("edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw PreconditionError("duplicate edge");
    }
  }

  offsets_.assign(node_count + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] += offsets_[i];
  neighbors_.resize(offsets_.back());
  weights_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so node w first receives every x < w in
  // ascending order, then every y > w in ascending order.
  for (const auto& e : edges_) {
    neighbors_[cursor[e.u]] = e.v;
    weights_[cursor[e.u]++] = e.weight;
    neighbors_[cursor[e.v]] = e.u;
    weights_[cursor[e.v]++] = e.weight;
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto n = neighbors(u);
  return std::binary_search(n.begin(), n.end(), v);
}

Graph Graph::induced(std::span<const NodeId> keep) const {
  constexpr NodeId kAbsent = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> relabel(node_count(), kAbsent);
  for (std::size_t i = 0; i < keep.size(); ++i) relabel[keep[i]] = static_cast<NodeId>(i);
  std::vector<WeightedEdge> sub;
  for (const auto& e : edges_) {
    if (relabel[e.u] != kAbsent && relabel[e.v] != kAbsent) {
      sub.push_back({relabel[e.u], relabel[e.v], e.weight});
    }
  }
  return Graph(keep.size(), std::move(sub));
}

}  // namespace dsg
