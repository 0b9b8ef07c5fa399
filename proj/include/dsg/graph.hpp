#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dsg {

using NodeId = std::uint32_t;

struct WeightedEdge {
  NodeId u = 0;  // u < v
  NodeId v = 0;
  std::uint64_t weight = 1;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
  friend auto operator<=>(const WeightedEdge&, const WeightedEdge&) = default;
};

// Undirected weighted graph in compressed sparse row form. Neighbor lists are
// sorted ascending; each undirected edge appears once in `edges()` (u < v) and
// twice in the adjacency arrays. Immutable once built, so concurrent readers
// are safe.
class Graph {
 public:
  Graph() = default;

  /// Edges may come in any order; self loops are rejected and duplicates are
  /// rejected (PreconditionError).
  Graph(std::size_t node_count, std::vector<WeightedEdge> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u], degree(u)};
  }
  std::span<const std::uint64_t> neighbor_weights(NodeId u) const {
    return {weights_.data() + offsets_[u], degree(u)};
  }

  /// Sorted by (u, v).
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  bool has_edge(NodeId u, NodeId v) const;

  /// Graph on `keep` (ascending node ids), relabeled to 0..keep.size()-1 in
  /// that order.
  Graph induced(std::span<const NodeId> keep) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<std::uint64_t> weights_;
  std::vector<WeightedEdge> edges_;
};

}  // namespace dsg
