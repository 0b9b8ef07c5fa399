#pragma once

// Hot loops of the pipeline. Each kernel exists twice with identical
// signatures: `serial` is the straightforward reference, `omp` is the
// OpenMP-parallel version used by the library. Both return bit-identical
// results for any thread count; tests and bench_kernels compare them.

#include <cstdint>
#include <span>
#include <vector>

#include "dsg/graph.hpp"

namespace dsg::kernels {

/// Distinct user-item incidences of one window, in both orientations.
/// Lists are sorted ascending and duplicate free.
struct Incidence {
  std::size_t user_count = 0;
  std::size_t item_count = 0;
  std::vector<std::size_t> user_offsets;  // size user_count + 1
  std::vector<std::uint32_t> user_items;
  std::vector<std::size_t> item_offsets;  // size item_count + 1
  std::vector<std::uint32_t> item_users;

  std::span<const std::uint32_t> items_of(std::uint32_t user) const {
    return {user_items.data() + user_offsets[user], user_offsets[user + 1] - user_offsets[user]};
  }
  std::span<const std::uint32_t> users_of(std::uint32_t item) const {
    return {item_users.data() + item_offsets[item], item_offsets[item + 1] - item_offsets[item]};
  }
};

/// Builds an Incidence from (user, item) pairs with dense ids; duplicates OK.
Incidence make_incidence(std::size_t user_count, std::size_t item_count,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs);

struct SourceDistances {
  std::uint64_t distance_sum = 0;  // hops to every reached node
  std::size_t reached = 0;         // nodes reached, source included

  friend bool operator==(const SourceDistances&, const SourceDistances&) = default;
};

namespace serial {

/// User pairs (u < v) sharing at least `threshold` items, weight = shared
/// item count. Sorted by (u, v).
std::vector<WeightedEdge> shared_item_edges(const Incidence& inc, std::uint64_t threshold);

/// Triangles through each node.
std::vector<std::uint64_t> triangles_per_node(const Graph& g);

/// Unweighted BFS from each source.
std::vector<SourceDistances> bfs_distance_sums(const Graph& g, std::span<const NodeId> sources);

}  // namespace serial

namespace omp {

std::vector<WeightedEdge> shared_item_edges(const Incidence& inc, std::uint64_t threshold);
std::vector<std::uint64_t> triangles_per_node(const Graph& g);
std::vector<SourceDistances> bfs_distance_sums(const Graph& g, std::span<const NodeId> sources);

}  // namespace omp

}  // namespace dsg::kernels
