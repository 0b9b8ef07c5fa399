#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>

#include "dsg/kernels.hpp"

namespace dsg::kernels {

Incidence make_incidence(std::size_t user_count, std::size_t item_count,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  Incidence inc;
  inc.user_count = user_count;
  inc.item_count = item_count;
  inc.user_offsets.assign(user_count + 1, 0);
  inc.item_offsets.assign(item_count + 1, 0);
  for (auto [u, i] : pairs) {
    ++inc.user_offsets[u + 1];
    ++inc.item_offsets[i + 1];
  }
  for (std::size_t u = 0; u < user_count; ++u) inc.user_offsets[u + 1] += inc.user_offsets[u];
  for (std::size_t i = 0; i < item_count; ++i) inc.item_offsets[i + 1] += inc.item_offsets[i];
  inc.user_items.resize(pairs.size());
  inc.item_users.resize(pairs.size());
  std::vector<std::size_t> ucur(inc.user_offsets.begin(), inc.user_offsets.end() - 1);
  std::vector<std::size_t> icur(inc.item_offsets.begin(), inc.item_offsets.end() - 1);
  // pairs are sorted by (user, item), so both orientations come out sorted.
  for (auto [u, i] : pairs) {
    inc.user_items[ucur[u]++] = i;
    inc.item_users[icur[i]++] = u;
  }
  return inc;
}

namespace serial {

std::vector<WeightedEdge> shared_item_edges(const Incidence& inc, std::uint64_t threshold) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> shared;
  for (std::uint32_t item = 0; item < inc.item_count; ++item) {
    auto users = inc.users_of(item);
    for (std::size_t a = 0; a < users.size(); ++a) {
      for (std::size_t b = a + 1; b < users.size(); ++b) ++shared[{users[a], users[b]}];
    }
  }
  std::vector<WeightedEdge> out;
  for (const auto& [pair, count] : shared) {
    if (count >= threshold) out.push_back({pair.first, pair.second, count});
  }
  return out;
}

std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
  std::vector<std::uint64_t> t(g.node_count(), 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto n = g.neighbors(u);
    for (std::size_t a = 0; a < n.size(); ++a) {
      for (std::size_t b = a + 1; b < n.size(); ++b) {
        if (g.has_edge(n[a], n[b])) ++t[u];
      }
    }
  }
  return t;
}

std::vector<SourceDistances> bfs_distance_sums(const Graph& g, std::span<const NodeId> sources) {
  std::vector<SourceDistances> out;
  out.reserve(sources.size());
  for (NodeId s : sources) {
    std::vector<std::int64_t> dist(g.node_count(), -1);
    std::deque<NodeId> queue{s};
    dist[s] = 0;
    SourceDistances r;
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      ++r.reached;
      r.distance_sum += static_cast<std::uint64_t>(dist[u]);
      for (NodeId v : g.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace serial
}  // namespace dsg::kernels
