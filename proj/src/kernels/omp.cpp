#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <limits>

#include "dsg/kernels.hpp"

namespace dsg::kernels::omp {

std::vector<WeightedEdge> shared_item_edges(const Incidence& inc, std::uint64_t threshold) {
  const std::size_t n = inc.user_count;
  std::vector<std::vector<WeightedEdge>> per_user(n);

#pragma omp parallel
  {
    // Dense co-occurrence counters, reset through the touched list.
    std::vector<std::uint32_t> count(n, 0);
    std::vector<std::uint32_t> touched;

#pragma omp for schedule(dynamic, 16)
    for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(n); ++ui) {
      const auto u = static_cast<std::uint32_t>(ui);
      for (std::uint32_t item : inc.items_of(u)) {
        auto users = inc.users_of(item);
        auto first = std::upper_bound(users.begin(), users.end(), u);
        for (auto it = first; it != users.end(); ++it) {
          if (count[*it]++ == 0) touched.push_back(*it);
        }
      }
      std::sort(touched.begin(), touched.end());
      auto& edges = per_user[u];
      for (std::uint32_t v : touched) {
        if (count[v] >= threshold) edges.push_back({u, v, count[v]});
        count[v] = 0;
      }
      touched.clear();
    }
  }

  std::size_t total = 0;
  for (const auto& e : per_user) total += e.size();
  std::vector<WeightedEdge> out;
  out.reserve(total);
  for (auto& e : per_user) out.insert(out.end(), e.begin(), e.end());
  return out;
}

std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
  const std::size_t n = g.node_count();
  // Orient each edge from lower to higher (degree, id) rank. Out-lists stay in
  // id order, so they can be intersected by merging.
  auto ranks_below = [&g](NodeId a, NodeId b) {
    const auto da = g.degree(a), db = g.degree(b);
    return da < db || (da == db && a < b);
  };
  std::vector<std::size_t> offsets(n + 1, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) offsets[u + 1] += ranks_below(u, v) ? 1 : 0;
  }
  for (std::size_t u = 0; u < n; ++u) offsets[u + 1] += offsets[u];
  std::vector<NodeId> out(offsets.back());
#pragma omp parallel for schedule(static)
  for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(n); ++ui) {
    const auto u = static_cast<NodeId>(ui);
    auto cursor = offsets[u];
    for (NodeId v : g.neighbors(u)) {
      if (ranks_below(u, v)) out[cursor++] = v;
    }
  }

  std::vector<std::uint64_t> t(n, 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(n); ++ui) {
    const auto u = static_cast<NodeId>(ui);
    const NodeId* ub = out.data() + offsets[u];
    const NodeId* ue = out.data() + offsets[u + 1];
    std::uint64_t at_u = 0;
    for (const NodeId* pv = ub; pv != ue; ++pv) {
      const NodeId v = *pv;
      const NodeId* a = ub;
      const NodeId* b = out.data() + offsets[v];
      const NodeId* be = out.data() + offsets[v + 1];
      while (a != ue && b != be) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++at_u;
#pragma omp atomic
          ++t[v];
#pragma omp atomic
          ++t[*a];
          ++a;
          ++b;
        }
      }
    }
    if (at_u != 0) {
#pragma omp atomic
      t[u] += at_u;
    }
  }
  return t;
}

std::vector<SourceDistances> bfs_distance_sums(const Graph& g, std::span<const NodeId> sources) {
  const std::size_t n = g.node_count();
  std::vector<SourceDistances> result(sources.size());

#pragma omp parallel
  {
    constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(n, kUnseen);
    std::vector<NodeId> frontier;
    frontier.reserve(n);

#pragma omp for schedule(dynamic, 1)
    for (std::int64_t si = 0; si < static_cast<std::int64_t>(sources.size()); ++si) {
      frontier.clear();
      const NodeId s = sources[static_cast<std::size_t>(si)];
      frontier.push_back(s);
      dist[s] = 0;
      std::uint64_t sum = 0;
      // frontier doubles as the FIFO queue: head walks over it.
      for (std::size_t head = 0; head < frontier.size(); ++head) {
        const NodeId u = frontier[head];
        sum += dist[u];
        for (NodeId v : g.neighbors(u)) {
          if (dist[v] == kUnseen) {
            dist[v] = dist[u] + 1;
            frontier.push_back(v);
          }
        }
      }
      result[static_cast<std::size_t>(si)] = {sum, frontier.size()};
      for (NodeId v : frontier) dist[v] = kUnseen;
    }
  }
  return result;
}

}  // namespace dsg::kernels::omp
