#include "dsg/affiliation.hpp"

#include <algorithm>
#include <utility>

#include "dsg/dsg.hpp"
#include "dsg/metrics.hpp"

namespace dsg {
namespace {

DegreeLaw normalize(const std::map<std::size_t, std::size_t>& counts, std::size_t total) {
  DegreeLaw law;
  for (auto [degree, n] : counts) {
    law[degree] = static_cast<double>(n) / static_cast<double>(total);
  }
  return law;
}

}  // namespace

BipartiteAffiliation build_bipartite(const Trace& window_trace) {
  if (window_trace.empty()) throw EmptyTraceError("bipartite network of an empty window");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(window_trace.size());
  for (const Request& r : window_trace.requests()) pairs.emplace_back(r.user, r.item);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::map<std::uint32_t, std::size_t> user_degree;
  std::map<std::uint32_t, std::size_t> item_size;
  for (auto [u, i] : pairs) {
    ++user_degree[u];
    ++item_size[i];
  }

  BipartiteAffiliation b;
  b.actors = user_degree.size();
  b.groups = item_size.size();
  b.incidences = pairs.size();
  for (auto [u, k] : user_degree) ++b.actor_degree_counts[k];
  for (auto [i, k] : item_size) ++b.group_size_counts[k];
  b.actor_degrees = normalize(b.actor_degree_counts, b.actors);
  b.group_sizes = normalize(b.group_size_counts, b.groups);
  return b;
}

FactorialMoments gf_moments(const DegreeLaw& law) {
  FactorialMoments m;
  for (auto [degree, p] : law) {
    const double j = static_cast<double>(degree);
    m.first += j * p;
    m.second += j * (j - 1.0) * p;
    m.third += j * (j - 1.0) * (j - 2.0) * p;
  }
  return m;
}

ProjectionDerivatives projection_derivatives(const FactorialMoments& actors,
                                             const FactorialMoments& groups) {
  if (!(groups.first > 0.0)) throw PreconditionError("g0'(1) must be positive");
  // Chain rule on f0(h(x)) with h = g0'/g0'(1): h(1) = 1,
  // h'(1) = g0''(1)/g0'(1), h''(1) = g0'''(1)/g0'(1).
  const double h1 = groups.second / groups.first;
  const double h2 = groups.third / groups.first;
  return {actors.first * h1, actors.second * h1 * h1 + actors.first * h2};
}

AffiliationPrediction predict(const BipartiteAffiliation& b) {
  AffiliationPrediction out;
  const FactorialMoments f = gf_moments(b.actor_degrees);
  const FactorialMoments g = gf_moments(b.group_sizes);
  if (!(g.first > 0.0) || b.actors == 0) {
    out.flags.push_back("degenerate_degree");
    out.flags.push_back("degenerate_clustering");
    return out;
  }
  const ProjectionDerivatives d = projection_derivatives(f, g);
  out.avg_degree = d.first;
  if (!(d.second > 0.0)) {
    out.flags.push_back("degenerate_clustering");
    return out;
  }
  out.clustering = static_cast<double>(b.groups) / static_cast<double>(b.actors) * g.third / d.second;
  if (*out.clustering > 1.0) out.flags.push_back("clustering_exceeds_one");
  return out;
}

AffiliationComparison compare_affiliation(const Trace& window_trace) {
  AffiliationComparison c;
  c.bipartite = build_bipartite(window_trace);
  c.theory = predict(c.bipartite);
  const DataSharingGraph projection = build_dsg(window_trace, 1);
  c.sharing_users = projection.node_count();
  c.projected_edges = projection.edge_count();
  c.clustering_measured = clustering_cc2(projection.graph);
  const double twice_edges = 2.0 * static_cast<double>(c.projected_edges);
  if (c.sharing_users > 0) {
    c.avg_degree_measured = twice_edges / static_cast<double>(c.sharing_users);
  }
  c.avg_degree_measured_all_users = twice_edges / static_cast<double>(c.bipartite.actors);
  return c;
}

}  // namespace dsg
