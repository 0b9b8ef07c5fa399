#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsg/trace.hpp"

namespace dsg {

/// Probability mass over degrees (degree -> fraction).
using DegreeLaw = std::map<std::size_t, double>;

/// User-item bipartite network of one window. Users are actors, items are
/// groups; degrees count distinct incidences.
struct BipartiteAffiliation {
  std::size_t actors = 0;      // N, users
  std::size_t groups = 0;      // M, items
  std::size_t incidences = 0;  // distinct (user, item) pairs
  DegreeLaw actor_degrees;     // p_j: users requesting exactly j items
  DegreeLaw group_sizes;       // q_k: items requested by exactly k users
  std::map<std::size_t, std::size_t> actor_degree_counts;
  std::map<std::size_t, std::size_t> group_size_counts;
};

/// Throws EmptyTraceError for an empty trace.
BipartiteAffiliation build_bipartite(const Trace& window_trace);

/// Factorial moments of a degree law, equal to the first three derivatives of
/// its generating function at x = 1.
struct FactorialMoments {
  double first = 0.0;   // sum j p_j
  double second = 0.0;  // sum j (j-1) p_j
  double third = 0.0;   // sum j (j-1) (j-2) p_j
};

FactorialMoments gf_moments(const DegreeLaw& law);

/// Derivatives at 1 of the projection's degree generating function
/// G0(x) = f0(g0'(x) / g0'(1)), where f0 and g0 generate the actor degrees and
/// group sizes.
struct ProjectionDerivatives {
  double first = 0.0;
  double second = 0.0;
};

/// Requires g0'(1) > 0 (PreconditionError otherwise).
ProjectionDerivatives projection_derivatives(const FactorialMoments& actors,
                                             const FactorialMoments& groups);

/// Predicted degree and clustering of the one-mode projection of a random
/// affiliation network with the given size and degree laws.
struct AffiliationPrediction {
  std::optional<double> avg_degree;
  std::optional<double> clustering;  // triangle-based sense
  std::vector<std::string> flags;    // "degenerate_degree", "degenerate_clustering", ...
};

AffiliationPrediction predict(const BipartiteAffiliation& b);

/// Theory next to measurement on the threshold-1 data-sharing graph.
struct AffiliationComparison {
  BipartiteAffiliation bipartite;
  AffiliationPrediction theory;
  std::optional<double> clustering_measured;
  std::size_t sharing_users = 0;  // nodes of the threshold-1 graph
  std::size_t projected_edges = 0;
  std::optional<double> avg_degree_measured;            // 2E / sharing users
  std::optional<double> avg_degree_measured_all_users;  // 2E / N
};

AffiliationComparison compare_affiliation(const Trace& window_trace);

}  // namespace dsg
