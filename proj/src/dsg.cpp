#include "dsg/dsg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "dsg/kernels.hpp"

namespace dsg {
namespace {

constexpr NodeId kAbsent = std::numeric_limits<NodeId>::max();

// Relabels `edges` (over `names`) onto the non-isolated nodes only.
DataSharingGraph compact(const std::vector<std::string>& names, std::vector<WeightedEdge> edges,
                         const TimeWindow& window, std::uint64_t threshold) {
  std::vector<NodeId> relabel(names.size(), kAbsent);
  for (const auto& e : edges) {
    relabel[e.u] = 0;
    relabel[e.v] = 0;
  }
  DataSharingGraph out;
  out.window = window;
  out.threshold = threshold;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (relabel[i] == kAbsent) continue;
    relabel[i] = static_cast<NodeId>(out.node_names.size());
    out.node_names.push_back(names[i]);
  }
  for (auto& e : edges) {
    e.u = relabel[e.u];
    e.v = relabel[e.v];
  }
  out.graph = Graph(out.node_names.size(), std::move(edges));
  return out;
}

}  // namespace

DataSharingGraph build_dsg(const Trace& window_trace, std::uint64_t threshold,
                           const TimeWindow& window) {
  if (threshold < 1) throw PreconditionError("threshold must be >= 1");

  // Local user ids follow lexicographic name order, so ordering by id is
  // ordering by name everywhere downstream.
  std::vector<std::uint32_t> users;
  users.reserve(window_trace.size());
  for (const Request& r : window_trace.requests()) users.push_back(r.user);
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  const IdTable& table = window_trace.users();
  std::sort(users.begin(), users.end(),
            [&table](std::uint32_t a, std::uint32_t b) { return table.name(a) < table.name(b); });

  std::vector<std::uint32_t> local_user(table.size(), kAbsent);
  std::vector<std::string> names;
  names.reserve(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    local_user[users[i]] = static_cast<std::uint32_t>(i);
    names.push_back(table.name(users[i]));
  }

  std::vector<std::uint32_t> local_item(window_trace.items().size(), kAbsent);
  std::uint32_t item_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(window_trace.size());
  for (const Request& r : window_trace.requests()) {
    if (local_item[r.item] == kAbsent) local_item[r.item] = item_count++;
    pairs.emplace_back(local_user[r.user], local_item[r.item]);
  }

  const auto inc = kernels::make_incidence(names.size(), item_count, std::move(pairs));
  auto edges = kernels::omp::shared_item_edges(inc, threshold);
  return compact(names, std::move(edges), window, threshold);
}

DataSharingGraph filter_threshold(const DataSharingGraph& g, std::uint64_t threshold) {
  if (threshold < g.threshold) {
    throw PreconditionError("cannot lower a graph's threshold by filtering");
  }
  std::vector<WeightedEdge> kept;
  for (const auto& e : g.graph.edges()) {
    if (e.weight >= threshold) kept.push_back(e);
  }
  return compact(g.node_names, std::move(kept), g.window, threshold);
}

DataSharingGraph induced_subgraph(const DataSharingGraph& g, std::span<const NodeId> keep) {
  DataSharingGraph out;
  out.window = g.window;
  out.threshold = g.threshold;
  out.node_names.reserve(keep.size());
  for (NodeId u : keep) out.node_names.push_back(g.node_names[u]);
  out.graph = g.graph.induced(keep);
  return out;
}

WeightDistribution weight_distribution(const DataSharingGraph& g) {
  WeightDistribution d;
  const auto& edges = g.graph.edges();
  if (edges.empty()) return d;
  std::vector<std::uint64_t> w;
  w.reserve(edges.size());
  for (const auto& e : edges) {
    ++d.histogram[e.weight];
    w.push_back(e.weight);
  }
  std::sort(w.begin(), w.end());
  const std::size_t n = w.size();
  d.median = n % 2 == 1 ? static_cast<double>(w[n / 2])
                        : (static_cast<double>(w[n / 2 - 1]) + static_cast<double>(w[n / 2])) / 2.0;
  // Integer sum first: exact for any realistic edge count.
  const std::uint64_t total = std::accumulate(w.begin(), w.end(), std::uint64_t{0});
  d.mean = static_cast<double>(total) / static_cast<double>(n);
  return d;
}

Components find_components(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  Components c;
  c.label.assign(n, kUnset);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (c.label[s] != kUnset) continue;
    const std::size_t id = c.sizes.size();
    c.sizes.push_back(0);
    c.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      ++c.sizes[id];
      for (NodeId v : g.neighbors(u)) {
        if (c.label[v] == kUnset) {
          c.label[v] = id;
          stack.push_back(v);
        }
      }
    }
  }
  c.count = c.sizes.size();
  for (std::size_t i = 1; i < c.sizes.size(); ++i) {
    if (c.sizes[i] > c.sizes[c.largest]) c.largest = i;
  }
  return c;
}

ComponentSummary connected_components(const DataSharingGraph& g) {
  ComponentSummary out;
  const Components c = find_components(g.graph);
  out.count = c.count;
  if (c.count == 0) {
    out.largest.window = g.window;
    out.largest.threshold = g.threshold;
    return out;
  }
  std::vector<NodeId> keep;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (c.label[u] == c.largest) keep.push_back(u);
  }
  out.largest = induced_subgraph(g, keep);
  return out;
}

void write_graph(const DataSharingGraph& g, std::ostream& out) {
  nlohmann::ordered_json header = {
      {"format", "dsg.edgelist/1"},
      {"window", {{"start", g.window.start}, {"end", g.window.end}}},
      {"threshold", g.threshold},
      {"node_count", g.node_count()},
      {"edge_count", g.edge_count()},
  };
  out << "# " << header.dump() << '\n';
  for (const auto& e : g.graph.edges()) {
    out << g.node_names[e.u] << ',' << g.node_names[e.v] << ',' << e.weight << '\n';
  }
}

DataSharingGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw ParseError("missing edge-list header", {{1, "expected '# {json}' header"}});
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line.substr(2));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad edge-list header", {{1, e.what()}});
  }

  struct Raw {
    std::string u, v;
    std::uint64_t w;
  };
  std::vector<Raw> raw;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw ParseError("bad edge line", {{line_no, "expected u,v,weight"}});
    }
    try {
      raw.push_back({line.substr(0, c1), line.substr(c1 + 1, c2 - c1 - 1),
                     std::stoull(line.substr(c2 + 1))});
    } catch (const std::exception&) {
      throw ParseError("bad edge weight", {{line_no, "weight is not an integer"}});
    }
  }

  DataSharingGraph g;
  g.window = {header.at("window").at("start").get<Timestamp>(),
              header.at("window").at("end").get<Timestamp>()};
  g.threshold = header.at("threshold").get<std::uint64_t>();
  for (const auto& r : raw) {
    g.node_names.push_back(r.u);
    g.node_names.push_back(r.v);
  }
  std::sort(g.node_names.begin(), g.node_names.end());
  g.node_names.erase(std::unique(g.node_names.begin(), g.node_names.end()), g.node_names.end());
  auto index = [&g](const std::string& name) {
    return static_cast<NodeId>(
        std::lower_bound(g.node_names.begin(), g.node_names.end(), name) - g.node_names.begin());
  };
  std::vector<WeightedEdge> edges;
  edges.reserve(raw.size());
  for (const auto& r : raw) edges.push_back({index(r.u), index(r.v), r.w});
  g.graph = Graph(g.node_names.size(), std::move(edges));
  if (g.node_count() != header.at("node_count").get<std::size_t>()) {
    throw ParseError("node count mismatch", {{1, "header node_count disagrees with edges"}});
  }
  return g;
}

}  // namespace dsg
