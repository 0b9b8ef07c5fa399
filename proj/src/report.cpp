#include "dsg/report.hpp"

#include <charconv>
#include <sstream>

namespace dsg::report {
namespace {

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

template <typename... Cells>
std::string csv(const Cells&... cells) {
  std::ostringstream out;
  bool first = true;
  ((out << (first ? "" : ",") << cells, first = false), ...);
  out << '\n';
  return out.str();
}

nlohmann::ordered_json optional_json(std::optional<double> v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

std::string format_number(std::optional<double> value) {
  if (!value) return {};
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), *value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string schema_line(std::string_view schema) {
  return "# schema: " + std::string(schema) + "\n";
}

std::string table1_header() { return "users,requests_all,requests_distinct,duration_s\n"; }

std::string table1_row(const TraceSummary& s) {
  return csv(s.user_count, s.request_count_all, s.request_count_distinct, s.duration);
}

std::string table2_header() {
  return "system,interval_s,threshold,nodes,edges,components,lcc_nodes,lcc_edges,"
         "cc1,cc2,l,cc_r,l_r,ratio_cc,ratio_l,path_method,window_index,window_start,flags\n";
}

std::string table2_row(const CellKey& key, const MetricsReport& r) {
  return csv(key.system, key.interval, key.threshold, r.node_count, r.edge_count,
             r.component_count, r.largest_nodes, r.largest_edges, format_number(r.cc1),
             format_number(r.cc2), format_number(r.avg_path_length), format_number(r.cc_random),
             format_number(r.l_random), format_number(r.ratio_cc), format_number(r.ratio_l),
             r.path_mode.describe(), key.window_index, key.window_start, join_flags(r.flags));
}

std::string table2_failed_row(const CellKey& key, std::string_view reason) {
  return csv(key.system, key.interval, key.threshold, "", "", "", "", "", "", "", "", "", "", "",
             "", "", key.window_index, key.window_start, "failed:" + std::string(reason));
}

nlohmann::ordered_json metrics_json(const MetricsReport& r) {
  return {
      {"nodes", r.node_count},
      {"edges", r.edge_count},
      {"components", r.component_count},
      {"largest_component", {{"nodes", r.largest_nodes}, {"edges", r.largest_edges}}},
      {"cc1", optional_json(r.cc1)},
      {"cc2", optional_json(r.cc2)},
      {"avg_path_length", optional_json(r.avg_path_length)},
      {"cc_random", optional_json(r.cc_random)},
      {"l_random", optional_json(r.l_random)},
      {"ratio_cc", optional_json(r.ratio_cc)},
      {"ratio_l", optional_json(r.ratio_l)},
      {"path_method", r.path_mode.describe()},
      {"flags", r.flags},
  };
}

std::string scatter_header() { return "system,interval_s,threshold,window_index,x_ratio_cc,y_ratio_l\n"; }

std::string scatter_row(const CellKey& key, const MetricsReport& r) {
  return csv(key.system, key.interval, key.threshold, key.window_index, format_number(r.ratio_cc),
             format_number(r.ratio_l));
}

std::string table3_header() {
  return "system,interval_s,users,files,cc_theory,cc_measured,degree_theory,degree_measured,"
         "window_index,window_start,sharing_users,degree_measured_all_users,flags\n";
}

std::string table3_row(const std::string& system, Seconds interval, std::size_t window_index,
                       Timestamp window_start, const AffiliationComparison& c) {
  std::vector<std::string> flags = c.theory.flags;
  if (!c.clustering_measured) flags.push_back("cc_measured_undefined");
  return csv(system, interval, c.bipartite.actors, c.bipartite.groups,
             format_number(c.theory.clustering), format_number(c.clustering_measured),
             format_number(c.theory.avg_degree), format_number(c.avg_degree_measured), window_index,
             window_start, c.sharing_users, format_number(c.avg_degree_measured_all_users),
             join_flags(flags));
}

std::string table3_failed_row(const std::string& system, Seconds interval,
                              std::size_t window_index, Timestamp window_start,
                              std::string_view reason) {
  return csv(system, interval, "", "", "", "", "", "", window_index, window_start, "", "",
             std::string(reason));
}

std::string nullmodel_header() {
  std::string t2 = table2_header();
  t2.pop_back();
  return "source,replicate,seed," + t2 + ",weight_median,weight_mean\n";
}

std::string nullmodel_row(const CellKey& key, const NullModelRow& row) {
  std::string t2 = table2_row(key, row.metrics);
  t2.pop_back();
  return csv(row.source, row.replicate, row.seed, t2, format_number(row.weights.median),
             format_number(row.weights.mean));
}

std::string nullmodel_ratio_header() {
  return "source,replicates,defined,ratio_cc_mean,ratio_cc_sd,ratio_l_mean,ratio_l_sd,nodes_mean,"
         "components_mean,weight_median_mean,real_over_source_ratio_cc,real_over_source_ratio_l\n";
}

std::string nullmodel_ratio_row(const SourceAggregate& a, const SourceAggregate& real) {
  std::optional<double> cc, l;
  if (a.defined > 0 && real.defined > 0 && a.ratio_cc_mean > 0) cc = real.ratio_cc_mean / a.ratio_cc_mean;
  if (a.defined > 0 && real.defined > 0 && a.ratio_l_mean > 0) l = real.ratio_l_mean / a.ratio_l_mean;
  auto defined = [&a](double v) { return a.defined > 0 ? std::optional<double>(v) : std::nullopt; };
  return csv(a.source, a.rows, a.defined, format_number(defined(a.ratio_cc_mean)),
             format_number(defined(a.ratio_cc_sd)), format_number(defined(a.ratio_l_mean)),
             format_number(defined(a.ratio_l_sd)), format_number(a.nodes_mean),
             format_number(a.components_mean), format_number(a.weight_median_mean),
             format_number(cc), format_number(l));
}

}  // namespace dsg::report
