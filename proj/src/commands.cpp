#include "dsg/commands.hpp"

#include <openssl/evp.h>
#include <zlib.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "dsg/affiliation.hpp"
#include "dsg/dsg.hpp"
#include "dsg/report.hpp"
#include "dsg/rng.hpp"

namespace dsg::commands {

using nlohmann::json;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Utilities

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

std::string run_timestamp() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

struct Input {
  std::string digest;
  Trace trace;
};

// The label lands unquoted in CSV cells.
void check_system_label(const std::string& system) {
  if (!is_valid_id(system)) throw PreconditionError("invalid system label '" + system + "'");
}

Input load(const std::string& path, std::ostream& log) {
  const std::string bytes = read_input_bytes(path);
  Input in;
  in.digest = sha256_hex(bytes);
  ParseResult parsed = parse_trace(bytes);
  for (const auto& d : parsed.diagnostics) {
    log << path << ":" << d.line << ": rejected: " << d.message << "\n";
  }
  in.trace = std::move(parsed.trace);
  return in;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  return fs::path(dir);
}

void write_manifest(const fs::path& dir, const std::string& command, const ordered_json& params,
                    const std::string& digest, const ordered_json& seeds,
                    const std::vector<std::string>& outputs) {
  ordered_json m = {
      {"tool", kToolName},
      {"version", kToolVersion},
      {"command", command},
      {"input_sha256", digest},
      {"rng", std::string(Rng::kName)},
      {"seeds", seeds},
      {"parameters", params},
      {"outputs", outputs},
      {"run_timestamp", run_timestamp()},
  };
  write_file(dir / "manifest.json", m.dump(2) + "\n");
}

std::string path_kind_name(PathLengthMode::Kind k) {
  return k == PathLengthMode::Kind::kExact ? "exact" : "sampled";
}

PathLengthMode::Kind parse_path_kind(const std::string& s) {
  if (s == "exact") return PathLengthMode::Kind::kExact;
  if (s == "sampled") return PathLengthMode::Kind::kSampled;
  throw PreconditionError("unknown path-length mode '" + s + "'");
}

template <typename T>
ordered_json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

/// Window slices for an optional length; unset -> one window over the trace.
std::vector<WindowSlice> windows_of(const Trace& trace, std::optional<Seconds> length,
                                    std::optional<Timestamp> origin) {
  if (!length) {
    const Timestamp lo = default_origin(trace);
    const Timestamp hi = trace.empty() ? lo + 1 : trace.requests().back().timestamp + 1;
    return {{TimeWindow{lo, hi}, trace}};
  }
  return window_slices(trace, *length, origin.value_or(default_origin(trace)));
}

WindowSlice pick_window(const Trace& trace, std::optional<Seconds> length,
                        std::optional<Timestamp> origin, std::size_t index) {
  auto slices = windows_of(trace, length, origin);
  if (index >= slices.size()) {
    throw PreconditionError("window index " + std::to_string(index) + " out of range (" +
                            std::to_string(slices.size()) + " windows)");
  }
  return std::move(slices[index]);
}

std::string gzip(const std::string& data) {
  z_stream zs{};
  if (deflateInit2(&zs, 9, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw IoError("deflateInit2 failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  std::string out;
  char buffer[1 << 16];
  int ret;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof(buffer);
    ret = deflate(&zs, Z_FINISH);
    out.append(buffer, sizeof(buffer) - zs.avail_out);
  } while (ret == Z_OK);
  deflateEnd(&zs);
  if (ret != Z_STREAM_END) throw IoError("gzip compression failed");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parameter (de)serialization

ordered_json to_json(const SummaryParams& p) {
  return {{"input", p.input}, {"out_dir", opt(p.out_dir)}};
}

SummaryParams summary_params_from_json(const json& j) {
  return {j.at("input").get<std::string>(), get_opt<std::string>(j, "out_dir")};
}

ordered_json to_json(const SweepParams& p) {
  return {{"input", p.input},
          {"out_dir", p.out_dir},
          {"system", p.system},
          {"windows", p.windows},
          {"thresholds", p.thresholds},
          {"origin", opt(p.origin)},
          {"path_mode", path_kind_name(p.path_kind)},
          {"path_fraction", p.path_fraction},
          {"seed", p.seed},
          {"compute_cc2", p.compute_cc2}};
}

SweepParams sweep_params_from_json(const json& j) {
  SweepParams p;
  p.input = j.at("input").get<std::string>();
  p.out_dir = j.at("out_dir").get<std::string>();
  p.system = j.at("system").get<std::string>();
  p.windows = j.at("windows").get<std::vector<Seconds>>();
  p.thresholds = j.at("thresholds").get<std::vector<std::uint64_t>>();
  p.origin = get_opt<Timestamp>(j, "origin");
  p.path_kind = parse_path_kind(j.at("path_mode").get<std::string>());
  p.path_fraction = j.at("path_fraction").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.compute_cc2 = j.at("compute_cc2").get<bool>();
  return p;
}

ordered_json to_json(const DistributionsParams& p) {
  return {{"input", p.input},   {"out_dir", p.out_dir},   {"window", opt(p.window)},
          {"window_index", p.window_index}, {"origin", opt(p.origin)}, {"threshold", p.threshold}};
}

DistributionsParams distributions_params_from_json(const json& j) {
  DistributionsParams p;
  p.input = j.at("input").get<std::string>();
  p.out_dir = j.at("out_dir").get<std::string>();
  p.window = get_opt<Seconds>(j, "window");
  p.window_index = j.at("window_index").get<std::size_t>();
  p.origin = get_opt<Timestamp>(j, "origin");
  p.threshold = j.at("threshold").get<std::uint64_t>();
  return p;
}

ordered_json to_json(const AffiliationParams& p) {
  return {{"input", p.input},
          {"out_dir", p.out_dir},
          {"system", p.system},
          {"window", opt(p.window)},
          {"origin", opt(p.origin)}};
}

AffiliationParams affiliation_params_from_json(const json& j) {
  AffiliationParams p;
  p.input = j.at("input").get<std::string>();
  p.out_dir = j.at("out_dir").get<std::string>();
  p.system = j.at("system").get<std::string>();
  p.window = get_opt<Seconds>(j, "window");
  p.origin = get_opt<Timestamp>(j, "origin");
  return p;
}

ordered_json to_json(const NullModelParams& p) {
  std::vector<std::string> modes;
  for (auto m : p.modes) modes.emplace_back(to_string(m));
  return {{"input", p.input},
          {"out_dir", p.out_dir},
          {"system", p.system},
          {"window", opt(p.window)},
          {"window_index", p.window_index},
          {"origin", opt(p.origin)},
          {"threshold", p.threshold},
          {"modes", modes},
          {"replicates", p.replicates},
          {"seed", p.seed},
          {"path_mode", path_kind_name(p.path_kind)},
          {"path_fraction", p.path_fraction},
          {"compute_cc2", p.compute_cc2}};
}

NullModelParams nullmodel_params_from_json(const json& j) {
  NullModelParams p;
  p.input = j.at("input").get<std::string>();
  p.out_dir = j.at("out_dir").get<std::string>();
  p.system = j.at("system").get<std::string>();
  p.window = get_opt<Seconds>(j, "window");
  p.window_index = j.at("window_index").get<std::size_t>();
  p.origin = get_opt<Timestamp>(j, "origin");
  p.threshold = j.at("threshold").get<std::uint64_t>();
  p.modes.clear();
  for (const auto& m : j.at("modes")) p.modes.push_back(parse_shuffle_variant(m.get<std::string>()));
  p.replicates = j.at("replicates").get<std::size_t>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.path_kind = parse_path_kind(j.at("path_mode").get<std::string>());
  p.path_fraction = j.at("path_fraction").get<double>();
  p.compute_cc2 = j.at("compute_cc2").get<bool>();
  return p;
}

namespace {

const std::map<SynthParams::Model, std::string> kModelNames = {
    {SynthParams::Model::kUniform, "uniform"},
    {SynthParams::Model::kZipf, "zipf"},
    {SynthParams::Model::kClustered, "clustered"},
};

}  // namespace

ordered_json to_json(const SynthParams& p) {
  return {{"output", p.output},
          {"model", kModelNames.at(p.model)},
          {"users", p.users},
          {"items", p.items},
          {"requests", p.requests},
          {"zipf_exponent", p.zipf_exponent},
          {"groups", p.groups},
          {"users_per_group", p.users_per_group},
          {"items_per_group", p.items_per_group},
          {"requests_per_user", p.requests_per_user},
          {"cross_rate", p.cross_rate},
          {"start", p.start},
          {"span", p.span},
          {"seed", p.seed}};
}

SynthParams synth_params_from_json(const json& j) {
  SynthParams p;
  p.output = j.at("output").get<std::string>();
  const auto model = j.at("model").get<std::string>();
  bool found = false;
  for (const auto& [m, name] : kModelNames) {
    if (name == model) {
      p.model = m;
      found = true;
    }
  }
  if (!found) throw PreconditionError("unknown synthetic model '" + model + "'");
  p.users = j.at("users").get<std::size_t>();
  p.items = j.at("items").get<std::size_t>();
  p.requests = j.at("requests").get<std::size_t>();
  p.zipf_exponent = j.at("zipf_exponent").get<double>();
  p.groups = j.at("groups").get<std::size_t>();
  p.users_per_group = j.at("users_per_group").get<std::size_t>();
  p.items_per_group = j.at("items_per_group").get<std::size_t>();
  p.requests_per_user = j.at("requests_per_user").get<std::size_t>();
  p.cross_rate = j.at("cross_rate").get<double>();
  p.start = j.at("start").get<Timestamp>();
  p.span = j.at("span").get<Seconds>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

// ---------------------------------------------------------------------------
// Commands

void run_summary(const SummaryParams& p, std::ostream& out, std::ostream& log) {
  const Input in = load(p.input, log);
  const TraceSummary s = summarize(in.trace);
  const std::string table = report::schema_line(report::kTable1Schema) + report::table1_header() +
                            report::table1_row(s);
  out << table;
  if (p.out_dir) {
    const fs::path dir = prepare_dir(*p.out_dir);
    write_file(dir / "table1.csv", table);
    write_manifest(dir, "summary", to_json(p), in.digest, ordered_json::object(), {"table1.csv"});
  }
}

namespace {

struct SweepCell {
  report::CellKey key;
  std::optional<MetricsReport> metrics;
  std::string failure;
};

}  // namespace

void run_sweep(const SweepParams& p, std::ostream& log) {
  check_system_label(p.system);
  if (p.windows.empty() || p.thresholds.empty()) {
    throw PreconditionError("sweep needs at least one window length and one threshold");
  }
  for (auto t : p.thresholds) {
    if (t < 1) throw PreconditionError("thresholds must be >= 1");
  }
  for (auto w : p.windows) {
    if (w <= 0) throw PreconditionError("window lengths must be positive");
  }
  const Input in = load(p.input, log);
  if (in.trace.empty()) throw EmptyTraceError("sweep of an empty trace");
  const fs::path dir = prepare_dir(p.out_dir);

  std::vector<std::uint64_t> thresholds = p.thresholds;
  const std::uint64_t base_threshold = *std::min_element(thresholds.begin(), thresholds.end());

  struct Task {
    Seconds length;
    std::size_t index;
    WindowSlice slice;
  };
  std::vector<Task> tasks;
  for (Seconds length : p.windows) {
    auto slices = windows_of(in.trace, length, p.origin);
    for (std::size_t i = 0; i < slices.size(); ++i) tasks.push_back({length, i, std::move(slices[i])});
  }

  // Cell index = task * thresholds + threshold position; independent of
  // scheduling, so output bytes do not depend on the worker count.
  std::vector<SweepCell> cells(tasks.size() * thresholds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(tasks.size()); ++ti) {
    const auto t = static_cast<std::size_t>(ti);
    const Task& task = tasks[t];
    std::optional<DataSharingGraph> base;
    std::string base_failure;
    try {
      base = build_dsg(task.slice.trace, base_threshold, task.slice.window);
    } catch (const std::exception& e) {
      base_failure = e.what();
    }
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      const std::size_t c = t * thresholds.size() + k;
      SweepCell& cell = cells[c];
      cell.key = {p.system, task.length, thresholds[k], task.index, task.slice.window.start};
      if (!base) {
        cell.failure = base_failure;
        continue;
      }
      try {
        const PathLengthMode mode = p.path_kind == PathLengthMode::Kind::kExact
                                        ? PathLengthMode::exact()
                                        : PathLengthMode::sampled(p.path_fraction, derive_seed(p.seed, c));
        const DataSharingGraph g = filter_threshold(*base, thresholds[k]);
        cell.metrics = small_world_report(g, mode, {p.compute_cc2});
      } catch (const std::exception& e) {
        cell.failure = e.what();
      }
    }
  }

  std::string table = report::schema_line(report::kTable2Schema) + report::table2_header();
  std::string scatter = report::schema_line(report::kScatterSchema) + report::scatter_header();
  ordered_json rows_json = ordered_json::array();
  for (const auto& cell : cells) {
    if (cell.metrics) {
      table += report::table2_row(cell.key, *cell.metrics);
      if (cell.metrics->ratio_cc && cell.metrics->ratio_l) {
        scatter += report::scatter_row(cell.key, *cell.metrics);
      }
      ordered_json row = {{"system", cell.key.system},
                          {"interval_s", cell.key.interval},
                          {"threshold", cell.key.threshold},
                          {"window_index", cell.key.window_index},
                          {"window_start", cell.key.window_start}};
      row["metrics"] = report::metrics_json(*cell.metrics);
      rows_json.push_back(row);
    } else {
      log << "sweep: window " << cell.key.window_index << " (length " << cell.key.interval
          << ", threshold " << cell.key.threshold << ") failed: " << cell.failure << "\n";
      table += report::table2_failed_row(cell.key, cell.failure);
    }
  }
  write_file(dir / "table2.csv", table);
  write_file(dir / "scatter.csv", scatter);
  write_file(dir / "table2.json", rows_json.dump(2) + "\n");
  write_manifest(dir, "sweep", to_json(p), in.digest, {{"master", p.seed}},
                 {"table2.csv", "table2.json", "scatter.csv"});
}

void run_distributions(const DistributionsParams& p, std::ostream& log) {
  const Input in = load(p.input, log);
  if (in.trace.empty()) throw EmptyTraceError("distributions of an empty trace");
  const WindowSlice ws = pick_window(in.trace, p.window, p.origin, p.window_index);
  const fs::path dir = prepare_dir(p.out_dir);
  const Trace& t = ws.trace;

  // Item rank vs request count.
  std::vector<std::size_t> item_requests(t.items().size(), 0);
  std::vector<std::size_t> user_total(t.users().size(), 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const Request& r : t.requests()) {
    ++item_requests[r.item];
    ++user_total[r.user];
    pairs.emplace_back(r.user, r.item);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<std::size_t> user_distinct(t.users().size(), 0);
  for (auto [u, i] : pairs) ++user_distinct[u];

  std::vector<std::size_t> freq;
  for (auto n : item_requests) {
    if (n > 0) freq.push_back(n);
  }
  std::sort(freq.begin(), freq.end(), std::greater<>());
  std::string popularity = report::schema_line("dsg.popularity/1") + "rank,requests\n";
  for (std::size_t i = 0; i < freq.size(); ++i) {
    popularity += std::to_string(i + 1) + "," + std::to_string(freq[i]) + "\n";
  }

  std::vector<std::pair<std::size_t, std::size_t>> activity;
  for (std::size_t u = 0; u < user_total.size(); ++u) {
    if (user_total[u] > 0) activity.emplace_back(user_total[u], user_distinct[u]);
  }
  std::sort(activity.begin(), activity.end(), std::greater<>());
  std::string user_activity = report::schema_line("dsg.user_activity/1") + "rank,requests_all,requests_distinct\n";
  for (std::size_t i = 0; i < activity.size(); ++i) {
    user_activity += std::to_string(i + 1) + "," + std::to_string(activity[i].first) + "," +
                     std::to_string(activity[i].second) + "\n";
  }

  const DataSharingGraph g = build_dsg(t, p.threshold, ws.window);
  std::string degree = report::schema_line("dsg.degree/1") + "degree,nodes\n";
  for (auto [k, n] : degree_distribution(g.graph)) {
    degree += std::to_string(k) + "," + std::to_string(n) + "\n";
  }
  const WeightDistribution wd = weight_distribution(g);
  std::string weight = report::schema_line("dsg.weight/1") + "weight,edges\n";
  for (auto [w, n] : wd.histogram) weight += std::to_string(w) + "," + std::to_string(n) + "\n";
  weight += "# median=" + report::format_number(wd.median) + " mean=" + report::format_number(wd.mean) + "\n";

  std::ostringstream edges;
  write_graph(g, edges);

  write_file(dir / "popularity.csv", popularity);
  write_file(dir / "user_activity.csv", user_activity);
  write_file(dir / "degree.csv", degree);
  write_file(dir / "weight.csv", weight);
  write_file(dir / "graph.edges", edges.str());
  write_manifest(dir, "distributions", to_json(p), in.digest, ordered_json::object(),
                 {"popularity.csv", "user_activity.csv", "degree.csv", "weight.csv", "graph.edges"});
}

void run_affiliation(const AffiliationParams& p, std::ostream& log) {
  check_system_label(p.system);
  const Input in = load(p.input, log);
  if (in.trace.empty()) throw EmptyTraceError("affiliation of an empty trace");
  const fs::path dir = prepare_dir(p.out_dir);
  const auto slices = windows_of(in.trace, p.window, p.origin);
  const Seconds interval = p.window.value_or(slices.front().window.length());

  std::vector<std::string> rows(slices.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t wi = 0; wi < static_cast<std::int64_t>(slices.size()); ++wi) {
    const auto w = static_cast<std::size_t>(wi);
    const WindowSlice& s = slices[w];
    if (s.trace.empty()) {
      rows[w] = report::table3_failed_row(p.system, interval, w, s.window.start, "empty_window");
      continue;
    }
    try {
      rows[w] = report::table3_row(p.system, interval, w, s.window.start, compare_affiliation(s.trace));
    } catch (const std::exception& e) {
      rows[w] = report::table3_failed_row(p.system, interval, w, s.window.start,
                                          std::string("failed:") + e.what());
    }
  }
  std::string table = report::schema_line(report::kTable3Schema) + report::table3_header();
  for (const auto& r : rows) table += r;
  write_file(dir / "table3.csv", table);
  write_manifest(dir, "affiliation", to_json(p), in.digest, ordered_json::object(), {"table3.csv"});
}

void run_nullmodel(const NullModelParams& p, std::ostream& log) {
  check_system_label(p.system);
  const Input in = load(p.input, log);
  if (in.trace.empty()) throw EmptyTraceError("null model of an empty trace");
  const WindowSlice ws = pick_window(in.trace, p.window, p.origin, p.window_index);
  const fs::path dir = prepare_dir(p.out_dir);

  NullModelSpec spec;
  spec.window = ws.window;
  spec.threshold = p.threshold;
  spec.modes = p.modes;
  spec.replicates = p.replicates;
  spec.seed = p.seed;
  spec.path_mode = p.path_kind == PathLengthMode::Kind::kExact
                       ? PathLengthMode::exact()
                       : PathLengthMode::sampled(p.path_fraction, derive_seed(p.seed, 0));
  spec.report.compute_cc2 = p.compute_cc2;
  const NullModelComparison cmp = null_model_comparison(in.trace, spec);

  const report::CellKey key{p.system, ws.window.length(), p.threshold, p.window_index, ws.window.start};
  std::string table = report::schema_line(report::kNullModelSchema) + report::nullmodel_header();
  for (const auto& row : cmp.rows) table += report::nullmodel_row(key, row);
  std::string ratios = report::schema_line(report::kNullRatioSchema) + report::nullmodel_ratio_header();
  for (const auto& a : cmp.aggregates) ratios += report::nullmodel_ratio_row(a, cmp.aggregates.front());

  ordered_json seeds = {{"master", p.seed}};
  ordered_json per_replicate = ordered_json::array();
  for (const auto& row : cmp.rows) {
    if (row.source != "real") per_replicate.push_back({{"source", row.source}, {"replicate", row.replicate}, {"seed", row.seed}});
  }
  seeds["replicates"] = per_replicate;

  write_file(dir / "nullmodel.csv", table);
  write_file(dir / "nullmodel_ratios.csv", ratios);
  write_manifest(dir, "nullmodel", to_json(p), in.digest, seeds,
                 {"nullmodel.csv", "nullmodel_ratios.csv"});
}

void run_synth(const SynthParams& p, std::ostream& out) {
  Trace trace;
  switch (p.model) {
    case SynthParams::Model::kUniform:
    case SynthParams::Model::kZipf: {
      SyntheticTraceSpec s;
      s.users = p.users;
      s.items = p.items;
      s.requests = p.requests;
      s.popularity = p.model == SynthParams::Model::kZipf ? Popularity::zipf(p.zipf_exponent)
                                                          : Popularity::uniform();
      s.seed = p.seed;
      s.start = p.start;
      s.span = p.span;
      trace = generate_synthetic_trace(s);
      break;
    }
    case SynthParams::Model::kClustered: {
      ClusteredTraceSpec s;
      s.groups = p.groups;
      s.users_per_group = p.users_per_group;
      s.items_per_group = p.items_per_group;
      s.requests_per_user = p.requests_per_user;
      s.cross_rate = p.cross_rate;
      s.seed = p.seed;
      s.start = p.start;
      s.span = p.span;
      trace = generate_clustered_trace(s);
      break;
    }
  }
  ordered_json header = to_json(p);
  header.erase("output");
  const std::string text = "# " + header.dump() + "\n" + render_trace(trace);
  if (p.output == "-") {
    out << text;
    return;
  }
  const bool compress = p.output.size() > 3 && p.output.ends_with(".gz");
  write_file(p.output, compress ? gzip(text) : text);
}

void run_rerun(const std::string& manifest_path, const std::optional<std::string>& out_dir,
               std::ostream& out, std::ostream& log) {
  json m;
  {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open " + manifest_path);
    try {
      m = json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError("bad manifest", {{0, e.what()}});
    }
  }
  json params = m.at("parameters");
  const std::string command = m.at("command").get<std::string>();
  if (out_dir) params["out_dir"] = *out_dir;

  const std::string input = params.at("input").get<std::string>();
  const std::string digest = sha256_hex(read_input_bytes(input));
  if (digest != m.at("input_sha256").get<std::string>()) {
    throw PreconditionError("input " + input + " does not match the manifest digest");
  }

  if (command == "summary") {
    run_summary(summary_params_from_json(params), out, log);
  } else if (command == "sweep") {
    run_sweep(sweep_params_from_json(params), log);
  } else if (command == "distributions") {
    run_distributions(distributions_params_from_json(params), log);
  } else if (command == "affiliation") {
    run_affiliation(affiliation_params_from_json(params), log);
  } else if (command == "nullmodel") {
    run_nullmodel(nullmodel_params_from_json(params), log);
  } else {
    throw PreconditionError("manifest command '" + command + "' cannot be replayed");
  }
}

}  // namespace dsg::commands
