// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dsg/affiliation.hpp"
#include "dsg/dsg.hpp"
#include "dsg/metrics.hpp"
#include "dsg/shuffle.hpp"
#include "dsg/trace.hpp"
#include "numdiff_oracle.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace dsg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// ---------------------------------------------------------------------------

Outcome random_baselines_reproduce_table() {
  struct Row {
    std::size_t v, e;
    double cc, l, l_tol;
  };
  Outcome o;
  std::string got;
  for (const Row& r : {Row{35, 142, 0.238, 2.538, 0.005}, Row{1805, 47256, 0.029, 2.296, 0.005},
                       Row{548, 1690, 0.011, 5.599, 0.002}}) {
    const auto b = random_baselines(r.v, r.e);
    o.require(std::abs(b.cc_random - r.cc) <= 0.005, "CC_r off for |V|=" + std::to_string(r.v));
    o.require(b.l_random && std::abs(*b.l_random - r.l) <= r.l_tol, "l_r off for |V|=" + std::to_string(r.v));
    got += " (" + std::to_string(r.v) + "," + std::to_string(r.e) + ")->(" + fmt(b.cc_random) + "," +
           fmt(b.l_random.value_or(NAN)) + ")";
  }
  if (o.pass) o.detail = got.substr(1);
  return o;
}

Outcome clustering_matches_enumeration() {
  std::mt19937_64 rng(2001);
  Outcome o;
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    const double p = std::uniform_real_distribution<double>(0.0, std::min(1.0, 12.0 / static_cast<double>(n)))(rng);
    const auto edges = oracle::random_edges(n, p, rng);
    const auto want = oracle::brute_force_clustering(n, edges);
    const Graph g(n, edges);
    const auto cc1 = clustering_cc1(g);
    const auto cc2 = clustering_cc2(g);
    o.require(cc1.has_value() == want.cc1_defined && cc2.has_value() == want.cc2_defined,
              "definedness differs on trial " + std::to_string(trial));
    if (cc1 && want.cc1_defined) worst = std::max(worst, std::abs(*cc1 - want.cc1));
    if (cc2 && want.cc2_defined) worst = std::max(worst, std::abs(*cc2 - want.cc2));
  }
  o.require(worst <= 1e-12, "max deviation " + fmt(worst));
  if (o.pass) o.detail = "200 graphs, max |diff| " + fmt(worst);
  return o;
}

Outcome dsg_matches_all_pairs() {
  std::mt19937_64 rng(3001);
  Outcome o;
  std::size_t edges = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto records = oracle::random_records(12, 30, 120, rng);
    const Trace t = Trace::from_records(records);
    for (std::uint64_t th = 1; th <= 3; ++th) {
      const auto g = build_dsg(t, th);
      const auto want = oracle::all_pairs_dsg(records, th);
      std::set<std::string> nodes(g.node_names.begin(), g.node_names.end());
      std::map<std::pair<std::string, std::string>, std::uint64_t> got;
      for (const auto& e : g.graph.edges()) got[{g.node_names[e.u], g.node_names[e.v]}] = e.weight;
      o.require(nodes == want.nodes && got == want.edges,
                "mismatch on trial " + std::to_string(trial) + " threshold " + std::to_string(th));
      edges += got.size();
    }
  }
  if (o.pass) o.detail = "500 traces x 3 thresholds, " + std::to_string(edges) + " edges compared";
  return o;
}

Outcome generating_function_closed_forms() {
  Outcome o;
  BipartiteAffiliation fixture;
  fixture.actors = 3;
  fixture.groups = 2;
  fixture.actor_degrees = {{2, 1.0}};
  fixture.group_sizes = {{3, 1.0}};
  const auto fp = predict(fixture);
  o.require(fp.avg_degree && *fp.avg_degree == 4.0, "fixture degree is not 4");
  o.require(fp.clustering && *fp.clustering == 1.0 / 3.0, "fixture clustering is not 1/3");

  std::mt19937_64 rng(4001);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BipartiteAffiliation b;
    b.actors = 10 + rng() % 5000;
    b.groups = 10 + rng() % 5000;
    b.actor_degrees = oracle::random_law(rng, 50, 50);
    b.group_sizes = oracle::random_law(rng, 50, 50);
    const auto want = oracle::numeric_projection(b.actors, b.groups, b.actor_degrees, b.group_sizes);
    const auto d = projection_derivatives(gf_moments(b.actor_degrees), gf_moments(b.group_sizes));
    const auto p = predict(b);
    worst = std::max(worst, rel(d.first, want.avg_degree));
    if (want.second > 0) {
      worst = std::max(worst, rel(d.second, want.second));
      o.require(p.clustering.has_value(), "clustering unset on trial " + std::to_string(trial));
      if (p.clustering) worst = std::max(worst, rel(*p.clustering, want.clustering));
    }
  }
  o.require(worst <= 1e-6, "max relative deviation " + fmt(worst));
  if (o.pass) o.detail = "fixture (4, 1/3) exact; 100 laws, max rel diff " + fmt(worst);
  return o;
}

Outcome shuffle_preserves_marginals() {
  std::mt19937_64 rng(5001);
  Outcome o;
  auto sorted = [](std::vector<std::tuple<std::uint32_t, std::uint32_t, Timestamp>> v, int which) {
    std::vector<std::int64_t> col;
    for (auto& [u, i, t] : v) col.push_back(which == 0 ? u : which == 1 ? i : t);
    std::sort(col.begin(), col.end());
    return col;
  };
  for (int trial = 0; trial < 100; ++trial) {
    Trace t = Trace::from_records(oracle::random_records(40, 60, 400, rng));
    t.sort_by_time();
    std::vector<std::tuple<std::uint32_t, std::uint32_t, Timestamp>> in;
    for (const auto& r : t.requests()) in.emplace_back(r.user, r.item, r.timestamp);
    for (ShuffleVariant v : {ShuffleVariant::kST1, ShuffleVariant::kST2, ShuffleVariant::kST3}) {
      const Trace s = shuffle_trace(t, {v, rng()});
      std::vector<std::tuple<std::uint32_t, std::uint32_t, Timestamp>> out;
      for (const auto& r : s.requests()) out.emplace_back(r.user, r.item, r.timestamp);
      const std::string where = std::string(to_string(v)) + " trial " + std::to_string(trial);
      o.require(out.size() == in.size(), "size changed, " + where);
      for (int c = 0; c < 3; ++c) o.require(sorted(in, c) == sorted(out, c), "column multiset changed, " + where);
      auto pairs = [&](const auto& rows, bool user_time) {
        std::vector<std::pair<std::uint32_t, Timestamp>> p;
        for (auto& [u, i, ts] : rows) p.emplace_back(user_time ? u : i, ts);
        return p;
      };
      if (v == ShuffleVariant::kST2) o.require(pairs(in, false) == pairs(out, false), "(item,time) broken, " + where);
      if (v == ShuffleVariant::kST3) o.require(pairs(in, true) == pairs(out, true), "(user,time) broken, " + where);
    }
  }
  if (o.pass) o.detail = "100 traces x {ST1,ST2,ST3}";
  return o;
}

Outcome sampled_path_length() {
  std::mt19937_64 rng(6001);
  Outcome o;
  std::string summary;
  for (int gi = 0; gi < 5; ++gi) {
    const std::size_t n = 400 + rng() % 101;
    const Graph g(n, oracle::connected_random_edges(n, 4.0 / static_cast<double>(n), rng));
    const double exact = average_path_length(g, PathLengthMode::exact());
    o.require(average_path_length(g, PathLengthMode::sampled(1.0, rng())) == exact,
              "fraction 1.0 differs from exact on graph " + std::to_string(gi));
    int within = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const double s = average_path_length(g, PathLengthMode::sampled(0.05, seed));
      if (std::abs(s - exact) <= 0.1 * exact) ++within;
    }
    o.require(within >= 28, "graph " + std::to_string(gi) + ": only " + std::to_string(within) + "/30 within 10%");
    summary += " " + std::to_string(n) + ":" + std::to_string(within) + "/30";
  }
  if (o.pass) o.detail = "fraction 1.0 == exact; |V|:seeds within 10%" + summary;
  return o;
}

Outcome small_world_at_desk_scale() {
  Outcome o;
  const Trace t = read_trace_file(std::string(DSG_DATA_DIR) + "/clustered_trace.csv").trace;
  const auto real_g = build_dsg(t, 1);
  const auto real = small_world_report(real_g, PathLengthMode::exact());
  o.require(real.ratio_cc && *real.ratio_cc > 10.0, "clustered ratio_cc " + fmt(real.ratio_cc.value_or(NAN)));
  o.require(real.ratio_l && *real.ratio_l >= 0.5 && *real.ratio_l <= 2.0,
            "clustered ratio_l " + fmt(real.ratio_l.value_or(NAN)));

  double worst_shuffled = 0;
  for (std::size_t rep = 0; rep < 5; ++rep) {
    const Trace s = shuffle_trace(t, {ShuffleVariant::kST1, replicate_seed(7, ShuffleVariant::kST1, rep)});
    const auto r = small_world_report(build_dsg(s, 1), PathLengthMode::exact());
    o.require(r.ratio_cc.has_value(), "shuffled ratio_cc undefined");
    if (r.ratio_cc) {
      worst_shuffled = std::max(worst_shuffled, *r.ratio_cc);
      o.require(*real.ratio_cc > *r.ratio_cc, "ST1 replicate " + std::to_string(rep) + " not smaller");
    }
  }

  std::mt19937_64 rng(7001);
  const auto control_edges = oracle::gnm_edges(real.largest_nodes, real.largest_edges, rng);
  DataSharingGraph control;
  for (std::size_t i = 0; i < real.largest_nodes; ++i) control.node_names.push_back("n" + std::to_string(100000 + i));
  control.graph = Graph(real.largest_nodes, control_edges);
  const auto c = small_world_report(control, PathLengthMode::exact());
  o.require(c.ratio_cc && *c.ratio_cc <= 2.0, "random control ratio_cc " + fmt(c.ratio_cc.value_or(NAN)));
  if (o.pass) {
    o.detail = "clustered ratio_cc " + fmt(*real.ratio_cc) + ", ratio_l " + fmt(*real.ratio_l) +
               "; ST1 max ratio_cc " + fmt(worst_shuffled) + "; G(n,m) control ratio_cc " + fmt(*c.ratio_cc);
  }
  return o;
}

// ---------------------------------------------------------------------------
// Determinism through the CLI.

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) files[e.path().filename().string()] = slurp(e.path());
  return files;
}

int tool(const std::string& args) {
  const std::string cmd =
      "SOURCE_DATE_EPOCH=1700000000 '" + std::string(DSGTOOL_PATH) + "' " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "dsg_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string clustered = std::string(DSG_DATA_DIR) + "/clustered_trace.csv";
  const std::string web = std::string(DSG_DATA_DIR) + "/web_like_trace.csv";

  const std::map<std::string, std::string> commands = {
      {"summary", "summary " + web},
      {"sweep", "sweep " + web + " --window 1800,7200 --threshold 1,2 --path sampled --seed 5"},
      {"distributions", "distributions " + clustered + " --window 1800 --window-index 1"},
      {"affiliation", "affiliation " + clustered + " --window 1800"},
      {"nullmodel", "nullmodel " + clustered + " --replicates 2 --seed 9 --path sampled"},
  };
  std::size_t files = 0;
  for (const auto& [name, args] : commands) {
    const fs::path first = root / (name + "_a");
    const fs::path second = root / (name + "_b");
    o.require(tool(args + " --out " + first.string()) == 0, name + " failed");
    const auto original = snapshot(first);
    // In place from the manifest, with a different thread count.
    o.require(tool("--threads 3 rerun " + (first / "manifest.json").string()) == 0, name + " rerun failed");
    o.require(snapshot(first) == original, name + ": in-place rerun changed bytes");
    // Into a fresh directory: every declared output must match.
    o.require(tool("rerun " + (first / "manifest.json").string() + " --out " + second.string()) == 0,
              name + " relocated rerun failed");
    const auto moved = snapshot(second);
    for (const auto& [file, bytes] : original) {
      if (file == "manifest.json") continue;
      o.require(moved.count(file) && moved.at(file) == bytes, name + ": " + file + " differs after relocation");
      ++files;
    }
  }
  for (const char* out : {"s1.csv", "s2.csv"}) {
    o.require(tool("synth --model clustered --seed 7 --out " + (root / out).string()) == 0, "synth failed");
  }
  o.require(slurp(root / "s1.csv") == slurp(root / "s2.csv"), "synth output differs");
  o.require(slurp(root / "s1.csv") == slurp(clustered), "synth does not reproduce the bundled trace");
  fs::remove_all(root);
  if (o.pass) o.detail = "5 commands rerun from manifest (" + std::to_string(files) + " files) + synth";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"random-baseline reproduction", random_baselines_reproduce_table},
      {"clustering oracle equivalence", clustering_matches_enumeration},
      {"data-sharing graph oracle equivalence", dsg_matches_all_pairs},
      {"generating-function closed forms", generating_function_closed_forms},
      {"shuffle marginal preservation", shuffle_preserves_marginals},
      {"sampled path length", sampled_path_length},
      {"small world at desk scale", small_world_at_desk_scale},
      {"determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
