// dsgtool: data-sharing graph analysis of request traces.
//
// Exit codes: 0 success (rows may carry flags), 1 usage, 2 parse error,
// 3 precondition violated, 4 i/o error, 5 empty trace.

#include <omp.h>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsg/commands.hpp"
#include "dsg/error.hpp"
#include "dsg/trace.hpp"

namespace {

using namespace dsg;
using namespace dsg::commands;

struct PathFlags {
  std::string mode = "exact";
  double fraction = 0.05;

  void add(CLI::App* cmd) {
    cmd->add_option("--path", mode, "Average path length: exact | sampled")
        ->check(CLI::IsMember({"exact", "sampled"}));
    cmd->add_option("--fraction", fraction, "Source fraction for sampled path length")
        ->check(CLI::Range(0.0, 1.0));
  }
  PathLengthMode::Kind kind() const {
    return mode == "exact" ? PathLengthMode::Kind::kExact : PathLengthMode::Kind::kSampled;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-sharing graph analysis of request traces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: OpenMP default)");

  // summary
  SummaryParams summary;
  std::string summary_out;
  auto* summary_cmd = app.add_subcommand("summary", "Trace characteristics (users, requests, duration)");
  summary_cmd->add_option("trace", summary.input, "Trace CSV (optionally gzip), '-' for stdin")->required();
  summary_cmd->add_option("--out", summary_out, "Also write table1.csv and manifest.json here");

  // sweep
  SweepParams sweep;
  PathFlags sweep_path;
  bool sweep_no_cc2 = false;
  std::optional<Timestamp> sweep_origin;
  auto* sweep_cmd = app.add_subcommand("sweep", "Small-world metrics for every window and threshold");
  sweep_cmd->add_option("trace", sweep.input)->required();
  sweep_cmd->add_option("--window", sweep.windows, "Window lengths in seconds")->required()->delimiter(',');
  sweep_cmd->add_option("--threshold", sweep.thresholds, "Shared-item thresholds")->required()->delimiter(',');
  sweep_cmd->add_option("--origin", sweep_origin, "Window origin (default: first timestamp)");
  sweep_cmd->add_option("--system", sweep.system, "Label for the system column");
  sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
  sweep_cmd->add_flag("--no-cc2", sweep_no_cc2, "Skip the triangle-based clustering coefficient");
  sweep_cmd->add_option("--out", sweep.out_dir, "Output directory")->required();
  sweep_path.add(sweep_cmd);

  // distributions
  DistributionsParams dist;
  std::optional<Seconds> dist_window;
  std::optional<Timestamp> dist_origin;
  auto* dist_cmd = app.add_subcommand("distributions", "Popularity, activity, degree and weight plot data");
  dist_cmd->add_option("trace", dist.input)->required();
  dist_cmd->add_option("--window", dist_window, "Window length in seconds (default: whole trace)");
  dist_cmd->add_option("--window-index", dist.window_index, "Which window");
  dist_cmd->add_option("--origin", dist_origin);
  dist_cmd->add_option("--threshold", dist.threshold)->check(CLI::PositiveNumber);
  dist_cmd->add_option("--out", dist.out_dir)->required();

  // affiliation
  AffiliationParams aff;
  std::optional<Seconds> aff_window;
  std::optional<Timestamp> aff_origin;
  auto* aff_cmd = app.add_subcommand("affiliation", "Affiliation-network model versus measurement");
  aff_cmd->add_option("trace", aff.input)->required();
  aff_cmd->add_option("--window", aff_window, "Window length in seconds (default: whole trace)");
  aff_cmd->add_option("--origin", aff_origin);
  aff_cmd->add_option("--system", aff.system);
  aff_cmd->add_option("--out", aff.out_dir)->required();

  // nullmodel
  NullModelParams null;
  PathFlags null_path;
  bool null_no_cc2 = false;
  std::optional<Seconds> null_window;
  std::optional<Timestamp> null_origin;
  std::vector<std::string> null_modes{"ST1", "ST2", "ST3"};
  auto* null_cmd = app.add_subcommand("nullmodel", "Real versus column-shuffled traces");
  null_cmd->add_option("trace", null.input)->required();
  null_cmd->add_option("--window", null_window, "Window length in seconds (default: whole trace)");
  null_cmd->add_option("--window-index", null.window_index);
  null_cmd->add_option("--origin", null_origin);
  null_cmd->add_option("--threshold", null.threshold)->check(CLI::PositiveNumber);
  null_cmd->add_option("--modes", null_modes, "Shuffle modes")->delimiter(',');
  null_cmd->add_option("--replicates", null.replicates)->check(CLI::PositiveNumber);
  null_cmd->add_option("--seed", null.seed);
  null_cmd->add_option("--system", null.system);
  null_cmd->add_flag("--no-cc2", null_no_cc2);
  null_cmd->add_option("--out", null.out_dir)->required();
  null_path.add(null_cmd);

  // synth
  SynthParams synth;
  std::string synth_model = "uniform";
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic trace");
  synth_cmd->add_option("--model", synth_model)->check(CLI::IsMember({"uniform", "zipf", "clustered"}));
  synth_cmd->add_option("--users", synth.users);
  synth_cmd->add_option("--items", synth.items);
  synth_cmd->add_option("--requests", synth.requests);
  synth_cmd->add_option("--zipf-s", synth.zipf_exponent);
  synth_cmd->add_option("--groups", synth.groups);
  synth_cmd->add_option("--users-per-group", synth.users_per_group);
  synth_cmd->add_option("--items-per-group", synth.items_per_group);
  synth_cmd->add_option("--requests-per-user", synth.requests_per_user);
  synth_cmd->add_option("--cross-rate", synth.cross_rate);
  synth_cmd->add_option("--start", synth.start);
  synth_cmd->add_option("--span", synth.span);
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--out", synth.output, "Output file ('-' for stdout, .gz compresses)")->required();

  // rerun
  std::string manifest;
  std::string rerun_out;
  auto* rerun_cmd = app.add_subcommand("rerun", "Replay a manifest.json");
  rerun_cmd->add_option("manifest", manifest)->required();
  rerun_cmd->add_option("--out", rerun_out, "Write outputs here instead of the recorded directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version land here too, with a success code.
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*summary_cmd) {
      if (!summary_out.empty()) summary.out_dir = summary_out;
      run_summary(summary, std::cout, std::cerr);
    } else if (*sweep_cmd) {
      sweep.origin = sweep_origin;
      sweep.path_kind = sweep_path.kind();
      sweep.path_fraction = sweep_path.fraction;
      sweep.compute_cc2 = !sweep_no_cc2;
      run_sweep(sweep, std::cerr);
    } else if (*dist_cmd) {
      dist.window = dist_window;
      dist.origin = dist_origin;
      run_distributions(dist, std::cerr);
    } else if (*aff_cmd) {
      aff.window = aff_window;
      aff.origin = aff_origin;
      run_affiliation(aff, std::cerr);
    } else if (*null_cmd) {
      null.window = null_window;
      null.origin = null_origin;
      null.modes.clear();
      for (const auto& m : null_modes) null.modes.push_back(parse_shuffle_variant(m));
      null.path_kind = null_path.kind();
      null.path_fraction = null_path.fraction;
      null.compute_cc2 = !null_no_cc2;
      run_nullmodel(null, std::cerr);
    } else if (*synth_cmd) {
      synth.model = synth_model == "zipf"        ? SynthParams::Model::kZipf
                    : synth_model == "clustered" ? SynthParams::Model::kClustered
                                                 : SynthParams::Model::kUniform;
      run_synth(synth, std::cout);
    } else if (*rerun_cmd) {
      std::optional<std::string> out;
      if (!rerun_out.empty()) out = rerun_out;
      run_rerun(manifest, out, std::cout, std::cerr);
    }
  } catch (const ParseError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << "line " << d.line << ": " << d.message << "\n";
    std::cerr << "dsgtool: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const Error& e) {
    std::cerr << "dsgtool: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    // nlohmann::json errors from malformed manifests end up here.
    std::cerr << "dsgtool: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::kParse);
  }
  return 0;
}
