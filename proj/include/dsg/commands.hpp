#pragma once

// The pipeline behind each dsgtool verb. Every command is a pure function of
// its parameter struct and input bytes; commands that write an output
// directory also write manifest.json, which `rerun` can replay.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dsg/metrics.hpp"
#include "dsg/shuffle.hpp"
#include "dsg/trace.hpp"

namespace dsg::commands {

inline constexpr const char* kToolName = "dsgtool";
inline constexpr const char* kToolVersion = DSG_VERSION;

struct SummaryParams {
  std::string input;
  std::optional<std::string> out_dir;  // unset: CSV to stdout only
};

/// Window lengths x thresholds over every tumbling window of the trace.
struct SweepParams {
  std::string input;
  std::string out_dir;
  std::string system = "trace";
  std::vector<Seconds> windows;
  std::vector<std::uint64_t> thresholds;
  std::optional<Timestamp> origin;
  PathLengthMode::Kind path_kind = PathLengthMode::Kind::kExact;
  double path_fraction = 0.05;
  std::uint64_t seed = 1;
  bool compute_cc2 = true;
};

struct DistributionsParams {
  std::string input;
  std::string out_dir;
  std::optional<Seconds> window;  // unset: whole trace
  std::size_t window_index = 0;
  std::optional<Timestamp> origin;
  std::uint64_t threshold = 1;
};

struct AffiliationParams {
  std::string input;
  std::string out_dir;
  std::string system = "trace";
  std::optional<Seconds> window;  // unset: one row for the whole trace
  std::optional<Timestamp> origin;
};

struct NullModelParams {
  std::string input;
  std::string out_dir;
  std::string system = "trace";
  std::optional<Seconds> window;  // unset: whole trace
  std::size_t window_index = 0;
  std::optional<Timestamp> origin;
  std::uint64_t threshold = 1;
  std::vector<ShuffleVariant> modes{ShuffleVariant::kST1, ShuffleVariant::kST2,
                                    ShuffleVariant::kST3};
  std::size_t replicates = 10;
  std::uint64_t seed = 1;
  PathLengthMode::Kind path_kind = PathLengthMode::Kind::kExact;
  double path_fraction = 0.05;
  bool compute_cc2 = true;
};

struct SynthParams {
  enum class Model { kUniform, kZipf, kClustered };
  std::string output;  // "-" for stdout; ".gz" suffix compresses
  Model model = Model::kUniform;
  std::size_t users = 100;
  std::size_t items = 1000;
  std::size_t requests = 10000;
  double zipf_exponent = 1.0;
  std::size_t groups = 40;
  std::size_t users_per_group = 10;
  std::size_t items_per_group = 15;
  std::size_t requests_per_user = 10;
  double cross_rate = 0.3;
  Timestamp start = 0;
  Seconds span = 3600;
  std::uint64_t seed = 1;
};

nlohmann::ordered_json to_json(const SummaryParams& p);
nlohmann::ordered_json to_json(const SweepParams& p);
nlohmann::ordered_json to_json(const DistributionsParams& p);
nlohmann::ordered_json to_json(const AffiliationParams& p);
nlohmann::ordered_json to_json(const NullModelParams& p);
nlohmann::ordered_json to_json(const SynthParams& p);

SummaryParams summary_params_from_json(const nlohmann::json& j);
SweepParams sweep_params_from_json(const nlohmann::json& j);
DistributionsParams distributions_params_from_json(const nlohmann::json& j);
AffiliationParams affiliation_params_from_json(const nlohmann::json& j);
NullModelParams nullmodel_params_from_json(const nlohmann::json& j);
SynthParams synth_params_from_json(const nlohmann::json& j);

/// Diagnostics for rejected input lines go to `log`.
void run_summary(const SummaryParams& p, std::ostream& out, std::ostream& log);
void run_sweep(const SweepParams& p, std::ostream& log);
void run_distributions(const DistributionsParams& p, std::ostream& log);
void run_affiliation(const AffiliationParams& p, std::ostream& log);
void run_nullmodel(const NullModelParams& p, std::ostream& log);
void run_synth(const SynthParams& p, std::ostream& out);

/// Replays a manifest. `out_dir` replaces the recorded output location.
void run_rerun(const std::string& manifest_path, const std::optional<std::string>& out_dir,
               std::ostream& out, std::ostream& log);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// SOURCE_DATE_EPOCH when set, else the current time, as ISO-8601 UTC.
std::string run_timestamp();

}  // namespace dsg::commands
