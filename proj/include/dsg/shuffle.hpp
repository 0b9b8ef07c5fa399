#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsg/dsg.hpp"
#include "dsg/metrics.hpp"
#include "dsg/trace.hpp"

namespace dsg {

/// Which columns of the (user, item, time) matrix are permuted.
///   ST1: user and item columns, independently (time correlations all lost)
///   ST2: user column only ((item, time) pairs kept)
///   ST3: item column only ((user, time) pairs kept)
enum class ShuffleVariant { kST1, kST2, kST3 };

std::string_view to_string(ShuffleVariant v);
/// Accepts "ST1"/"st1" etc. Throws PreconditionError otherwise.
ShuffleVariant parse_shuffle_variant(std::string_view name);

struct ShuffleMode {
  ShuffleVariant variant = ShuffleVariant::kST1;
  std::uint64_t seed = 0;
};

/// Seeded Fisher-Yates permutation of the mode's column(s). Row order and the
/// time column are untouched, so a sorted trace stays sorted. Throws
/// EmptyTraceError on an empty trace.
Trace shuffle_trace(const Trace& trace, const ShuffleMode& mode);

struct NullModelSpec {
  std::optional<TimeWindow> window;  // unset: the whole trace
  std::uint64_t threshold = 1;
  std::vector<ShuffleVariant> modes{ShuffleVariant::kST1, ShuffleVariant::kST2,
                                    ShuffleVariant::kST3};
  std::size_t replicates = 10;
  std::uint64_t seed = 0;
  PathLengthMode path_mode;
  ReportOptions report;
};

/// Seed of replicate `replicate` of `variant` under master seed `seed`.
std::uint64_t replicate_seed(std::uint64_t seed, ShuffleVariant variant, std::size_t replicate);

struct NullModelRow {
  std::string source;  // "real", "ST1", "ST2", "ST3"
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  MetricsReport metrics;
  WeightDistribution weights;
};

struct SourceAggregate {
  std::string source;
  std::size_t rows = 0;
  std::size_t defined = 0;  // rows with both ratios defined
  double ratio_cc_mean = 0, ratio_cc_sd = 0;
  double ratio_l_mean = 0, ratio_l_sd = 0;
  double nodes_mean = 0;
  double components_mean = 0;
  double weight_median_mean = 0;
};

struct NullModelComparison {
  std::vector<NullModelRow> rows;  // real first, then per mode per replicate
  std::vector<SourceAggregate> aggregates;  // real first, then per mode
};

/// Builds the data-sharing graph of the real trace and of every shuffled
/// replicate over the same window and threshold. Replicates run in parallel;
/// output order is fixed. Throws PreconditionError if replicates < 1.
NullModelComparison null_model_comparison(const Trace& trace, const NullModelSpec& spec);

}  // namespace dsg
