#pragma once

// CSV and JSON renderings of every table the tool emits. Each CSV starts with
// a `# schema: <name>/<version>` line, then a header row. Undefined values are
// empty cells; the `flags` column says why.

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dsg/affiliation.hpp"
#include "dsg/metrics.hpp"
#include "dsg/shuffle.hpp"
#include "dsg/trace.hpp"

namespace dsg::report {

inline constexpr std::string_view kTable1Schema = "dsg.table1/1";
inline constexpr std::string_view kTable2Schema = "dsg.table2/1";
inline constexpr std::string_view kScatterSchema = "dsg.scatter/1";
inline constexpr std::string_view kTable3Schema = "dsg.table3/1";
inline constexpr std::string_view kNullModelSchema = "dsg.nullmodel/1";
inline constexpr std::string_view kNullRatioSchema = "dsg.nullmodel_ratios/1";

/// Shortest round-trip decimal; empty for an unset value.
std::string format_number(std::optional<double> value);

std::string schema_line(std::string_view schema);

std::string table1_header();
std::string table1_row(const TraceSummary& s);

/// Identifies one (window, threshold) cell of a sweep.
struct CellKey {
  std::string system = "trace";
  Seconds interval = 0;
  std::uint64_t threshold = 1;
  std::size_t window_index = 0;
  Timestamp window_start = 0;
};

std::string table2_header();
std::string table2_row(const CellKey& key, const MetricsReport& r);
/// Row for a cell whose computation failed; `reason` goes into flags.
std::string table2_failed_row(const CellKey& key, std::string_view reason);

nlohmann::ordered_json metrics_json(const MetricsReport& r);

std::string scatter_header();
std::string scatter_row(const CellKey& key, const MetricsReport& r);

std::string table3_header();
std::string table3_row(const std::string& system, Seconds interval, std::size_t window_index,
                       Timestamp window_start, const AffiliationComparison& c);
std::string table3_failed_row(const std::string& system, Seconds interval,
                              std::size_t window_index, Timestamp window_start,
                              std::string_view reason);

std::string nullmodel_header();
std::string nullmodel_row(const CellKey& key, const NullModelRow& row);

std::string nullmodel_ratio_header();
std::string nullmodel_ratio_row(const SourceAggregate& a, const SourceAggregate& real);

}  // namespace dsg::report
