#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dsg/error.hpp"

namespace dsg {

using Timestamp = std::int64_t;
using Seconds = std::int64_t;

/// One (user, item, timestamp) request event, as seen by callers.
struct TraceRecord {
  std::string user_id;
  std::string item_id;
  Timestamp timestamp = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Interned string table. Ids are dense indices in insertion order.
class IdTable {
 public:
  std::uint32_t intern(std::string_view name);
  std::optional<std::uint32_t> find(std::string_view name) const;
  const std::string& name(std::uint32_t id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// A request with interned user and item ids.
struct Request {
  std::uint32_t user = 0;
  std::uint32_t item = 0;
  Timestamp timestamp = 0;

  friend bool operator==(const Request&, const Request&) = default;
};

/// True when `id` can appear in the canonical CSV: non-empty, no separators
/// or line breaks, and not starting with the comment marker.
bool is_valid_id(std::string_view id);

/// An ordered sequence of requests. Windows sliced from a trace share its id
/// tables, so user/item ids are comparable across all slices of one trace.
class Trace {
 public:
  Trace();
  Trace(std::shared_ptr<const IdTable> users, std::shared_ptr<const IdTable> items,
        std::vector<Request> requests, bool sorted);

  /// Builds a trace from explicit records. Throws PreconditionError on an
  /// invalid id or negative timestamp.
  static Trace from_records(const std::vector<TraceRecord>& records);

  std::size_t size() const { return requests_.size(); }
  bool empty() const { return requests_.empty(); }
  bool sorted() const { return sorted_; }

  const std::vector<Request>& requests() const { return requests_; }
  const IdTable& users() const { return *users_; }
  const IdTable& items() const { return *items_; }
  const std::shared_ptr<const IdTable>& user_table() const { return users_; }
  const std::shared_ptr<const IdTable>& item_table() const { return items_; }

  TraceRecord record(std::size_t i) const;
  std::vector<TraceRecord> records() const;

  /// Stable sort by timestamp; sets the sorted flag.
  void sort_by_time();

  /// Same tables, different request list. Used to derive windows and shuffles.
  Trace with_requests(std::vector<Request> requests, bool sorted) const;

 private:
  std::shared_ptr<const IdTable> users_;
  std::shared_ptr<const IdTable> items_;
  std::vector<Request> requests_;
  bool sorted_ = true;
};

struct TimeWindow {
  Timestamp start = 0;  // inclusive
  Timestamp end = 0;    // exclusive

  Seconds length() const { return end - start; }
  bool contains(Timestamp t) const { return t >= start && t < end; }
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct TraceSummary {
  std::size_t user_count = 0;
  std::size_t request_count_all = 0;
  std::size_t request_count_distinct = 0;
  Seconds duration = 0;

  friend bool operator==(const TraceSummary&, const TraceSummary&) = default;
};

struct ParseDiagnostic {
  std::size_t line = 0;  // 1-based
  std::string message;
};

/// Thrown when every data line of an input was rejected.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::vector<ParseDiagnostic> diagnostics)
      : Error(ErrorKind::kParse, what), diagnostics_(std::move(diagnostics)) {}
  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ParseDiagnostic> diagnostics_;
};

struct ParseOptions {
  bool sort = true;
};

struct ParseResult {
  Trace trace;
  std::vector<ParseDiagnostic> diagnostics;
};

/// Parses canonical `user_id,item_id,timestamp` CSV. Blank lines and lines
/// starting with '#' are skipped. Malformed lines produce diagnostics; if
/// there were data lines and all were rejected, throws ParseError.
ParseResult parse_trace(std::string_view text, const ParseOptions& options = {});
ParseResult parse_trace(std::istream& in, const ParseOptions& options = {});

/// Reads a whole file (or stdin for "-"), inflating gzip input detected by
/// its magic bytes. Throws IoError.
std::string read_input_bytes(const std::string& path);

ParseResult read_trace_file(const std::string& path, const ParseOptions& options = {});

void render_trace(const Trace& trace, std::ostream& out);
std::string render_trace(const Trace& trace);

/// Throws EmptyTraceError on an empty trace.
TraceSummary summarize(const Trace& trace);

struct WindowSlice {
  TimeWindow window;
  Trace trace;
};

/// Tumbling windows [origin + k*length, origin + (k+1)*length) covering every
/// record; empty windows are kept. Throws PreconditionError when the trace is
/// unsorted, length <= 0, or a record precedes the origin.
std::vector<WindowSlice> window_slices(const Trace& trace, Seconds length, Timestamp origin);

/// Default origin for windowing: the first timestamp (0 for empty traces).
Timestamp default_origin(const Trace& trace);

/// The records in [window.start, window.end). Requires a sorted trace.
Trace slice(const Trace& trace, const TimeWindow& window);

struct Popularity {
  enum class Law { kUniform, kZipf };
  Law law = Law::kUniform;
  double exponent = 1.0;  // zipf only

  static Popularity uniform() { return {}; }
  static Popularity zipf(double s) { return {Law::kZipf, s}; }
};

struct SyntheticTraceSpec {
  std::size_t users = 1;
  std::size_t items = 1;
  std::size_t requests = 1;
  Popularity popularity;
  std::uint64_t seed = 0;
  Timestamp start = 0;
  Seconds span = 3600;
};

/// Users are chosen uniformly; item i has popularity rank i+1. Timestamps are
/// uniform over [start, start + span). Output is sorted. Ids are "u<k>" and
/// "i<k>".
Trace generate_synthetic_trace(const SyntheticTraceSpec& spec);

/// Users are partitioned into interest groups, each with a private item pool.
/// Most requests go to the user's own pool; with `cross_rate` probability a
/// user additionally touches one item from a random other group's pool.
struct ClusteredTraceSpec {
  std::size_t groups = 40;
  std::size_t users_per_group = 10;
  std::size_t items_per_group = 15;
  std::size_t requests_per_user = 10;
  double cross_rate = 0.3;
  std::uint64_t seed = 0;
  Timestamp start = 0;
  Seconds span = 3600;
};

Trace generate_clustered_trace(const ClusteredTraceSpec& spec);

}  // namespace dsg
