#include "dsg/trace.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include "dsg/rng.hpp"

namespace dsg {

std::uint32_t IdTable::intern(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> IdTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool is_valid_id(std::string_view id) {
  if (id.empty() || id.front() == '#') return false;
  return id.find_first_of(",\r\n") == std::string_view::npos;
}

Trace::Trace()
    : users_(std::make_shared<IdTable>()), items_(std::make_shared<IdTable>()) {}

Trace::Trace(std::shared_ptr<const IdTable> users, std::shared_ptr<const IdTable> items,
             std::vector<Request> requests, bool sorted)
    : users_(std::move(users)),
      items_(std::move(items)),
      requests_(std::move(requests)),
      sorted_(sorted) {}

Trace Trace::from_records(const std::vector<TraceRecord>& records) {
  auto users = std::make_shared<IdTable>();
  auto items = std::make_shared<IdTable>();
  std::vector<Request> requests;
  requests.reserve(records.size());
  bool sorted = true;
  for (const auto& r : records) {
    if (!is_valid_id(r.user_id) || !is_valid_id(r.item_id)) {
      throw PreconditionError("invalid id in record (" + r.user_id + "," + r.item_id + ")");
    }
    if (r.timestamp < 0) throw PreconditionError("negative timestamp");
    if (!requests.empty() && r.timestamp < requests.back().timestamp) sorted = false;
    requests.push_back({users->intern(r.user_id), items->intern(r.item_id), r.timestamp});
  }
  return Trace(std::move(users), std::move(items), std::move(requests), sorted);
}

TraceRecord Trace::record(std::size_t i) const {
  const Request& r = requests_[i];
  return {users_->name(r.user), items_->name(r.item), r.timestamp};
}

std::vector<TraceRecord> Trace::records() const {
  std::vector<TraceRecord> out;
  out.reserve(requests_.size());
  for (std::size_t i = 0; i < requests_.size(); ++i) out.push_back(record(i));
  return out;
}

void Trace::sort_by_time() {
  std::stable_sort(requests_.begin(), requests_.end(),
                   [](const Request& a, const Request& b) { return a.timestamp < b.timestamp; });
  sorted_ = true;
}

Trace Trace::with_requests(std::vector<Request> requests, bool sorted) const {
  return Trace(users_, items_, std::move(requests), sorted);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

ParseResult parse_trace(std::string_view text, const ParseOptions& options) {
  auto users = std::make_shared<IdTable>();
  auto items = std::make_shared<IdTable>();
  std::vector<Request> requests;
  std::vector<ParseDiagnostic> diagnostics;
  std::size_t data_lines = 0;
  bool sorted = true;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = strip_cr(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;

    if (is_blank(line) || line.front() == '#') continue;
    ++data_lines;

    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      diagnostics.push_back({line_no, "expected 3 comma-separated fields"});
      continue;
    }
    std::string_view user = line.substr(0, c1);
    std::string_view item = line.substr(c1 + 1, c2 - c1 - 1);
    std::string_view ts = line.substr(c2 + 1);
    if (!is_valid_id(user) || !is_valid_id(item)) {
      diagnostics.push_back({line_no, "empty or invalid id"});
      continue;
    }
    Timestamp t = 0;
    auto [end, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), t);
    if (ec != std::errc() || end != ts.data() + ts.size()) {
      diagnostics.push_back({line_no, "timestamp is not an integer"});
      continue;
    }
    if (t < 0) {
      diagnostics.push_back({line_no, "timestamp is negative"});
      continue;
    }
    if (!requests.empty() && t < requests.back().timestamp) sorted = false;
    requests.push_back({users->intern(user), items->intern(item), t});
  }

  if (data_lines > 0 && requests.empty()) {
    throw ParseError("all " + std::to_string(data_lines) + " data lines rejected",
                     std::move(diagnostics));
  }

  Trace trace(std::move(users), std::move(items), std::move(requests), sorted);
  if (options.sort && !trace.sorted()) trace.sort_by_time();
  return {std::move(trace), std::move(diagnostics)};
}

ParseResult parse_trace(std::istream& in, const ParseOptions& options) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_trace(text, options);
}

namespace {

std::string inflate_gzip(const std::string& compressed) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) throw IoError("inflateInit2 failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());

  std::string out;
  char buffer[1 << 16];
  int ret = Z_OK;
  while (ret != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof(buffer);
    ret = inflate(&zs, Z_NO_FLUSH);
    if (ret == Z_STREAM_END && zs.avail_in > 0) {
      // Concatenated gzip members.
      out.append(buffer, sizeof(buffer) - zs.avail_out);
      inflateReset(&zs);
      ret = Z_OK;
      continue;
    }
    if (ret != Z_OK && ret != Z_STREAM_END) {
      inflateEnd(&zs);
      throw IoError("corrupt gzip stream");
    }
    out.append(buffer, sizeof(buffer) - zs.avail_out);
    if (ret == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw IoError("truncated gzip stream");
    }
  }
  inflateEnd(&zs);
  return out;
}

}  // namespace

std::string read_input_bytes(const std::string& path) {
  std::string raw;
  if (path == "-") {
    raw.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    raw.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path);
  }
  if (raw.size() >= 2 && static_cast<unsigned char>(raw[0]) == 0x1f &&
      static_cast<unsigned char>(raw[1]) == 0x8b) {
    return inflate_gzip(raw);
  }
  return raw;
}

ParseResult read_trace_file(const std::string& path, const ParseOptions& options) {
  return parse_trace(read_input_bytes(path), options);
}

void render_trace(const Trace& trace, std::ostream& out) {
  for (const Request& r : trace.requests()) {
    out << trace.users().name(r.user) << ',' << trace.items().name(r.item) << ','
        << r.timestamp << '\n';
  }
}

std::string render_trace(const Trace& trace) {
  std::ostringstream out;
  render_trace(trace, out);
  return out.str();
}

TraceSummary summarize(const Trace& trace) {
  if (trace.empty()) throw EmptyTraceError("trace has no records");
  std::vector<bool> seen_user(trace.users().size(), false);
  std::vector<bool> seen_item(trace.items().size(), false);
  TraceSummary s;
  Timestamp lo = trace.requests().front().timestamp;
  Timestamp hi = lo;
  for (const Request& r : trace.requests()) {
    if (!seen_user[r.user]) {
      seen_user[r.user] = true;
      ++s.user_count;
    }
    if (!seen_item[r.item]) {
      seen_item[r.item] = true;
      ++s.request_count_distinct;
    }
    lo = std::min(lo, r.timestamp);
    hi = std::max(hi, r.timestamp);
  }
  s.request_count_all = trace.size();
  s.duration = hi - lo;
  return s;
}

// ---------------------------------------------------------------------------
// Windowing

Timestamp default_origin(const Trace& trace) {
  if (trace.empty()) return 0;
  if (trace.sorted()) return trace.requests().front().timestamp;
  Timestamp lo = trace.requests().front().timestamp;
  for (const Request& r : trace.requests()) lo = std::min(lo, r.timestamp);
  return lo;
}

std::vector<WindowSlice> window_slices(const Trace& trace, Seconds length, Timestamp origin) {
  if (length <= 0) throw PreconditionError("window length must be positive");
  if (!trace.sorted()) throw PreconditionError("window_slices requires a sorted trace");
  std::vector<WindowSlice> out;
  if (trace.empty()) return out;
  const auto& reqs = trace.requests();
  if (reqs.front().timestamp < origin) {
    throw PreconditionError("record at t=" + std::to_string(reqs.front().timestamp) +
                            " precedes window origin " + std::to_string(origin));
  }
  const std::int64_t windows = (reqs.back().timestamp - origin) / length + 1;
  out.reserve(static_cast<std::size_t>(windows));
  std::size_t pos = 0;
  for (std::int64_t k = 0; k < windows; ++k) {
    TimeWindow w{origin + k * length, origin + (k + 1) * length};
    std::size_t end = pos;
    while (end < reqs.size() && reqs[end].timestamp < w.end) ++end;
    std::vector<Request> part(reqs.begin() + static_cast<std::ptrdiff_t>(pos),
                              reqs.begin() + static_cast<std::ptrdiff_t>(end));
    out.push_back({w, trace.with_requests(std::move(part), true)});
    pos = end;
  }
  return out;
}

Trace slice(const Trace& trace, const TimeWindow& window) {
  if (!trace.sorted()) throw PreconditionError("slice requires a sorted trace");
  if (window.start >= window.end) throw PreconditionError("window start must precede end");
  const auto& reqs = trace.requests();
  auto lo = std::lower_bound(reqs.begin(), reqs.end(), window.start,
                             [](const Request& r, Timestamp t) { return r.timestamp < t; });
  auto hi = std::lower_bound(lo, reqs.end(), window.end,
                             [](const Request& r, Timestamp t) { return r.timestamp < t; });
  return trace.with_requests(std::vector<Request>(lo, hi), true);
}

// ---------------------------------------------------------------------------
// Synthetic traces

namespace {

struct TableBuilder {
  std::shared_ptr<IdTable> users = std::make_shared<IdTable>();
  std::shared_ptr<IdTable> items = std::make_shared<IdTable>();
};

Trace finish(TableBuilder& tables, std::vector<Request> requests) {
  Trace trace(tables.users, tables.items, std::move(requests), false);
  trace.sort_by_time();
  return trace;
}

}  // namespace

Trace generate_synthetic_trace(const SyntheticTraceSpec& spec) {
  if (spec.users == 0 || spec.items == 0 || spec.requests == 0) {
    throw PreconditionError("synthetic trace counts must be >= 1");
  }
  if (spec.span <= 0) throw PreconditionError("synthetic trace span must be positive");
  if (spec.start < 0) throw PreconditionError("synthetic trace start must be >= 0");

  TableBuilder tables;
  for (std::size_t u = 0; u < spec.users; ++u) tables.users->intern("u" + std::to_string(u));
  for (std::size_t i = 0; i < spec.items; ++i) tables.items->intern("i" + std::to_string(i));

  std::vector<double> cdf;
  if (spec.popularity.law == Popularity::Law::kZipf) {
    cdf.resize(spec.items);
    double total = 0.0;
    for (std::size_t i = 0; i < spec.items; ++i) {
      total += 1.0 / std::pow(static_cast<double>(i + 1), spec.popularity.exponent);
      cdf[i] = total;
    }
    for (double& c : cdf) c /= total;
  }

  Rng rng(spec.seed);
  std::vector<Request> requests;
  requests.reserve(spec.requests);
  for (std::size_t r = 0; r < spec.requests; ++r) {
    const auto user = static_cast<std::uint32_t>(rng.uniform_below(spec.users));
    std::uint32_t item;
    if (cdf.empty()) {
      item = static_cast<std::uint32_t>(rng.uniform_below(spec.items));
    } else {
      const double x = rng.uniform01();
      auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
      item = static_cast<std::uint32_t>(
          std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(spec.items) - 1));
    }
    const Timestamp t =
        spec.start + static_cast<Timestamp>(rng.uniform_below(static_cast<std::uint64_t>(spec.span)));
    requests.push_back({user, item, t});
  }
  return finish(tables, std::move(requests));
}

Trace generate_clustered_trace(const ClusteredTraceSpec& spec) {
  if (spec.groups == 0 || spec.users_per_group == 0 || spec.items_per_group == 0 ||
      spec.requests_per_user == 0) {
    throw PreconditionError("clustered trace counts must be >= 1");
  }
  if (spec.span <= 0) throw PreconditionError("clustered trace span must be positive");
  if (spec.cross_rate < 0.0 || spec.cross_rate > 1.0) {
    throw PreconditionError("cross_rate must lie in [0, 1]");
  }

  TableBuilder tables;
  const std::size_t users = spec.groups * spec.users_per_group;
  const std::size_t items = spec.groups * spec.items_per_group;
  for (std::size_t u = 0; u < users; ++u) tables.users->intern("u" + std::to_string(u));
  for (std::size_t i = 0; i < items; ++i) tables.items->intern("i" + std::to_string(i));

  Rng rng(spec.seed);
  auto stamp = [&] {
    return spec.start + static_cast<Timestamp>(rng.uniform_below(static_cast<std::uint64_t>(spec.span)));
  };
  std::vector<Request> requests;
  for (std::size_t u = 0; u < users; ++u) {
    const std::size_t group = u / spec.users_per_group;
    const std::size_t pool = group * spec.items_per_group;
    for (std::size_t r = 0; r < spec.requests_per_user; ++r) {
      const auto item = static_cast<std::uint32_t>(pool + rng.uniform_below(spec.items_per_group));
      requests.push_back({static_cast<std::uint32_t>(u), item, stamp()});
    }
    if (spec.groups > 1 && rng.uniform01() < spec.cross_rate) {
      std::size_t other = rng.uniform_below(spec.groups - 1);
      if (other >= group) ++other;
      const auto item = static_cast<std::uint32_t>(other * spec.items_per_group +
                                                   rng.uniform_below(spec.items_per_group));
      requests.push_back({static_cast<std::uint32_t>(u), item, stamp()});
    }
  }
  return finish(tables, std::move(requests));
}

}  // namespace dsg
