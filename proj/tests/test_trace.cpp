#include "dsg/trace.hpp"

#include <gtest/gtest.h>
#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "oracles.hpp"

namespace dsg {
namespace {

const std::vector<TraceRecord> kSixRecords = {
    {"u1", "f1", 0}, {"u1", "f2", 1}, {"u2", "f2", 2},
    {"u2", "f3", 3}, {"u3", "f1", 4}, {"u3", "f2", 5},
};

std::string six_record_text() {
  return "u1,f1,0\nu1,f2,1\nu2,f2,2\nu2,f3,3\nu3,f1,4\nu3,f2,5\n";
}

TEST(ParseTrace, TwoRecords) {
  auto r = parse_trace("u1,f1,100\nu2,f1,105");
  EXPECT_EQ(r.trace.size(), 2u);
  EXPECT_TRUE(r.diagnostics.empty());
  auto s = summarize(r.trace);
  EXPECT_EQ(s.user_count, 2u);
  EXPECT_EQ(s.request_count_distinct, 1u);
  EXPECT_EQ(r.trace.record(1), (TraceRecord{"u2", "f1", 105}));
}

TEST(ParseTrace, AllLinesRejectedIsFatalWithLineDiagnostic) {
  try {
    parse_trace("u1,f1,abc");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].line, 1u);
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
  }
}

TEST(ParseTrace, BadLinesAreReportedAndSkipped) {
  const std::string text =
      "# comment\n"
      "u1,f1,10\n"
      "u2,f2\n"           // field count
      "u3,f3,1.5\n"       // non-integer
      ",f4,3\n"           // empty id
      "u5,f5,-1\n"        // negative
      "u6,f6,7,extra\n"   // field count
      "\n"
      "u7,f7,20\r\n";
  auto r = parse_trace(text);
  EXPECT_EQ(r.trace.size(), 2u);
  std::vector<std::size_t> lines;
  for (const auto& d : r.diagnostics) lines.push_back(d.line);
  EXPECT_EQ(lines, (std::vector<std::size_t>{3, 4, 5, 6, 7}));
  EXPECT_EQ(r.trace.record(1).user_id, "u7");
}

TEST(ParseTrace, EmptyInputIsAnEmptyTraceNotAParseError) {
  auto r = parse_trace("# only a comment\n\n");
  EXPECT_TRUE(r.trace.empty());
  EXPECT_THROW(summarize(r.trace), EmptyTraceError);
}

TEST(ParseTrace, SortsByTimeStablyWhenRequested) {
  auto sorted = parse_trace("a,x,5\nb,y,1\nc,z,5\n");
  ASSERT_TRUE(sorted.trace.sorted());
  EXPECT_EQ(sorted.trace.record(0).user_id, "b");
  EXPECT_EQ(sorted.trace.record(1).user_id, "a");
  EXPECT_EQ(sorted.trace.record(2).user_id, "c");

  auto raw = parse_trace("a,x,5\nb,y,1\n", {.sort = false});
  EXPECT_FALSE(raw.trace.sorted());
  EXPECT_EQ(raw.trace.record(0).user_id, "a");
}

TEST(ParseTrace, SixLineFixture) {
  auto r = parse_trace(six_record_text());
  auto s = summarize(r.trace);
  EXPECT_EQ(s.user_count, 3u);
  EXPECT_EQ(s.request_count_all, 6u);
  EXPECT_EQ(s.request_count_distinct, 3u);
}

TEST(Summarize, Examples) {
  EXPECT_EQ(summarize(Trace::from_records(kSixRecords)), (TraceSummary{3, 6, 3, 5}));
  EXPECT_EQ(summarize(Trace::from_records({{"u", "i", 42}})), (TraceSummary{1, 1, 1, 0}));
  std::vector<TraceRecord> same_item;
  for (int u = 0; u < 5; ++u) same_item.push_back({"u" + std::to_string(u), "hot", u});
  auto s = summarize(Trace::from_records(same_item));
  EXPECT_EQ(s.request_count_distinct, 1u);
  EXPECT_EQ(s.request_count_all, 5u);
}

TEST(Summarize, PermutationInvariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto records = oracle::random_records(20, 40, 200, rng);
    const auto expected = summarize(Trace::from_records(records));
    std::shuffle(records.begin(), records.end(), rng);
    EXPECT_EQ(summarize(Trace::from_records(records)), expected);
  }
}

TEST(RenderTrace, RoundTripsRandomTraces) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto records = oracle::random_records(15, 30, 120, rng);
    const Trace t = Trace::from_records(records);
    const auto back = parse_trace(render_trace(t), {.sort = false});
    EXPECT_TRUE(back.diagnostics.empty());
    EXPECT_EQ(back.trace.records(), records);
  }
}

TEST(Trace, FromRecordsRejectsInvalidIds) {
  EXPECT_THROW(Trace::from_records({{"", "i", 0}}), PreconditionError);
  EXPECT_THROW(Trace::from_records({{"a,b", "i", 0}}), PreconditionError);
  EXPECT_THROW(Trace::from_records({{"#a", "i", 0}}), PreconditionError);
  EXPECT_THROW(Trace::from_records({{"a", "i", -3}}), PreconditionError);
}

TEST(WindowSlices, BoundaryArithmetic) {
  const Trace t = Trace::from_records({{"a", "x", 0}, {"b", "x", 1700}, {"c", "x", 1800}, {"d", "x", 3599}});
  const auto w = window_slices(t, 1800, 0);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0].window, (TimeWindow{0, 1800}));
  EXPECT_EQ(w[0].trace.size(), 2u);
  EXPECT_EQ(w[0].trace.record(1).timestamp, 1700);
  EXPECT_EQ(w[1].trace.size(), 2u);
  EXPECT_EQ(w[1].trace.record(0).timestamp, 1800);
}

TEST(WindowSlices, SingleWindowAndEmptyGaps) {
  const Trace one = Trace::from_records({{"a", "x", 10}, {"b", "y", 20}});
  EXPECT_EQ(window_slices(one, 100, 0).size(), 1u);

  const Trace gap = Trace::from_records({{"a", "x", 0}, {"b", "y", 350}});
  const auto w = window_slices(gap, 100, 0);
  ASSERT_EQ(w.size(), 4u);
  EXPECT_TRUE(w[1].trace.empty());
  EXPECT_TRUE(w[2].trace.empty());
  EXPECT_EQ(w[3].window.start, 300);
}

TEST(WindowSlices, HalfYearInWeeks) {
  constexpr Seconds kDay = 86400;
  SyntheticTraceSpec spec;
  spec.users = 30;
  spec.items = 500;
  spec.requests = 20000;
  spec.span = 180 * kDay;
  spec.seed = 9;
  const Trace t = generate_synthetic_trace(spec);
  const auto w = window_slices(t, 7 * kDay, 0);
  EXPECT_EQ(w.size(), 26u);
  EXPECT_LT(w.back().window.start + 7 * kDay - 180 * kDay, 7 * kDay);  // last one partial
}

TEST(WindowSlices, PartitionTheRecordMultiset) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Trace t = Trace::from_records(oracle::random_records(10, 20, 300, rng));
    t.sort_by_time();
    const Seconds length = 1 + static_cast<Seconds>(rng() % 200);
    const auto slices = window_slices(t, length, 0);
    std::vector<TraceRecord> joined;
    for (const auto& s : slices) {
      for (const auto& r : s.trace.records()) {
        EXPECT_TRUE(s.window.contains(r.timestamp));
        joined.push_back(r);
      }
    }
    EXPECT_EQ(joined, t.records());
  }
}

TEST(WindowSlices, Preconditions) {
  const Trace unsorted = parse_trace("a,x,5\nb,y,1\n", {.sort = false}).trace;
  EXPECT_THROW(window_slices(unsorted, 10, 0), PreconditionError);
  const Trace t = Trace::from_records({{"a", "x", 5}});
  EXPECT_THROW(window_slices(t, 0, 0), PreconditionError);
  EXPECT_THROW(window_slices(t, 10, 6), PreconditionError);
}

TEST(Slice, SelectsHalfOpenInterval) {
  const Trace t = Trace::from_records({{"a", "x", 0}, {"b", "x", 10}, {"c", "x", 20}});
  const Trace s = slice(t, {10, 20});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.record(0).user_id, "b");
}

TEST(SyntheticTrace, DegenerateSpace) {
  SyntheticTraceSpec spec{.users = 1, .items = 1, .requests = 3, .seed = 7};
  const Trace t = generate_synthetic_trace(spec);
  ASSERT_EQ(t.size(), 3u);
  for (const auto& r : t.records()) {
    EXPECT_EQ(r.user_id, "u0");
    EXPECT_EQ(r.item_id, "i0");
  }
}

TEST(SyntheticTrace, SeedDeterminesBytes) {
  SyntheticTraceSpec spec{.users = 20, .items = 50, .requests = 500, .seed = 42};
  EXPECT_EQ(render_trace(generate_synthetic_trace(spec)), render_trace(generate_synthetic_trace(spec)));
  auto other = spec;
  other.seed = 43;
  EXPECT_NE(render_trace(generate_synthetic_trace(spec)), render_trace(generate_synthetic_trace(other)));
}

TEST(SyntheticTrace, ZipfRankFrequencySlopeIsNegative) {
  SyntheticTraceSpec spec{.users = 100, .items = 1000, .requests = 10000,
                          .popularity = Popularity::zipf(1.0), .seed = 1};
  const Trace t = generate_synthetic_trace(spec);
  std::map<std::string, int> freq;
  for (const auto& r : t.records()) ++freq[r.item_id];
  std::vector<int> counts;
  for (auto& [k, v] : freq) counts.push_back(v);
  std::sort(counts.rbegin(), counts.rend());
  // Least squares slope of log(freq) against log(rank).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(static_cast<double>(counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_LT(slope, 0.0);
}

TEST(SyntheticTrace, RejectsZeroCounts) {
  EXPECT_THROW(generate_synthetic_trace({.users = 0}), PreconditionError);
  EXPECT_THROW(generate_synthetic_trace({.items = 0}), PreconditionError);
  EXPECT_THROW(generate_synthetic_trace({.requests = 0}), PreconditionError);
}

TEST(SyntheticTrace, TimestampsStayInSpan) {
  SyntheticTraceSpec spec{.users = 5, .items = 5, .requests = 1000, .seed = 2, .start = 100, .span = 50};
  const Trace t = generate_synthetic_trace(spec);
  EXPECT_TRUE(t.sorted());
  for (const auto& r : t.requests()) {
    EXPECT_GE(r.timestamp, 100);
    EXPECT_LT(r.timestamp, 150);
  }
}

TEST(ClusteredTrace, GroupsUsePrivatePools) {
  ClusteredTraceSpec spec{.groups = 4, .users_per_group = 3, .items_per_group = 5,
                          .requests_per_user = 4, .cross_rate = 0.0, .seed = 1};
  const Trace t = generate_clustered_trace(spec);
  EXPECT_EQ(t.size(), 4u * 3u * 4u);
  for (const auto& r : t.requests()) {
    const auto user = std::stoul(t.users().name(r.user).substr(1));
    const auto item = std::stoul(t.items().name(r.item).substr(1));
    EXPECT_EQ(user / 3, item / 5);
  }
}

TEST(ReadTraceFile, GzipMatchesPlain) {
  const auto dir = std::filesystem::temp_directory_path() / "dsg_test_trace_gz";
  std::filesystem::create_directories(dir);
  const std::string text = six_record_text();
  {
    std::ofstream(dir / "plain.csv") << text;
    gzFile gz = gzopen((dir / "t.csv.gz").c_str(), "wb");
    gzwrite(gz, text.data(), static_cast<unsigned>(text.size()));
    gzclose(gz);
  }
  const auto plain = read_trace_file((dir / "plain.csv").string());
  const auto zipped = read_trace_file((dir / "t.csv.gz").string());
  EXPECT_EQ(plain.trace.records(), zipped.trace.records());
  EXPECT_THROW(read_trace_file((dir / "missing.csv").string()), IoError);
}

}  // namespace
}  // namespace dsg
