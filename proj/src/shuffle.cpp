#include "dsg/shuffle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <string>

#include "dsg/rng.hpp"

namespace dsg {

std::string_view to_string(ShuffleVariant v) {
  switch (v) {
    case ShuffleVariant::kST1:
      return "ST1";
    case ShuffleVariant::kST2:
      return "ST2";
    case ShuffleVariant::kST3:
      return "ST3";
  }
  return "?";
}

ShuffleVariant parse_shuffle_variant(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "ST1") return ShuffleVariant::kST1;
  if (upper == "ST2") return ShuffleVariant::kST2;
  if (upper == "ST3") return ShuffleVariant::kST3;
  throw PreconditionError("unknown shuffle mode '" + std::string(name) + "'");
}

namespace {

template <typename Get, typename Set>
void fisher_yates(std::vector<Request>& rows, std::uint64_t seed, Get get, Set set) {
  Rng rng(seed);
  for (std::size_t i = rows.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_below(i));
    const auto a = get(rows[i - 1]);
    set(rows[i - 1], get(rows[j]));
    set(rows[j], a);
  }
}

void shuffle_users(std::vector<Request>& rows, std::uint64_t seed) {
  fisher_yates(
      rows, seed, [](const Request& r) { return r.user; },
      [](Request& r, std::uint32_t v) { r.user = v; });
}

void shuffle_items(std::vector<Request>& rows, std::uint64_t seed) {
  fisher_yates(
      rows, seed, [](const Request& r) { return r.item; },
      [](Request& r, std::uint32_t v) { r.item = v; });
}

}  // namespace

Trace shuffle_trace(const Trace& trace, const ShuffleMode& mode) {
  if (trace.empty()) throw EmptyTraceError("cannot shuffle an empty trace");
  std::vector<Request> rows = trace.requests();
  const std::uint64_t user_seed = derive_seed(mode.seed, 1);
  const std::uint64_t item_seed = derive_seed(mode.seed, 2);
  switch (mode.variant) {
    case ShuffleVariant::kST1:
      shuffle_users(rows, user_seed);
      shuffle_items(rows, item_seed);
      break;
    case ShuffleVariant::kST2:
      shuffle_users(rows, user_seed);
      break;
    case ShuffleVariant::kST3:
      shuffle_items(rows, item_seed);
      break;
  }
  return trace.with_requests(std::move(rows), trace.sorted());
}

std::uint64_t replicate_seed(std::uint64_t seed, ShuffleVariant variant, std::size_t replicate) {
  return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(variant) + 1), replicate);
}

namespace {

NullModelRow measure(const Trace& full, const NullModelSpec& spec, std::string source,
                     std::size_t replicate, std::uint64_t seed) {
  const Trace window_trace = spec.window ? slice(full, *spec.window) : full;
  const TimeWindow window =
      spec.window ? *spec.window
                  : TimeWindow{default_origin(full),
                               full.empty() ? 1 : full.requests().back().timestamp + 1};
  const DataSharingGraph g = build_dsg(window_trace, spec.threshold, window);
  NullModelRow row;
  row.source = std::move(source);
  row.replicate = replicate;
  row.seed = seed;
  row.metrics = small_world_report(g, spec.path_mode, spec.report);
  row.weights = weight_distribution(g);
  return row;
}

SourceAggregate aggregate(const std::string& source, const std::vector<NullModelRow>& rows) {
  SourceAggregate a;
  a.source = source;
  double cc_sum = 0, cc_sq = 0, l_sum = 0, l_sq = 0;
  for (const auto& r : rows) {
    if (r.source != source) continue;
    ++a.rows;
    a.nodes_mean += static_cast<double>(r.metrics.node_count);
    a.components_mean += static_cast<double>(r.metrics.component_count);
    a.weight_median_mean += r.weights.median.value_or(0.0);
    if (r.metrics.ratio_cc && r.metrics.ratio_l) {
      ++a.defined;
      cc_sum += *r.metrics.ratio_cc;
      cc_sq += *r.metrics.ratio_cc * *r.metrics.ratio_cc;
      l_sum += *r.metrics.ratio_l;
      l_sq += *r.metrics.ratio_l * *r.metrics.ratio_l;
    }
  }
  if (a.rows > 0) {
    const double n = static_cast<double>(a.rows);
    a.nodes_mean /= n;
    a.components_mean /= n;
    a.weight_median_mean /= n;
  }
  if (a.defined > 0) {
    const double n = static_cast<double>(a.defined);
    a.ratio_cc_mean = cc_sum / n;
    a.ratio_l_mean = l_sum / n;
    // Population standard deviation over replicates.
    a.ratio_cc_sd = std::sqrt(std::max(0.0, cc_sq / n - a.ratio_cc_mean * a.ratio_cc_mean));
    a.ratio_l_sd = std::sqrt(std::max(0.0, l_sq / n - a.ratio_l_mean * a.ratio_l_mean));
  }
  return a;
}

}  // namespace

NullModelComparison null_model_comparison(const Trace& trace, const NullModelSpec& spec) {
  if (spec.replicates < 1) throw PreconditionError("replicates must be >= 1");
  if (trace.empty()) throw EmptyTraceError("null model of an empty trace");
  if (spec.window && !trace.sorted()) throw PreconditionError("windowed null model needs a sorted trace");

  const std::size_t cells = spec.modes.size() * spec.replicates;
  std::vector<NullModelRow> shuffled(cells);
  std::vector<std::exception_ptr> failures(cells);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(cells); ++ci) {
    const auto cell = static_cast<std::size_t>(ci);
    const ShuffleVariant variant = spec.modes[cell / spec.replicates];
    const std::size_t rep = cell % spec.replicates;
    try {
      const std::uint64_t seed = replicate_seed(spec.seed, variant, rep);
      const Trace t = shuffle_trace(trace, {variant, seed});
      shuffled[cell] = measure(t, spec, std::string(to_string(variant)), rep, seed);
    } catch (...) {
      failures[cell] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  NullModelComparison out;
  out.rows.push_back(measure(trace, spec, "real", 0, spec.seed));
  for (auto& r : shuffled) out.rows.push_back(std::move(r));

  out.aggregates.push_back(aggregate("real", out.rows));
  for (ShuffleVariant v : spec.modes) {
    out.aggregates.push_back(aggregate(std::string(to_string(v)), out.rows));
  }
  return out;
}

}  // namespace dsg
