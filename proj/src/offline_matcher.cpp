#include "apm/offline_matcher.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "apm/exact_kernels.hpp"
#include "apm/shortcut_path.hpp"

namespace apm {

const char* to_string(OutputMode mode) noexcept {
  switch (mode) {
    case OutputMode::exact:
      return "exact";
    case OutputMode::approx:
      return "approx";
    case OutputMode::carried:
      return "carried";
  }
  return "?";
}

__extension__ typedef __int128 Wide;

Index three_quarter_cutoff(Index w) {
  if (w <= 0) return 0;
  const auto cube = static_cast<Wide>(w) * w * w;
  auto c = static_cast<Index>(std::floor(std::pow(static_cast<double>(w), 0.75)));
  const auto fourth = [](Index x) {
    const auto x2 = static_cast<Wide>(x) * x;
    return x2 * x2;
  };
  while (c > 0 && fourth(c) > cube) --c;
  while (fourth(c + 1) <= cube) ++c;
  return c;
}

NormalizedParams normalize_params(Index w, Index n, const ParamOverrides& overrides) {
  if (w < 16) {
    throw std::invalid_argument("pattern length " + std::to_string(w) +
                                " is too short for the approximate pipeline (need >= 16); "
                                "use the exact matcher instead");
  }
  if (n < w) {
    throw std::invalid_argument("text shorter than the pattern; use the exact matcher instead");
  }
  NormalizedParams out;
  CoverParams& p = out.cover;
  p.w1 = overrides.w1.value_or(floor_pow2_of_root(w, 1, 4));
  p.w2 = overrides.w2.value_or(floor_pow2_of_root(w, 1, 2));
  p.d = overrides.d.value_or(std::pow(static_cast<double>(w), 0.25));
  p.inv_theta = overrides.inv_theta.value_or(std::min(ceil_pow2_of_root(w, 1, 4), p.w1));
  p.c0 = overrides.c0.value_or(2.0);
  p.c1 = overrides.c1.value_or(1.0);
  p.seed = overrides.seed.value_or(0);
  p.n = n;
  p.log_n = overrides.log_n.value_or(std::max(1.0, std::log2(static_cast<double>(n))));
  p.extension_box_mode = overrides.extension_box_mode.value_or(ExtensionBoxMode::as_written);
  if (p.w2 <= 0 || p.w2 > w) throw std::invalid_argument("w2 must lie in 1..w");
  p.w = (w / p.w2) * p.w2;
  p.validate();

  out.pattern_len = w;
  out.truncated_len = p.w;
  out.cutoff = three_quarter_cutoff(w);
  out.prefix_len = (n / p.w) * p.w;
  out.suffix_start = n - out.prefix_len;
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct PartJob {
  Index part_index = 0;
  Index offset = 0;
  int run = 0;  // 0 = prefix run, 1 = suffix run
};

struct PartResult {
  std::vector<ShortcutEdge> edges;
  BoxBatch boxes;  // only filled when tracing
  Index dense_boxes = 0;
  Index extension_boxes = 0;
};

PartResult cover_one(std::string_view text, std::string_view pattern, const CoverParams& params,
                     const PartJob& job, bool keep_boxes) {
  PartResult result;
  const auto part = text.substr(static_cast<std::size_t>(job.offset), static_cast<std::size_t>(params.w));
  cover_part(part, pattern, params, PartContext{job.part_index, job.offset},
             [&](const EmittedBox& b) {
               if (b.provenance == Provenance::dense_step5) {
                 ++result.dense_boxes;
               } else {
                 ++result.extension_boxes;
               }
               if (keep_boxes) result.boxes.push_back(b);
               if (b.box.i_span.width() != b.box.j_span.width()) return;
               if (auto e = box_to_shortcut(b.box)) result.edges.push_back(*e);
             });
  return result;
}

}  // namespace

MatchOutput approx_match(std::string_view text, std::string_view pattern,
                         const NormalizedParams& params, const OfflineOptions& options) {
  const auto n = static_cast<Index>(text.size());
  const Index w = params.pattern_len;
  const Index w_used = params.truncated_len;
  if (static_cast<Index>(pattern.size()) != w || params.cover.n != n) {
    throw std::invalid_argument("parameters were normalized for different input sizes");
  }
  const auto covered_pattern = pattern.substr(0, static_cast<std::size_t>(w_used));

  MatchOutput out;
  out.pattern_len = w;
  out.truncated_len = w_used;

  auto start = Clock::now();
  const ThresholdTable table =
      options.skip_exact ? ThresholdTable{std::vector<std::optional<Cost>>(static_cast<std::size_t>(n)), params.cutoff, {}}
                         : threshold_table(text, pattern, params.cutoff);
  out.stats.exact_seconds = seconds_since(start);

  std::vector<PartJob> jobs;
  for (Index off = 0; off + w_used <= params.prefix_len; off += w_used) {
    jobs.push_back(PartJob{static_cast<Index>(jobs.size()), off, 0});
  }
  if (params.suffix_start > 0) {
    for (Index off = params.suffix_start; off + w_used <= n; off += w_used) {
      jobs.push_back(PartJob{static_cast<Index>(jobs.size()), off, 1});
    }
  }
  out.stats.parts = static_cast<Index>(jobs.size());

  start = Clock::now();
  std::vector<PartResult> results(jobs.size());
  const bool keep_boxes = static_cast<bool>(options.trace);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(jobs.size())));
  if (workers <= 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      results[k] = cover_one(text, covered_pattern, params.cover, jobs[k], keep_boxes);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
          results[k] = cover_one(text, covered_pattern, params.cover, jobs[k], keep_boxes);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  out.stats.cover_seconds = seconds_since(start);

  start = Clock::now();
  std::vector<ShortcutEdge> run_edges[2];
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    auto& r = results[k];
    out.stats.dense_boxes += r.dense_boxes;
    out.stats.extension_boxes += r.extension_boxes;
    out.stats.shortcut_edges += static_cast<Index>(r.edges.size());
    auto& dst = run_edges[jobs[k].run];
    dst.insert(dst.end(), r.edges.begin(), r.edges.end());
    if (keep_boxes) {
      for (const auto& b : r.boxes) options.trace(b);
    }
    r = PartResult{};
  }
  for (auto& edges : run_edges) std::sort(edges.begin(), edges.end());
  const auto prefix_sweep = sweep_min_cost(run_edges[0], n, w_used);
  std::vector<Cost> suffix_sweep;
  if (params.suffix_start > 0) suffix_sweep = sweep_min_cost(run_edges[1], n, w_used);
  out.stats.sweep_seconds = seconds_since(start);

  // A path to (t, w') extends to (t, w) with w - w' extra vertical steps.
  const Cost truncation_slack = w - w_used;
  const auto sweep_at = [&](Index t) {
    const auto& sweep = (t <= params.prefix_len || suffix_sweep.empty()) ? prefix_sweep : suffix_sweep;
    return sweep[static_cast<std::size_t>(t)] + truncation_slack;
  };

  out.values.resize(static_cast<std::size_t>(n));
  out.modes.resize(static_cast<std::size_t>(n));
  const Index w2 = params.cover.w2;
  for (Index t = 1; t <= n; ++t) {
    const auto k = static_cast<std::size_t>(t - 1);
    if (table.values[k]) {
      out.values[k] = *table.values[k];
      out.modes[k] = OutputMode::exact;
      ++out.stats.exact_positions;
    } else if (!options.paper_grid || t % w2 == 0) {
      out.values[k] = sweep_at(t);
      out.modes[k] = OutputMode::approx;
    } else {
      out.values[k] = sweep_at((t / w2) * w2);
      out.modes[k] = OutputMode::carried;
    }
  }
  return out;
}

}  // namespace apm
