#include "apm/covering.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "apm/exact_kernels.hpp"

namespace apm {

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::dense_step5:
      return "dense";
    case Provenance::extension_step9:
      return "extension";
  }
  return "?";
}

namespace {

std::vector<Index> starts_with_step(Index step, Index w1, Index pattern_len) {
  std::vector<Index> starts;
  for (Index j = 1; j + w1 - 1 <= pattern_len; j += step) starts.push_back(j);
  return starts;
}

std::string_view window(std::string_view pattern, Index start, Index len) {
  return pattern.substr(static_cast<std::size_t>(start - 1), static_cast<std::size_t>(len));
}

bool within(std::string_view a, std::string_view b, Cost k) {
  return !banded_edit_distance(a, b, k).exceeds();
}

}  // namespace

std::vector<Index> aligned_starts(double eps, Index w1, Index pattern_len) {
  const auto step = std::max<Index>(static_cast<Index>(std::floor(eps / 8.0 * w1)), 1);
  return starts_with_step(step, w1, pattern_len);
}

ProbeOutcome dense_probe(std::string_view block, std::string_view pattern, const EpsLevel& level,
                         const CoverParams& params, std::mt19937_64& rng) {
  const auto w1 = static_cast<Index>(block.size());
  const auto starts = starts_with_step(level.aligned_step, w1, static_cast<Index>(pattern.size()));
  ProbeOutcome out;
  if (starts.empty()) return out;

  const auto population = static_cast<Index>(starts.size());
  const double requested_real = 8.0 * params.c0 * static_cast<double>(params.w) * params.log_n /
                                (static_cast<double>(level.eps_w1) * params.d);
  const auto requested = static_cast<Index>(std::ceil(requested_real));
  const double base_threshold = 0.5 * params.c0 * params.log_n;

  if (requested >= population) {
    // Testing everything once stands in for the oversized sample; scale the
    // acceptance bar to the same success fraction.
    out.exhaustive = true;
    out.threshold = base_threshold * static_cast<double>(population) / requested_real;
    for (const Index s : starts) {
      if (within(block, window(pattern, s, w1), level.eps_w1)) ++out.successes;
    }
    out.samples = population;
  } else {
    out.threshold = base_threshold;
    std::uniform_int_distribution<Index> pick(0, population - 1);
    for (Index draw = 0; draw < requested; ++draw) {
      const Index s = starts[static_cast<std::size_t>(pick(rng))];
      if (within(block, window(pattern, s, w1), level.eps_w1)) ++out.successes;
    }
    out.samples = requested;
  }
  out.dense = static_cast<double>(out.successes) >= out.threshold;
  return out;
}

std::vector<Span> find_close_blocks(std::string_view block, std::span<const BlockRef> candidates,
                                    Cost threshold) {
  std::vector<Span> out;
  for (const auto& c : candidates) {
    if (within(block, c.content, threshold)) out.push_back(c.span);
  }
  return out;
}

std::vector<Span> find_aligned_matches(std::string_view pattern, std::string_view block,
                                       const EpsLevel& level) {
  const auto w1 = static_cast<Index>(block.size());
  const auto flags = kbounded_end_positions(pattern, block, 3 * level.eps_w1);
  std::vector<Span> out;
  for (const Index s : starts_with_step(level.aligned_step, w1, static_cast<Index>(pattern.size()))) {
    if (flags.at(s + w1 - 1)) out.push_back(Span{s - 1, s - 1 + w1});
  }
  return out;
}

Span diagonal_extension(Index pattern_len, Index u_len, Index offset_in_u, Index v_start) {
  if (u_len > pattern_len) {
    throw std::invalid_argument("diagonal extension longer than the pattern");
  }
  if (offset_in_u < 1 || offset_in_u > u_len) {
    throw std::invalid_argument("offset must lie inside u");
  }
  const Index start = std::clamp(v_start - offset_in_u + 1, Index{1}, pattern_len - u_len + 1);
  return Span{start - 1, start - 1 + u_len};
}

DenseSet::DenseSet(int levels, Index blocks)
    : members_(static_cast<std::size_t>(levels), std::vector<char>(static_cast<std::size_t>(blocks), 0)),
      blocks_(blocks) {}

bool DenseSet::contains(int level, Index block) const {
  return members_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(block)) != 0;
}

void DenseSet::insert(int level, Index block) {
  auto& slot = members_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(block));
  if (slot) ++repeat_inserts_;
  slot = 1;
}

Index DenseSet::count(int level) const {
  const auto& m = members_.at(static_cast<std::size_t>(level));
  return static_cast<Index>(std::count(m.begin(), m.end(), 1));
}

DenseSet dense_phase(std::string_view part, std::string_view pattern, const CoverParams& params,
                     const PartContext& ctx, const BoxSink& sink) {
  const Index w1 = params.w1;
  const Index n1 = static_cast<Index>(part.size()) / w1;
  const int top = params.max_level();
  DenseSet dense(top + 1, n1);
  const KeyedRng keyed(params.seed);

  const auto block_of = [&](Index i) {
    return part.substr(static_cast<std::size_t>(i * w1), static_cast<std::size_t>(w1));
  };

  std::vector<BlockRef> candidates;
  for (Index i = 0; i < n1; ++i) {
    for (int j = top; j >= 0; --j) {
      if (dense.contains(j, i)) continue;
      const EpsLevel level = eps_level(params, j);
      auto rng = keyed.stream({static_cast<std::uint64_t>(ctx.part_index),
                               static_cast<std::uint64_t>(RngPhase::dense_probe),
                               static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
      if (!dense_probe(block_of(i), pattern, level, params, rng).dense) continue;

      candidates.clear();
      for (Index other = 0; other < n1; ++other) {
        if (dense.contains(j, other)) continue;
        candidates.push_back(
            BlockRef{Span{ctx.offset + other * w1, ctx.offset + (other + 1) * w1}, block_of(other)});
      }
      const auto close = find_close_blocks(block_of(i), candidates, 2 * level.eps_w1);
      const auto matches = find_aligned_matches(pattern, block_of(i), level);
      const Cost bound = 8 * level.eps_w1;
      for (const Span& x : close) {
        for (const Span& y : matches) {
          sink(EmittedBox{CertifiedBox{x, y, bound}, Provenance::dense_step5, j, ctx.part_index});
        }
        dense.insert(j, (x.lo - ctx.offset) / w1);
      }
    }
  }
  return dense;
}

std::pair<BoxBatch, DenseSet> dense_phase(std::string_view part, std::string_view pattern,
                                          const CoverParams& params, const PartContext& ctx) {
  BoxBatch batch;
  auto dense = dense_phase(part, pattern, params, ctx,
                           [&batch](const EmittedBox& b) { batch.push_back(b); });
  return {std::move(batch), std::move(dense)};
}

Index extension_sample_count(const CoverParams& params) {
  const double log_w = std::max(1.0, std::log2(static_cast<double>(params.w)));
  return static_cast<Index>(std::ceil(params.c1 * params.log_n * params.log_n * log_w));
}

void extend_superblock(std::string_view superblock, Index global_offset, std::string_view pattern,
                       const CoverParams& params, const EpsLevel& level,
                       std::span<const Index> candidates, std::mt19937_64& rng,
                       std::map<std::pair<Span, Span>, EmittedBox>& best) {
  if (candidates.empty()) return;
  const Index w1 = params.w1;
  const auto u_len = static_cast<Index>(superblock.size());
  const auto w = static_cast<Index>(pattern.size());

  std::set<Index> chosen;
  const Index requested = extension_sample_count(params);
  if (requested >= static_cast<Index>(candidates.size())) {
    chosen.insert(candidates.begin(), candidates.end());
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    for (Index draw = 0; draw < requested; ++draw) chosen.insert(candidates[pick(rng)]);
  }

  const Span i_span{global_offset, global_offset + u_len};
  const Cost ext_threshold = 3 * level.eps_w2(u_len);
  const auto starts = starts_with_step(level.aligned_step, w1, w);

  // Powers of two in [theta*w, w] for the a <= b enlargements.
  std::vector<Index> powers;
  for (Index p = ceil_pow2(std::max<Index>(params.theta_w(), 1)); p <= w; p *= 2) powers.push_back(p);

  const auto offer = [&](Span j_span, Cost bound) {
    const auto key = std::make_pair(i_span, j_span);
    auto it = best.find(key);
    if (it == best.end() || bound < it->second.box.bound) {
      best[key] = EmittedBox{CertifiedBox{i_span, j_span, bound}, Provenance::extension_step9,
                             level.j, 0};
    }
  };

  std::set<Span> extended;
  for (const Index sub : chosen) {
    const auto block = superblock.substr(static_cast<std::size_t>(sub * w1), static_cast<std::size_t>(w1));
    const Index offset_in_u = sub * w1 + 1;
    for (const Index s : starts) {
      if (!within(block, window(pattern, s, w1), level.eps_w1)) continue;
      const Span j_span = diagonal_extension(w, u_len, offset_in_u, s);
      if (!extended.insert(j_span).second) continue;
      const auto c = banded_edit_distance(superblock, substring(pattern, j_span), ext_threshold);
      if (c.exceeds()) continue;
      for (std::size_t ai = 0; ai < powers.size(); ++ai) {
        for (std::size_t bi = ai; bi < powers.size(); ++bi) {
          const Index a = powers[ai];
          const Index b = powers[bi];
          if (params.extension_box_mode == ExtensionBoxMode::as_written) {
            offer(j_span, *c.value + a + b);
          } else {
            const Span grown{std::max<Index>(0, j_span.lo - a), std::min(w, j_span.hi + b)};
            offer(grown, *c.value + a + b);
          }
        }
      }
    }
  }
}

void extension_phase(std::string_view part, std::string_view pattern, const CoverParams& params,
                     const DenseSet& dense_set, const PartContext& ctx, const BoxSink& sink) {
  const Index w1 = params.w1;
  const Index w2 = params.w2;
  const Index n2 = static_cast<Index>(part.size()) / w2;
  const Index per_super = w2 / w1;
  const KeyedRng keyed(params.seed);

  std::vector<Index> candidates;
  for (Index i = 0; i < n2; ++i) {
    std::map<std::pair<Span, Span>, EmittedBox> best;
    const auto superblock = part.substr(static_cast<std::size_t>(i * w2), static_cast<std::size_t>(w2));
    for (int j = params.max_level(); j >= 0; --j) {
      candidates.clear();
      for (Index sub = 0; sub < per_super; ++sub) {
        if (!dense_set.contains(j, i * per_super + sub)) candidates.push_back(sub);
      }
      if (candidates.empty()) continue;
      auto rng = keyed.stream({static_cast<std::uint64_t>(ctx.part_index),
                               static_cast<std::uint64_t>(RngPhase::extension_sample),
                               static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
      extend_superblock(superblock, ctx.offset + i * w2, pattern, params, eps_level(params, j),
                        candidates, rng, best);
    }
    for (auto& [key, box] : best) {
      box.part = ctx.part_index;
      sink(box);
    }
  }
}

BoxBatch extension_phase(std::string_view part, std::string_view pattern,
                         const CoverParams& params, const DenseSet& dense_set,
                         const PartContext& ctx) {
  BoxBatch batch;
  extension_phase(part, pattern, params, dense_set, ctx,
                  [&batch](const EmittedBox& b) { batch.push_back(b); });
  return batch;
}

void cover_part(std::string_view part, std::string_view pattern, const CoverParams& params,
                const PartContext& ctx, const BoxSink& sink) {
  if (static_cast<Index>(part.size()) != params.w) {
    throw std::invalid_argument("part length must equal the pattern length in use");
  }
  const DenseSet dense = dense_phase(part, pattern, params, ctx, sink);
  extension_phase(part, pattern, params, dense, ctx, sink);
}

BoxBatch cover_part(std::string_view part, std::string_view pattern, const CoverParams& params,
                    const PartContext& ctx) {
  BoxBatch batch;
  cover_part(part, pattern, params, ctx, [&batch](const EmittedBox& b) { batch.push_back(b); });
  return batch;
}

}  // namespace apm
