#include "apm/online_matcher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "apm/exact_kernels.hpp"

namespace apm {

namespace {

constexpr std::uint64_t kBatchKey = 0x0b;

double log2_at_least_one(double x) { return std::max(1.0, std::log2(x)); }

}  // namespace

CoverParams online_default_params(Index w, const ParamOverrides& overrides) {
  CoverParams p;
  p.w1 = overrides.w1.value_or(floor_pow2_of_root(w, 11, 18));
  p.w2 = overrides.w2.value_or(floor_pow2_of_root(w, 20, 27));
  p.d = overrides.d.value_or(std::pow(static_cast<double>(w), 7.0 / 54.0));
  p.inv_theta = overrides.inv_theta.value_or(std::min(ceil_pow2_of_root(w, 1, 9), p.w1));
  p.c0 = overrides.c0.value_or(2.0);
  p.c1 = overrides.c1.value_or(1.0);
  p.seed = overrides.seed.value_or(0);
  p.log_n = overrides.log_n.value_or(log2_at_least_one(static_cast<double>(w)));
  p.extension_box_mode = overrides.extension_box_mode.value_or(ExtensionBoxMode::as_written);
  p.w = p.w2 > 0 ? (w / p.w2) * p.w2 : 0;
  p.n = p.w;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("pattern of length " + std::to_string(w) +
                                " is too short for online parameters (" + e.what() +
                                "); use the offline exact matcher instead");
  }
  return p;
}

bool SpaceReport::within_caps() const {
  if (static_cast<double>(tree_nodes) > tree_node_cap) return false;
  for (std::size_t j = 0; j < dprime_per_level.size(); ++j) {
    if (static_cast<double>(dprime_per_level[j]) > dprime_caps.at(j)) return false;
  }
  return true;
}

OnlineMatcher::OnlineMatcher(std::string pattern, const ParamOverrides& overrides)
    : pattern_(std::move(pattern)),
      params_(online_default_params(static_cast<Index>(pattern_.size()), overrides)),
      last_value_(static_cast<Cost>(pattern_.size())),
      dprime_(static_cast<std::size_t>(params_.max_level()) + 1),
      sweep_(params_.w) {
  buffer_.reserve(static_cast<std::size_t>(params_.w2));
}

OnlineMatcher online_new(std::string pattern, const ParamOverrides& overrides) {
  return OnlineMatcher(std::move(pattern), overrides);
}

OnlineEmission OnlineMatcher::push(char symbol) {
  buffer_.push_back(symbol);
  ++t_;
  if (t_ % params_.w2 != 0) return OnlineEmission{last_value_, OutputMode::carried};
  process_batch();
  buffer_.clear();
  note_space(0);
  return OnlineEmission{last_value_, OutputMode::approx};
}

void OnlineMatcher::classify_subblock(int pass, Index sub, DenseStore& store,
                                      std::vector<std::vector<Index>>& sparse,
                                      BoxBatch* boxes) const {
  const Index w1 = params_.w1;
  const Index batch_start = t_ - params_.w2;
  const auto batch_index = static_cast<std::uint64_t>(t_ / params_.w2);
  const auto block = std::string_view(buffer_).substr(static_cast<std::size_t>(sub * w1),
                                                      static_cast<std::size_t>(w1));
  const Span span{batch_start + sub * w1, batch_start + (sub + 1) * w1};
  const KeyedRng keyed(params_.seed);

  const auto emit = [&](const std::vector<Span>& matches, const EpsLevel& level) {
    if (!boxes) return;
    for (const Span& y : matches) {
      boxes->push_back(EmittedBox{CertifiedBox{span, y, 8 * level.eps_w1}, Provenance::dense_step5,
                                  level.j, t_ / params_.w});
    }
  };

  for (int j = params_.max_level(); j >= 0; --j) {
    const EpsLevel level = eps_level(params_, j);
    auto& members = store[static_cast<std::size_t>(j)];
    const auto close = std::find_if(members.begin(), members.end(), [&](const Member& m) {
      return !banded_edit_distance(block, m.content, 2 * level.eps_w1).exceeds();
    });
    if (close != members.end()) {
      emit(close->matches, level);
      continue;
    }
    auto rng = keyed.stream({kBatchKey, batch_index, static_cast<std::uint64_t>(pass),
                             static_cast<std::uint64_t>(RngPhase::dense_probe),
                             static_cast<std::uint64_t>(sub), static_cast<std::uint64_t>(j)});
    if (!dense_probe(block, covered(), level, params_, rng).dense) {
      sparse[static_cast<std::size_t>(j)].push_back(sub);
      continue;
    }
    members.push_back(Member{std::string(block), find_aligned_matches(covered(), block, level)});
    emit(members.back().matches, level);
  }
}

void OnlineMatcher::send(const EmittedBox& box, std::vector<ShortcutEdge>& edges) {
  ++boxes_sent_;
  if (observer_) observer_(box);
  if (box.box.i_span.width() != box.box.j_span.width()) return;
  if (auto e = box_to_shortcut(box.box)) {
    edges.push_back(*e);
    ++edges_sent_;
  }
}

void OnlineMatcher::process_batch() {
  const Index w1 = params_.w1;
  const Index w2 = params_.w2;
  const Index batch_start = t_ - w2;
  const auto batch_index = static_cast<std::uint64_t>(t_ / w2);
  const Index subblocks = w2 / w1;
  const int levels = params_.max_level() + 1;

  // Everything learned about the previous part of length w is dropped.
  if (batch_start % params_.w == 0) {
    for (auto& level : dprime_) level.clear();
  }

  // Pass one: classification on a scratch copy, then extension sampling;
  // only the extension boxes leave this pass.
  {
    DenseStore scratch = dprime_;
    std::vector<std::vector<Index>> sparse(static_cast<std::size_t>(levels));
    for (Index sub = 0; sub < subblocks; ++sub) classify_subblock(1, sub, scratch, sparse, nullptr);

    std::map<std::pair<Span, Span>, EmittedBox> best;
    const KeyedRng keyed(params_.seed);
    for (int j = levels - 1; j >= 0; --j) {
      const auto& cand = sparse[static_cast<std::size_t>(j)];
      if (cand.empty()) continue;
      auto rng = keyed.stream({kBatchKey, batch_index, 1,
                               static_cast<std::uint64_t>(RngPhase::extension_sample),
                               static_cast<std::uint64_t>(j)});
      extend_superblock(buffer_, batch_start, covered(), params_, eps_level(params_, j), cand, rng,
                        best);
    }
    std::vector<ShortcutEdge> edges;
    for (auto& [key, box] : best) {
      box.part = t_ / params_.w;
      box.box.bound = ceil_pow2(box.box.bound);
      send(box, edges);
    }
    for (const auto& e : edges) step9_pending_.emplace(e.origin.t, e);
    note_space(0);
  }

  // Pass two: persist D'_j and drive the sweep one subblock at a time.
  std::vector<std::vector<Index>> sparse(static_cast<std::size_t>(levels));
  BoxBatch boxes;
  std::vector<ShortcutEdge> edges;
  for (Index sub = 0; sub < subblocks; ++sub) {
    boxes.clear();
    edges.clear();
    classify_subblock(2, sub, dprime_, sparse, &boxes);
    for (const auto& b : boxes) send(b, edges);
    std::sort(edges.begin(), edges.end());
    subblock_pending_ = static_cast<Index>(edges.size());
    note_space(0);

    auto next = edges.begin();
    const Index from = batch_start + sub * w1;
    for (Index time = from; time < from + w1; ++time) {
      for (; next != edges.end() && next->origin.t == time; ++next) {
        sweep_.relax(*next);
        --subblock_pending_;
      }
      const auto [lo, hi] = step9_pending_.equal_range(time);
      for (auto it = lo; it != hi; ++it) sweep_.relax(it->second);
      step9_pending_.erase(lo, hi);
      sweep_.advance();
    }
    subblock_pending_ = 0;
  }

  last_value_ = sweep_.value() + (static_cast<Cost>(pattern_.size()) - params_.w);
}

void OnlineMatcher::note_space(Index scratch_pending) {
  peak_total_ = std::max(peak_total_, space_report().total() + scratch_pending);
}

SpaceReport OnlineMatcher::space_report() const {
  SpaceReport r;
  r.batch_bytes = static_cast<Index>(buffer_.size());
  for (const auto& level : dprime_) {
    r.dprime_per_level.push_back(static_cast<Index>(level.size()));
    r.dprime_members += static_cast<Index>(level.size());
    for (const auto& m : level) {
      r.dprime_bytes += static_cast<Index>(m.content.size());
      r.y_spans += static_cast<Index>(m.matches.size());
    }
  }
  r.pending_edges = static_cast<Index>(step9_pending_.size()) + subblock_pending_ +
                    static_cast<Index>(sweep_.pending_updates());
  r.tree_nodes = static_cast<Index>(sweep_.tree().materialized_nodes());
  r.peak_total = std::max(peak_total_, r.total());

  const double w = static_cast<double>(params_.w);
  const double inv_theta = static_cast<double>(params_.inv_theta);
  const double w1 = static_cast<double>(params_.w1);
  const double q = (8.0 * w * inv_theta / w1) * log2_at_least_one(inv_theta);
  r.tree_node_cap = q * std::log2(w);
  for (int j = 0; j <= params_.max_level(); ++j) {
    const double eps = std::ldexp(1.0, -j);
    r.dprime_caps.push_back(4.0 * w / (eps * w1 * params_.d));
  }
  return r;
}

std::vector<std::string> OnlineMatcher::dprime_contents(int level) const {
  std::vector<std::string> out;
  for (const auto& m : dprime_.at(static_cast<std::size_t>(level))) out.push_back(m.content);
  return out;
}

}  // namespace apm
