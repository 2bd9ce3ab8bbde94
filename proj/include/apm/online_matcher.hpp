#pragma once

// Online matcher: the text arrives one symbol at a time and only the pattern
// is stored in full. Symbols are buffered into batches of w2; each full batch
// runs the covering logic twice (once for extension boxes only, once to
// update the per-part dense sets), and the shortcut sweep is advanced
// through the batch subblock by subblock.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "apm/cover_params.hpp"
#include "apm/covering.hpp"
#include "apm/offline_matcher.hpp"
#include "apm/shortcut_path.hpp"

namespace apm {

/// Online defaults: w1 = w^(11/18), w2 = w^(20/27) (rounded down to powers
/// of two), d = w^(7/54), 1/theta = w^(1/9) rounded up to a power of two and
/// clamped to w1. Throws std::invalid_argument if the pattern is too short
/// for these to satisfy the parameter invariants.
CoverParams online_default_params(Index w, const ParamOverrides& overrides = {});

struct SpaceReport {
  Index batch_bytes = 0;
  Index dprime_members = 0;
  Index dprime_bytes = 0;
  Index y_spans = 0;
  Index pending_edges = 0;
  Index tree_nodes = 0;
  Index peak_total = 0;
  std::vector<Index> dprime_per_level;  // index j

  double tree_node_cap = 0;          // q * log w, q = (8w/(theta w1)) * log(1/theta)
  std::vector<double> dprime_caps;   // 4w / (eps_j w1 d), index j

  Index total() const noexcept {
    return batch_bytes + dprime_bytes + y_spans + pending_edges + tree_nodes;
  }
  bool within_caps() const;
};

struct OnlineEmission {
  Cost value = 0;
  OutputMode mode = OutputMode::carried;
};

class OnlineMatcher {
 public:
  explicit OnlineMatcher(std::string pattern, const ParamOverrides& overrides = {});

  OnlineEmission push(char symbol);

  Index position() const noexcept { return t_; }
  const CoverParams& params() const noexcept { return params_; }
  Index pattern_len() const noexcept { return static_cast<Index>(pattern_.size()); }
  SpaceReport space_report() const;

  /// Contents of the stored D'_j members, for invariant checks.
  std::vector<std::string> dprime_contents(int level) const;

  /// Observes every box handed to the sweep, after cost rounding.
  void set_box_observer(BoxSink sink) { observer_ = std::move(sink); }

  Index boxes_sent() const noexcept { return boxes_sent_; }
  Index edges_sent() const noexcept { return edges_sent_; }

 private:
  struct Member {
    std::string content;
    std::vector<Span> matches;  // Y_{i,j}
  };
  using DenseStore = std::vector<std::vector<Member>>;

  void process_batch();
  /// Classifies subblock `sub` of the buffer at every level; returns the
  /// dense boxes it would send and records sparse levels in `sparse`.
  void classify_subblock(int pass, Index sub, DenseStore& store,
                         std::vector<std::vector<Index>>& sparse, BoxBatch* boxes) const;
  void send(const EmittedBox& box, std::vector<ShortcutEdge>& edges);
  void note_space(Index scratch_pending);

  std::string_view covered() const noexcept {
    return std::string_view(pattern_).substr(0, static_cast<std::size_t>(params_.w));
  }

  std::string pattern_;  // full pattern as given; covering uses the first params_.w symbols
  CoverParams params_;
  Index t_ = 0;
  Cost last_value_ = 0;
  std::string buffer_;
  DenseStore dprime_;
  std::multimap<Index, ShortcutEdge> step9_pending_;
  Index subblock_pending_ = 0;
  MinCostSweep<SparseSweepTree> sweep_;
  BoxSink observer_;
  Index boxes_sent_ = 0;
  Index edges_sent_ = 0;
  Index peak_total_ = 0;
};

OnlineMatcher online_new(std::string pattern, const ParamOverrides& overrides = {});

}  // namespace apm
