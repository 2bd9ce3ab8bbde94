#pragma once

// Exact edit-distance and pattern-matching kernels. These are production
// subroutines: the covering phase calls the bounded variants in its inner
// loops and the offline matcher uses the threshold table as its exact
// small-k phase.

#include <optional>
#include <string_view>
#include <vector>

#include "apm/grid_model.hpp"

namespace apm {

/// Outcome of a distance check against a threshold. `value` is present
/// exactly when the true distance is at most `threshold`.
struct ThresholdResult {
  std::optional<Cost> value;
  Cost threshold = 0;

  bool exceeds() const noexcept { return !value.has_value(); }
};

/// For each end position t = 1..|S|, whether some substring of S ending at t
/// is within `threshold` of the query string.
class EndPositionSet {
 public:
  EndPositionSet() = default;
  EndPositionSet(std::vector<bool> flags, Cost threshold)
      : flags_(std::move(flags)), threshold_(threshold) {}

  /// 1-indexed.
  bool at(Index t) const { return flags_.at(static_cast<std::size_t>(t - 1)); }
  Index size() const noexcept { return static_cast<Index>(flags_.size()); }
  Cost threshold() const noexcept { return threshold_; }
  std::vector<Index> positions() const;

 private:
  std::vector<bool> flags_;
  Cost threshold_ = 0;
};

Cost full_edit_distance(std::string_view a, std::string_view b);

/// Ukkonen's diagonal band: exact distance if it is at most k, otherwise
/// "exceeds". Touches O((|a|+1) * (2k+1)) cells.
ThresholdResult banded_edit_distance(std::string_view a, std::string_view b, Cost k);

/// Entry t-1 holds k_t for t = 1..|text| (Sellers' column DP, O(|pattern|) memory).
std::vector<Cost> sellers_scan(std::string_view text, std::string_view pattern);

/// Sellers' DP with Ukkonen's last-active-row cutoff. Entry t-1 holds k_t when
/// k_t <= k and is empty otherwise.
std::vector<std::optional<Cost>> kbounded_scan(std::string_view text, std::string_view pattern,
                                               Cost k);

EndPositionSet kbounded_end_positions(std::string_view s, std::string_view r, Cost k);

struct ThresholdTable {
  std::vector<std::optional<Cost>> values;  // entry t-1 is k_t when k_t <= cutoff
  Cost cutoff = 0;
  std::vector<Cost> rungs;  // thresholds that were scanned, ascending
};

/// Runs the bounded scan at k = 0, 1, 2, 4, ... and finally at `cutoff`,
/// keeping the exact value for every position that falls under some rung.
ThresholdTable threshold_table(std::string_view text, std::string_view pattern, Cost cutoff);

}  // namespace apm
