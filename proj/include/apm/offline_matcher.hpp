#pragma once

// Offline pipeline: exact bounded scans for small k_t, covering over
// w-length parts of the text, one shortcut sweep per run, and the final
// per-position combination.

#include <string_view>
#include <vector>

#include "apm/cover_params.hpp"
#include "apm/covering.hpp"
#include "apm/grid_model.hpp"

namespace apm {

enum class OutputMode { exact, approx, carried };

const char* to_string(OutputMode mode) noexcept;

/// Normalized offline parameters plus the bookkeeping that comes with them.
struct NormalizedParams {
  CoverParams cover;
  Index pattern_len = 0;    // w as given
  Index truncated_len = 0;  // w', the largest multiple of w2 not above w
  Index cutoff = 0;         // floor(w^(3/4)); the exact phase handles k_t up to here
  Index prefix_len = 0;     // largest multiple of w' not above n
  Index suffix_start = 0;   // the suffix run covers (suffix_start, n]
};

/// floor(w^(3/4)), computed exactly.
Index three_quarter_cutoff(Index w);

/// w1 = w^(1/4), w2 = w^(1/2) (both rounded down to powers of two),
/// d = w^(1/4), 1/theta = w^(1/4) rounded up to a power of two and clamped
/// to w1. Throws std::invalid_argument when w < 16 or n < w, or when the
/// overrides break the parameter invariants.
NormalizedParams normalize_params(Index w, Index n, const ParamOverrides& overrides = {});

struct MatchStats {
  Index parts = 0;
  Index dense_boxes = 0;
  Index extension_boxes = 0;
  Index shortcut_edges = 0;
  Index exact_positions = 0;
  double exact_seconds = 0;
  double cover_seconds = 0;
  double sweep_seconds = 0;
};

struct MatchOutput {
  std::vector<Cost> values;  // entry t-1 is the estimate for position t
  std::vector<OutputMode> modes;
  Index pattern_len = 0;
  Index truncated_len = 0;
  MatchStats stats;
};

struct OfflineOptions {
  /// Read the sweep only at multiples of w2 and carry it forward in between.
  bool paper_grid = false;
  /// Skip the exact small-k phase so every position reports the sweep value.
  /// Only useful for measuring the covering on its own.
  bool skip_exact = false;
  /// Worker threads for covering parts; results do not depend on it.
  unsigned threads = 1;
  /// Receives every certified box, grouped by part in ascending order.
  BoxSink trace;
};

MatchOutput approx_match(std::string_view text, std::string_view pattern,
                         const NormalizedParams& params, const OfflineOptions& options = {});

}  // namespace apm
