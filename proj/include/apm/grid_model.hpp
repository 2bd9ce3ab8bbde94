#pragma once

// Grid-graph vocabulary shared by every stage: spans, grid coordinates,
// certified boxes, monotone paths, plus the brute-force oracles that the
// test suites lean on.
//
// Coordinates follow the usual grid layout: the text runs along the
// horizontal axis (t in 0..n) and the pattern along the vertical axis
// (y in 0..w). A span {lo..hi} denotes the substring at positions
// lo+1..hi, so its width equals the substring length.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace apm {

using Index = std::int64_t;
using Cost = std::int64_t;

inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max() / 4;

/// Saturating addition; anything at or past kInfiniteCost stays infinite.
constexpr Cost sat_add(Cost a, Cost b) noexcept {
  if (a >= kInfiniteCost || b >= kInfiniteCost) return kInfiniteCost;
  const Cost s = a + b;
  return s >= kInfiniteCost ? kInfiniteCost : s;
}

struct Span {
  Index lo = 0;
  Index hi = 0;

  constexpr Index width() const noexcept { return hi - lo; }
  constexpr Span shifted(Index offset) const noexcept { return {lo + offset, hi + offset}; }

  friend constexpr auto operator<=>(const Span&, const Span&) = default;
};

/// Builds a span and checks 0 <= lo <= hi <= limit.
Span make_span(Index lo, Index hi, Index limit);

/// The substring a span denotes. Throws std::out_of_range if the span does
/// not fit inside `s`.
std::string_view substring(std::string_view s, Span span);

struct GridCoord {
  Index t = 0;
  Index y = 0;

  friend constexpr auto operator<=>(const GridCoord&, const GridCoord&) = default;
};

/// (I x J, bound): the sub-grid's cheapest corner-to-corner path costs at most `bound`.
struct CertifiedBox {
  Span i_span;
  Span j_span;
  Cost bound = 0;

  friend constexpr auto operator<=>(const CertifiedBox&, const CertifiedBox&) = default;
};

using MonotonePath = std::vector<GridCoord>;

// ---------------------------------------------------------------------------
// Oracles. Full quadratic DP, meant for tests and verification only.

/// k_t: cheapest path from the bottom row to (t, w) in the pattern matching
/// graph, i.e. the best edit distance of the pattern to a text substring
/// ending at t. Throws std::out_of_range unless 1 <= t <= |text|.
Cost pm_cost_oracle(std::string_view text, std::string_view pattern, Index t);

/// Edit distance between text[i_span] and pattern[j_span].
Cost edit_cost_oracle(std::string_view text, std::string_view pattern, Span i_span,
                      Span j_span);

bool verify_box(std::string_view text, std::string_view pattern, const CertifiedBox& box);

/// Cost of a monotone path in the pattern matching graph of text and pattern
/// (H-steps along row 0 are free).
/// Throws std::invalid_argument if consecutive vertices are not one unit
/// step apart, std::out_of_range if a vertex leaves the grid.
Cost path_cost(std::string_view text, std::string_view pattern, const MonotonePath& path);

enum class ApproxCondition {
  none,            // accepted
  malformed_path,  // path is empty, leaves the grid, or takes a non-unit step
  decomposition,   // the I spans do not chain across the projection
  coverage,        // a box does not (1 - l/(|I|-1))-cover the path
  cost_sum,        // sum of bounds exceeds k * cost + zeta
};

struct ApproxCheck {
  bool accepted = false;
  ApproxCondition failed = ApproxCondition::none;
  std::size_t box_index = 0;  // offending box for decomposition/coverage failures
  std::string detail;

  explicit operator bool() const noexcept { return accepted; }
};

/// Checks whether `boxes` (k, zeta)-approximates `path` in the pattern matching
/// graph of text and pattern. Boxes are taken in order; a box whose bound is
/// at least |I|-1 covers the path unconditionally.
ApproxCheck verify_approximation(std::string_view text, std::string_view pattern,
                                 std::span<const CertifiedBox> boxes, const MonotonePath& path,
                                 double k, double zeta);

}  // namespace apm
