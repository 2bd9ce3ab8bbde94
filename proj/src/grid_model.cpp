#include "apm/grid_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace apm {

Span make_span(Index lo, Index hi, Index limit) {
  if (lo < 0 || lo > hi || hi > limit) {
    throw std::out_of_range("span {" + std::to_string(lo) + ".." + std::to_string(hi) +
                            "} outside 0.." + std::to_string(limit));
  }
  return {lo, hi};
}

std::string_view substring(std::string_view s, Span span) {
  make_span(span.lo, span.hi, static_cast<Index>(s.size()));
  return s.substr(static_cast<std::size_t>(span.lo), static_cast<std::size_t>(span.width()));
}

namespace {

// Relaxes the grid graph column by column. `free_bottom` turns the edit
// distance graph into the pattern matching graph.
Cost grid_relax(std::string_view a, std::string_view b, bool free_bottom) {
  const std::size_t h = b.size();
  std::vector<Cost> col(h + 1);
  for (std::size_t y = 0; y <= h; ++y) col[y] = static_cast<Cost>(y);
  for (std::size_t t = 1; t <= a.size(); ++t) {
    Cost diag = col[0];
    col[0] = free_bottom ? 0 : col[0] + 1;
    for (std::size_t y = 1; y <= h; ++y) {
      const Cost left = col[y];
      const Cost d = diag + (a[t - 1] == b[y - 1] ? 0 : 1);
      col[y] = std::min({left + 1, col[y - 1] + 1, d});
      diag = left;
    }
  }
  return col[h];
}

}  // namespace

Cost pm_cost_oracle(std::string_view text, std::string_view pattern, Index t) {
  if (t < 1 || t > static_cast<Index>(text.size())) {
    throw std::out_of_range("position " + std::to_string(t) + " outside 1.." +
                            std::to_string(text.size()));
  }
  return grid_relax(text.substr(0, static_cast<std::size_t>(t)), pattern, true);
}

Cost edit_cost_oracle(std::string_view text, std::string_view pattern, Span i_span,
                      Span j_span) {
  return grid_relax(substring(text, i_span), substring(pattern, j_span), false);
}

bool verify_box(std::string_view text, std::string_view pattern, const CertifiedBox& box) {
  if (box.bound < 0) return false;
  return edit_cost_oracle(text, pattern, box.i_span, box.j_span) <= box.bound;
}

Cost path_cost(std::string_view text, std::string_view pattern, const MonotonePath& path) {
  const auto n = static_cast<Index>(text.size());
  const auto w = static_cast<Index>(pattern.size());
  Cost total = 0;
  for (std::size_t s = 0; s < path.size(); ++s) {
    const GridCoord v = path[s];
    if (v.t < 0 || v.t > n || v.y < 0 || v.y > w) {
      throw std::out_of_range("path vertex outside the grid");
    }
    if (s == 0) continue;
    const GridCoord u = path[s - 1];
    const Index dt = v.t - u.t;
    const Index dy = v.y - u.y;
    if (dt == 1 && dy == 1) {
      total += text[static_cast<std::size_t>(v.t - 1)] == pattern[static_cast<std::size_t>(v.y - 1)]
                   ? 0
                   : 1;
    } else if (dt == 1 && dy == 0) {
      total += v.y == 0 ? 0 : 1;
    } else if (dt == 0 && dy == 1) {
      total += 1;
    } else {
      throw std::invalid_argument("path step is not an H, V or D step");
    }
  }
  return total;
}

ApproxCheck verify_approximation(std::string_view text, std::string_view pattern,
                                 std::span<const CertifiedBox> boxes, const MonotonePath& path,
                                 double k, double zeta) {
  ApproxCheck check;
  const auto fail = [&check](ApproxCondition c, std::size_t idx, std::string msg) {
    check.accepted = false;
    check.failed = c;
    check.box_index = idx;
    check.detail = std::move(msg);
    return check;
  };

  Cost cost = 0;
  try {
    if (path.empty()) throw std::invalid_argument("empty path");
    cost = path_cost(text, pattern, path);
  } catch (const std::exception& e) {
    return fail(ApproxCondition::malformed_path, 0, e.what());
  }

  // Condition 1: the I_r chain across the horizontal projection.
  const Index proj_lo = path.front().t;
  const Index proj_hi = path.back().t;
  if (boxes.empty()) return fail(ApproxCondition::decomposition, 0, "no boxes");
  for (std::size_t r = 0; r < boxes.size(); ++r) {
    const Span i = boxes[r].i_span;
    if (i.lo > i.hi) return fail(ApproxCondition::decomposition, r, "inverted I span");
    const Index expected_lo = r == 0 ? proj_lo : boxes[r - 1].i_span.hi;
    if (i.lo != expected_lo) {
      return fail(ApproxCondition::decomposition, r,
                  "min I is " + std::to_string(i.lo) + ", expected " + std::to_string(expected_lo));
    }
  }
  if (boxes.back().i_span.hi != proj_hi) {
    return fail(ApproxCondition::decomposition, boxes.size() - 1,
                "last box ends before the projection does");
  }

  // Condition 2: tau restricted to I_r starts at the last vertex on column
  // min I and ends at the first vertex on column max I.
  for (std::size_t r = 0; r < boxes.size(); ++r) {
    const CertifiedBox& box = boxes[r];
    const Index span_len = box.i_span.width();
    if (box.bound >= span_len) continue;
    const auto last_at_lo = std::find_if(path.rbegin(), path.rend(), [&](const GridCoord& v) {
      return v.t == box.i_span.lo;
    });
    const auto first_at_hi = std::find_if(path.begin(), path.end(), [&](const GridCoord& v) {
      return v.t == box.i_span.hi;
    });
    const Index start_gap = std::abs(last_at_lo->y - box.j_span.lo);
    const Index end_gap = std::abs(first_at_hi->y - box.j_span.hi);
    if (start_gap > box.bound || end_gap > box.bound) {
      return fail(ApproxCondition::coverage, r,
                  "vertical gaps " + std::to_string(start_gap) + "/" + std::to_string(end_gap) +
                      " exceed bound " + std::to_string(box.bound));
    }
  }

  // Condition 3.
  Cost bound_sum = 0;
  for (const auto& box : boxes) bound_sum += box.bound;
  const long double budget = static_cast<long double>(k) * static_cast<long double>(cost) +
                             static_cast<long double>(zeta);
  if (static_cast<long double>(bound_sum) > budget + 1e-9L) {
    return fail(ApproxCondition::cost_sum, 0,
                "sum of bounds " + std::to_string(bound_sum) + " over budget");
  }

  check.accepted = true;
  return check;
}

}  // namespace apm
