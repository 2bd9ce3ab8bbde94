#include "apm/exact_kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace apm {

std::vector<Index> EndPositionSet::positions() const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < flags_.size(); ++i) {
    if (flags_[i]) out.push_back(static_cast<Index>(i) + 1);
  }
  return out;
}

Cost full_edit_distance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // One row over the shorter string plus the carried diagonal.
  std::vector<Cost> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<Cost>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    Cost diag = row[0];
    row[0] = static_cast<Cost>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const Cost up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

ThresholdResult banded_edit_distance(std::string_view a, std::string_view b, Cost k) {
  if (k < 0) throw std::invalid_argument("negative threshold");
  ThresholdResult result{std::nullopt, k};
  const auto la = static_cast<Index>(a.size());
  const auto lb = static_cast<Index>(b.size());
  if (std::abs(la - lb) > k) return result;

  const Cost cap = k + 1;
  std::vector<Cost> prev(static_cast<std::size_t>(lb) + 1, cap);
  std::vector<Cost> cur(static_cast<std::size_t>(lb) + 1, cap);
  for (Index j = 0; j <= std::min(lb, k); ++j) prev[static_cast<std::size_t>(j)] = j;

  for (Index i = 1; i <= la; ++i) {
    const Index lo = std::max<Index>(0, i - k);
    const Index hi = std::min(lb, i + k);
    if (lo > 0) cur[static_cast<std::size_t>(lo - 1)] = cap;
    Cost row_min = cap;
    for (Index j = lo; j <= hi; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      Cost v;
      if (j == 0) {
        v = std::min<Cost>(i, cap);
      } else {
        v = std::min({prev[ju] + 1, cur[ju - 1] + 1,
                      prev[ju - 1] + (a[static_cast<std::size_t>(i - 1)] == b[ju - 1] ? 0 : 1)});
        v = std::min(v, cap);
      }
      cur[ju] = v;
      row_min = std::min(row_min, v);
    }
    // Cells right of the band in the next row read prev[hi+1]; it must look
    // like "over threshold".
    if (hi + 1 <= lb) cur[static_cast<std::size_t>(hi + 1)] = cap;
    if (row_min > k) return result;
    std::swap(prev, cur);
  }
  const Cost v = prev[static_cast<std::size_t>(lb)];
  if (v <= k) result.value = v;
  return result;
}

std::vector<Cost> sellers_scan(std::string_view text, std::string_view pattern) {
  const std::size_t m = pattern.size();
  std::vector<Cost> col(m + 1);
  for (std::size_t i = 0; i <= m; ++i) col[i] = static_cast<Cost>(i);
  std::vector<Cost> out;
  out.reserve(text.size());
  for (const char c : text) {
    Cost diag = 0;  // col[0] is pinned at zero: matches may start anywhere
    for (std::size_t i = 1; i <= m; ++i) {
      const Cost old = col[i];
      col[i] = std::min({old + 1, col[i - 1] + 1, diag + (pattern[i - 1] == c ? 0 : 1)});
      diag = old;
    }
    out.push_back(col[m]);
  }
  return out;
}

std::vector<std::optional<Cost>> kbounded_scan(std::string_view text, std::string_view pattern,
                                               Cost k) {
  if (k < 0) throw std::invalid_argument("negative threshold");
  const auto m = static_cast<Index>(pattern.size());
  const Cost cap = k + 1;
  // Rows above `last_active` hold values > k and are never read directly.
  std::vector<Cost> col(static_cast<std::size_t>(m) + 1, cap);
  Index last_active = std::min<Index>(k, m);
  for (Index i = 0; i <= last_active; ++i) col[static_cast<std::size_t>(i)] = i;

  std::vector<std::optional<Cost>> out;
  out.reserve(text.size());
  for (const char c : text) {
    const Index limit = std::min(m, last_active + 1);
    Cost diag = 0;
    for (Index i = 1; i <= limit; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      const Cost old = i <= last_active ? col[iu] : cap;
      const Cost v = std::min({old + 1, col[iu - 1] + 1,
                               diag + (pattern[iu - 1] == c ? 0 : 1)});
      col[iu] = std::min(v, cap);
      diag = old;
    }
    // Past `limit` only vertical steps can stay under the threshold.
    Index top = limit;
    while (top < m && col[static_cast<std::size_t>(top)] + 1 <= k) {
      col[static_cast<std::size_t>(top + 1)] = col[static_cast<std::size_t>(top)] + 1;
      ++top;
    }
    while (top > 0 && col[static_cast<std::size_t>(top)] > k) --top;
    last_active = top;
    if (last_active == m) {
      out.emplace_back(col[static_cast<std::size_t>(m)]);
    } else {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

EndPositionSet kbounded_end_positions(std::string_view s, std::string_view r, Cost k) {
  const auto values = kbounded_scan(s, r, k);
  std::vector<bool> flags(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) flags[i] = values[i].has_value();
  return EndPositionSet(std::move(flags), k);
}

ThresholdTable threshold_table(std::string_view text, std::string_view pattern, Cost cutoff) {
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  ThresholdTable table;
  table.cutoff = cutoff;
  table.values.assign(text.size(), std::nullopt);

  table.rungs.push_back(0);
  for (Cost k = 1; k < cutoff; k *= 2) table.rungs.push_back(k);
  if (cutoff > 0) table.rungs.push_back(cutoff);

  for (const Cost k : table.rungs) {
    const auto scan = kbounded_scan(text, pattern, k);
    for (std::size_t t = 0; t < scan.size(); ++t) {
      if (!table.values[t] && scan[t]) table.values[t] = scan[t];
    }
  }
  return table;
}

}  // namespace apm
