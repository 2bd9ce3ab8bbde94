#include "apm/shortcut_path.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace apm {

std::optional<ShortcutEdge> box_to_shortcut(const CertifiedBox& box) {
  const Index width = box.i_span.width();
  if (width != box.j_span.width()) {
    throw std::invalid_argument("shortcut conversion needs |I| = |J|");
  }
  // l < (|I| - 1) / 2, kept in integers.
  if (2 * box.bound >= width) return std::nullopt;
  return ShortcutEdge{GridCoord{box.i_span.lo, box.j_span.lo + box.bound},
                      GridCoord{box.i_span.hi, box.j_span.hi - box.bound}, 3 * box.bound};
}

Cost tree_query(const SweepTree& tree, Index t, Index j) { return tree.query(t, j); }

void tree_update(SweepTree& tree, Index t_new, Cost cost, Index j) { tree.update(t_new, cost, j); }

template <class Tree>
void MinCostSweep<Tree>::relax(const ShortcutEdge& e) {
  if (e.origin.t != now_) throw std::logic_error("edge relaxed at the wrong time");
  if (e.dest.t == e.origin.t) return;
  pending_[e.dest.t].push_back(Update{sat_add(query(e.origin.y), e.cost), e.dest.y});
  ++pending_count_;
}

template <class Tree>
void MinCostSweep<Tree>::advance() {
  const Index next = now_ + 1;
  if (const auto it = pending_.find(next); it != pending_.end()) {
    for (const Update& u : it->second) tree_.update(next, u.cost, u.landing);
    pending_count_ -= it->second.size();
    pending_.erase(it);
  }
  now_ = next;
}

template class MinCostSweep<SweepTree>;
template class MinCostSweep<SparseSweepTree>;

std::vector<Cost> sweep_min_cost(std::span<const ShortcutEdge> edges, Index n, Index w) {
  std::vector<ShortcutEdge> sorted(edges.begin(), edges.end());
  for (const auto& e : sorted) {
    if (e.origin.t < 0 || e.dest.t > n || e.origin.y < 0 || e.dest.y > w ||
        e.origin.t > e.dest.t || e.origin.y > e.dest.y || e.cost < 0) {
      throw std::out_of_range("shortcut edge (" + std::to_string(e.origin.t) + "," +
                              std::to_string(e.origin.y) + ")->(" + std::to_string(e.dest.t) +
                              "," + std::to_string(e.dest.y) + ") does not fit the grid");
    }
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ShortcutEdge& a, const ShortcutEdge& b) { return a.origin.t < b.origin.t; });

  MinCostSweep<SweepTree> sweep(w);
  std::vector<Cost> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  auto next = sorted.begin();
  for (Index t = 0; t <= n; ++t) {
    out.push_back(sweep.value());
    for (; next != sorted.end() && next->origin.t == t; ++next) sweep.relax(*next);
    if (t < n) sweep.advance();
  }
  return out;
}

}  // namespace apm
