#pragma once

// Min-cost paths in the pattern matching graph with all diagonal steps
// removed and shortcut edges added. The sweep visits t = 0..n once and keeps
// a segment tree over pattern heights whose nodes store (c_v, t_v): the
// cheapest known cost to (t_v, max I_v) through a shortcut landing in I_v.
// A node answers for a later time t as c_v + (t - t_v).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "apm/grid_model.hpp"

namespace apm {

struct ShortcutEdge {
  GridCoord origin;
  GridCoord dest;
  Cost cost = 0;

  friend constexpr auto operator<=>(const ShortcutEdge&, const ShortcutEdge&) = default;
};

/// Shortcut for a square box with bound < (|I|-1)/2; nothing otherwise.
/// Throws std::invalid_argument if the box is not square.
std::optional<ShortcutEdge> box_to_shortcut(const CertifiedBox& box);

struct SweepNode {
  Cost c = kInfiniteCost;
  Index t = 0;
};

/// What a node on a root-to-leaf path holds; exposed for inspection.
struct SweepNodeView {
  Index lo = 0;
  Index hi = 0;
  SweepNode state;
};

namespace detail {

class DenseNodeStore {
 public:
  explicit DenseNodeStore(Index leaves)
      : nodes_(static_cast<std::size_t>(4 * leaves)), touched_(nodes_.size(), 0) {}
  const SweepNode* find(std::uint64_t id) const { return touched_[id] ? &nodes_[id] : nullptr; }
  SweepNode& touch(std::uint64_t id) {
    if (!touched_[id]) {
      touched_[id] = 1;
      ++count_;
    }
    return nodes_[id];
  }
  std::size_t size() const noexcept { return count_; }

 private:
  std::vector<SweepNode> nodes_;
  std::vector<char> touched_;
  std::size_t count_ = 0;
};

class SparseNodeStore {
 public:
  explicit SparseNodeStore(Index) {}
  const SweepNode* find(std::uint64_t id) const {
    const auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
  }
  SweepNode& touch(std::uint64_t id) { return nodes_[id]; }
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  std::unordered_map<std::uint64_t, SweepNode> nodes_;
};

}  // namespace detail

/// Segment tree over leaves {0..w}. Node ids are heap indices (root 1).
template <class Store>
class BasicSweepTree {
 public:
  explicit BasicSweepTree(Index w) : w_(w), store_(w + 1) {}

  Index height() const noexcept { return w_; }

  /// Min cost from (0,0) to (t, j) over shortcut-free climbs and every
  /// shortcut already applied. Requires t >= t_v of every node read.
  Cost query(Index t, Index j) const {
    Cost best = j;
    Index lo = 0;
    Index hi = w_;
    std::uint64_t id = 1;
    while (lo < hi) {
      const Index mid = lo + (hi - lo) / 2;
      if (j > mid) {
        best = std::min(best, sat_add(answer(2 * id, t), j - mid));
        id = 2 * id + 1;
        lo = mid + 1;
      } else {
        id = 2 * id;
        hi = mid;
      }
    }
    return std::min(best, answer(id, t));
  }

  /// Records a shortcut landing at height j with total cost `cost` at time t_new.
  void update(Index t_new, Cost cost, Index j) {
    Index lo = 0;
    Index hi = w_;
    std::uint64_t id = 1;
    while (true) {
      SweepNode& node = store_.touch(id);
      const Cost carried = sat_add(node.c, t_new - node.t);
      node.c = std::min(carried, sat_add(cost, hi - j));
      node.t = t_new;
      if (lo == hi) break;
      const Index mid = lo + (hi - lo) / 2;
      if (j > mid) {
        id = 2 * id + 1;
        lo = mid + 1;
      } else {
        id = 2 * id;
        hi = mid;
      }
    }
  }

  std::vector<SweepNodeView> path_to(Index j) const {
    std::vector<SweepNodeView> out;
    Index lo = 0;
    Index hi = w_;
    std::uint64_t id = 1;
    while (true) {
      const SweepNode* node = store_.find(id);
      out.push_back(SweepNodeView{lo, hi, node ? *node : SweepNode{}});
      if (lo == hi) break;
      const Index mid = lo + (hi - lo) / 2;
      if (j > mid) {
        id = 2 * id + 1;
        lo = mid + 1;
      } else {
        id = 2 * id;
        hi = mid;
      }
    }
    return out;
  }

  /// Nodes that have received at least one update.
  std::size_t materialized_nodes() const noexcept { return store_.size(); }

 private:
  Cost answer(std::uint64_t id, Index t) const {
    const SweepNode* node = store_.find(id);
    if (!node || node->c >= kInfiniteCost) return kInfiniteCost;
    return sat_add(node->c, t - node->t);
  }

  Index w_;
  Store store_;
};

using SweepTree = BasicSweepTree<detail::DenseNodeStore>;
using SparseSweepTree = BasicSweepTree<detail::SparseNodeStore>;

Cost tree_query(const SweepTree& tree, Index t, Index j);
void tree_update(SweepTree& tree, Index t_new, Cost cost, Index j);

/// The single left-to-right sweep, driven one time step at a time so the
/// online matcher can interleave it with covering.
template <class Tree>
class MinCostSweep {
 public:
  explicit MinCostSweep(Index w) : w_(w), tree_(w) {}

  Index now() const noexcept { return now_; }
  Index height() const noexcept { return w_; }

  Cost query(Index j) const { return tree_.query(now_, j); }
  Cost value() const { return tree_.query(now_, w_); }

  /// Schedules the arrival of a shortcut originating at the current time.
  /// Edges with origin.t == dest.t are ignored.
  void relax(const ShortcutEdge& e);

  /// Applies the updates due at now+1, then moves the clock forward.
  void advance();

  std::size_t pending_updates() const noexcept { return pending_count_; }
  const Tree& tree() const noexcept { return tree_; }

 private:
  struct Update {
    Cost cost;
    Index landing;
  };

  Index w_;
  Index now_ = 0;
  Tree tree_;
  std::map<Index, std::vector<Update>> pending_;
  std::size_t pending_count_ = 0;
};

extern template class MinCostSweep<SweepTree>;
extern template class MinCostSweep<SparseSweepTree>;

/// Min cost from (0,0) to (t, w) for every t = 0..n. Edges are sorted
/// internally; throws std::out_of_range for edges outside the grid or
/// running backwards.
std::vector<Cost> sweep_min_cost(std::span<const ShortcutEdge> edges, Index n, Index w);

}  // namespace apm
