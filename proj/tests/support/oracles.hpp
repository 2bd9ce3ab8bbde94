#pragma once

// Brute-force reference implementations. Nothing here calls into the
// library's DP kernels, so agreement is a real cross-check.

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "apm/grid_model.hpp"
#include "apm/shortcut_path.hpp"

namespace oracle {

using apm::Cost;
using apm::Index;

/// Textbook O(|a||b|) Levenshtein distance.
Cost levenshtein(std::string_view a, std::string_view b);

/// min over s <= t of levenshtein(text[s+1..t], pattern), by enumeration.
Cost brute_k(std::string_view text, std::string_view pattern, Index t);
std::vector<Cost> brute_k_all(std::string_view text, std::string_view pattern);

/// True edit distance between the substrings a box covers.
Cost box_cost(std::string_view text, std::string_view pattern, const apm::CertifiedBox& box);

/// Explicit relaxation over every vertex of the reduced grid: free bottom row,
/// unit horizontal and vertical steps, no diagonals, plus the shortcut edges.
/// Entry t is the min cost to reach (t, w).
std::vector<Cost> reference_min_cost(const std::vector<apm::ShortcutEdge>& edges, Index n,
                                     Index w);

std::string random_string(std::mt19937_64& rng, Index len, int alphabet);

/// Random edges with origin.t < dest.t and origin.y <= dest.y inside the grid.
std::vector<apm::ShortcutEdge> random_edges(std::mt19937_64& rng, Index n, Index w, int count,
                                            Cost max_cost);

}  // namespace oracle
