#pragma once

// Randomized covering phase: classify w1-blocks of a text part as dense or
// sparse per level, certify boxes around dense blocks, and run extension
// sampling on sparse superblocks. Every emitted box is sound by
// construction; tests check that against the oracle.

#include <functional>
#include <map>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "apm/cover_params.hpp"
#include "apm/grid_model.hpp"

namespace apm {

enum class Provenance { dense_step5, extension_step9 };

const char* to_string(Provenance p) noexcept;

struct EmittedBox {
  CertifiedBox box;
  Provenance provenance = Provenance::dense_step5;
  int level = 0;
  Index part = 0;

  friend bool operator==(const EmittedBox&, const EmittedBox&) = default;
};

using BoxBatch = std::vector<EmittedBox>;
using BoxSink = std::function<void(const EmittedBox&)>;

/// A w1-block of text together with its global span.
struct BlockRef {
  Span span;
  std::string_view content;
};

/// Where a part sits in the text and which RNG key it uses.
struct PartContext {
  Index part_index = 0;
  Index offset = 0;  // global text coordinate of the part's left edge
};

/// 1-indexed starts j of the (eps/8)-aligned length-w1 windows of the pattern.
std::vector<Index> aligned_starts(double eps, Index w1, Index pattern_len);

struct ProbeOutcome {
  bool dense = false;
  Index samples = 0;       // windows actually tested
  Index successes = 0;     // tested windows within eps * w1
  double threshold = 0.0;  // successes needed to call the block dense
  bool exhaustive = false; // requested count reached the population
};

/// Sampling test for whether `block` has many close aligned windows in the
/// pattern.
ProbeOutcome dense_probe(std::string_view block, std::string_view pattern, const EpsLevel& level,
                         const CoverParams& params, std::mt19937_64& rng);

/// Spans of the candidates within `threshold` of `block`.
std::vector<Span> find_close_blocks(std::string_view block, std::span<const BlockRef> candidates,
                                    Cost threshold);

/// Spans of aligned pattern windows flagged by the bounded end-position scan
/// at 3 * eps * w1. Includes every window within 3 * eps * w1 and nothing
/// farther than 6 * eps * w1.
std::vector<Span> find_aligned_matches(std::string_view pattern, std::string_view block,
                                       const EpsLevel& level);

/// Width-u_len pattern span placing the match at the same offset it has
/// inside u; clamped to the pattern. Throws std::invalid_argument when
/// u_len exceeds the pattern length.
Span diagonal_extension(Index pattern_len, Index u_len, Index offset_in_u, Index v_start);

/// Per-level membership of a part's w1-blocks in D_j.
class DenseSet {
 public:
  DenseSet() = default;
  DenseSet(int levels, Index blocks);

  bool contains(int level, Index block) const;
  void insert(int level, Index block);
  Index count(int level) const;
  Index blocks() const noexcept { return blocks_; }
  int levels() const noexcept { return static_cast<int>(members_.size()); }
  /// How many blocks were ever handed to insert() while already present.
  Index repeat_inserts() const noexcept { return repeat_inserts_; }

 private:
  std::vector<std::vector<char>> members_;
  Index blocks_ = 0;
  Index repeat_inserts_ = 0;
};

/// Dense substrings pass over one part of length params.w.
DenseSet dense_phase(std::string_view part, std::string_view pattern, const CoverParams& params,
                     const PartContext& ctx, const BoxSink& sink);
std::pair<BoxBatch, DenseSet> dense_phase(std::string_view part, std::string_view pattern,
                                          const CoverParams& params, const PartContext& ctx);

/// Extension sampling for one superblock and one level. `candidates` are the
/// 0-based indices of its sparse subblocks. Results are folded into `best`,
/// which keeps the smallest bound per output span pair.
void extend_superblock(std::string_view superblock, Index global_offset, std::string_view pattern,
                       const CoverParams& params, const EpsLevel& level,
                       std::span<const Index> candidates, std::mt19937_64& rng,
                       std::map<std::pair<Span, Span>, EmittedBox>& best);

/// Number of subblocks extension sampling draws per (superblock, level).
Index extension_sample_count(const CoverParams& params);

void extension_phase(std::string_view part, std::string_view pattern, const CoverParams& params,
                     const DenseSet& dense_set, const PartContext& ctx, const BoxSink& sink);
BoxBatch extension_phase(std::string_view part, std::string_view pattern,
                         const CoverParams& params, const DenseSet& dense_set,
                         const PartContext& ctx);

/// Both phases over one part; spans are in global text coordinates.
void cover_part(std::string_view part, std::string_view pattern, const CoverParams& params,
                const PartContext& ctx, const BoxSink& sink);
BoxBatch cover_part(std::string_view part, std::string_view pattern, const CoverParams& params,
                    const PartContext& ctx);

}  // namespace apm
