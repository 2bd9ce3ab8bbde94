#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "apm/grid_model.hpp"

namespace apm {

enum class ExtensionBoxMode {
  as_written,  // (I' x J', c + a + b) with |J'| = |I'|
  enlarged,    // J' grown by a below and b above, clamped to the pattern
};

/// Parameters that drive a covering run, offline or online.
///
/// theta is kept as its reciprocal so every derived quantity stays integral:
/// w1, w2 and inv_theta are powers of two with inv_theta <= w1, which makes
/// eps_j * w1 an integer for every level j.
struct CoverParams {
  Index w1 = 0;         // block length
  Index w2 = 0;         // superblock length
  double d = 1.0;       // density threshold
  Index inv_theta = 1;  // 1 / theta
  double c0 = 2.0;
  double c1 = 1.0;
  std::uint64_t seed = 0;
  Index n = 0;        // text length the run is sized for
  Index w = 0;        // pattern length in use (after truncation)
  double log_n = 1.0; // log2 of n, floored at 1
  ExtensionBoxMode extension_box_mode = ExtensionBoxMode::as_written;

  /// ceil(log2(1/theta)); levels run j = max_level()..0.
  int max_level() const noexcept;
  /// theta * w, the lower limit for the a, b enlargements of extension boxes.
  Index theta_w() const noexcept { return w / inv_theta; }

  /// Throws std::invalid_argument naming the first violated constraint:
  /// powers of two, theta*w1 >= 1, w1 <= theta*w2, w1 | w2, w2 | w.
  void validate() const;
};

/// eps_j = 2^-j and the matching alignment step.
struct EpsLevel {
  int j = 0;
  double eps = 1.0;
  Index aligned_step = 1;  // max(floor((eps/8) * w1), 1)
  Index eps_w1 = 0;        // eps * w1, integral under CoverParams' invariants

  Index eps_w2(Index w2) const noexcept { return w2 >> j; }
};

EpsLevel eps_level(const CoverParams& params, int j);

/// Optional pins for any parameter; unset fields fall back to the formulas.
struct ParamOverrides {
  std::optional<Index> w1;
  std::optional<Index> w2;
  std::optional<double> d;
  std::optional<Index> inv_theta;
  std::optional<double> c0;
  std::optional<double> c1;
  std::optional<std::uint64_t> seed;
  std::optional<double> log_n;
  std::optional<ExtensionBoxMode> extension_box_mode;
};

bool is_power_of_two(Index x) noexcept;
Index floor_pow2(Index x) noexcept;
Index ceil_pow2(Index x) noexcept;
/// Largest power of two <= w^(num/den), computed on exponents so that exact
/// powers of two do not fall one step short through rounding.
Index floor_pow2_of_root(Index w, int num, int den);
/// Smallest power of two >= w^(num/den).
Index ceil_pow2_of_root(Index w, int num, int den);

/// Deterministic RNG streams keyed by a tuple of integers, so that sampling
/// does not depend on the order in which parts or batches are processed.
class KeyedRng {
 public:
  explicit KeyedRng(std::uint64_t seed) : seed_(seed) {}

  std::mt19937_64 stream(std::initializer_list<std::uint64_t> keys) const;
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Stream phases, part of every RNG key.
enum class RngPhase : std::uint64_t { dense_probe = 1, extension_sample = 2 };

}  // namespace apm
