#include "apm/cover_params.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace apm {

bool is_power_of_two(Index x) noexcept { return x > 0 && (x & (x - 1)) == 0; }

Index floor_pow2(Index x) noexcept {
  if (x < 1) return 0;
  return static_cast<Index>(std::bit_floor(static_cast<std::uint64_t>(x)));
}

Index ceil_pow2(Index x) noexcept {
  if (x <= 1) return 1;
  return static_cast<Index>(std::bit_ceil(static_cast<std::uint64_t>(x)));
}

Index floor_pow2_of_root(Index w, int num, int den) {
  const double e = std::log2(static_cast<double>(w)) * num / den;
  const auto k = static_cast<int>(std::floor(e + 1e-9));
  return k <= 0 ? 1 : Index{1} << k;
}

Index ceil_pow2_of_root(Index w, int num, int den) {
  const double e = std::log2(static_cast<double>(w)) * num / den;
  const auto k = static_cast<int>(std::ceil(e - 1e-9));
  return k <= 0 ? 1 : Index{1} << k;
}

int CoverParams::max_level() const noexcept {
  return std::countr_zero(static_cast<std::uint64_t>(inv_theta));
}

void CoverParams::validate() const {
  const auto bad = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!is_power_of_two(w1)) bad("w1 must be a power of two");
  if (!is_power_of_two(w2)) bad("w2 must be a power of two");
  if (!is_power_of_two(inv_theta)) bad("1/theta must be a power of two");
  if (inv_theta > w1) bad("theta * w1 must be at least 1");
  if (w1 * inv_theta > w2) bad("w1 must not exceed theta * w2");
  if (w2 % w1 != 0) bad("w1 must divide w2");
  if (w <= 0 || w % w2 != 0) bad("w2 must divide the pattern length in use");
  if (d <= 0) bad("d must be positive");
  if (c0 <= 0 || c1 <= 0) bad("c0 and c1 must be positive");
}

EpsLevel eps_level(const CoverParams& params, int j) {
  EpsLevel level;
  level.j = j;
  level.eps = std::ldexp(1.0, -j);
  level.eps_w1 = params.w1 >> j;
  level.aligned_step = std::max<Index>(params.w1 >> (j + 3), 1);
  return level;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 KeyedRng::stream(std::initializer_list<std::uint64_t> keys) const {
  std::uint64_t h = splitmix64(seed_);
  for (const auto k : keys) h = splitmix64(h ^ splitmix64(k));
  return std::mt19937_64(h);
}

}  // namespace apm
