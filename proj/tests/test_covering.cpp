#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "apm/covering.hpp"
#include "apm/harness.hpp"
#include "apm/offline_matcher.hpp"
#include "oracles.hpp"

using namespace apm;

namespace {

CoverParams pinned(Index w, Index w1, Index w2, Index inv_theta, double d, Index n = 0) {
  CoverParams p;
  p.w1 = w1;
  p.w2 = w2;
  p.inv_theta = inv_theta;
  p.d = d;
  p.w = w;
  p.n = n ? n : w;
  p.log_n = std::max(1.0, std::log2(static_cast<double>(p.n)));
  p.seed = 17;
  p.validate();
  return p;
}

void require_sound(std::string_view text, std::string_view pattern, const BoxBatch& boxes) {
  for (const auto& b : boxes) {
    REQUIRE(b.box.i_span.lo >= 0);
    REQUIRE(b.box.i_span.hi <= static_cast<Index>(text.size()));
    REQUIRE(b.box.j_span.lo >= 0);
    REQUIRE(b.box.j_span.hi <= static_cast<Index>(pattern.size()));
    REQUIRE(oracle::box_cost(text, pattern, b.box) <= b.box.bound);
  }
}

}  // namespace

TEST_CASE("aligned_starts") {
  const auto half = aligned_starts(0.5, 64, 256);
  CHECK(half.front() == 1);
  CHECK(half.back() == 193);
  CHECK(half.size() == 49);
  CHECK(half[1] - half[0] == 4);

  const auto quarter = aligned_starts(0.25, 8, 32);
  CHECK(quarter.size() == 25);
  CHECK(quarter.back() == 25);

  CHECK(aligned_starts(1.0, 16, 16) == std::vector<Index>{1});
}

TEST_CASE("dense_probe") {
  const CoverParams p = pinned(64, 8, 32, 4, 2);
  std::mt19937_64 rng(1);
  for (int j = 0; j <= p.max_level(); ++j) {
    const auto level = eps_level(p, j);
    CHECK(dense_probe(std::string(8, 'a'), std::string(64, 'a'), level, p, rng).dense);
    if (level.eps_w1 < 8) {
      CHECK_FALSE(dense_probe(std::string(8, 'b'), std::string(64, 'a'), level, p, rng).dense);
    }
  }

  // Reproducible from the same stream state.
  std::mt19937_64 seed_a(99), seed_b(99);
  std::mt19937_64 text_rng(7);
  const auto pattern = oracle::random_string(text_rng, 256, 2);
  const auto block = pattern.substr(40, 16);
  const CoverParams q = pinned(256, 16, 64, 4, 64);
  const auto a = dense_probe(block, pattern, eps_level(q, 2), q, seed_a);
  const auto b = dense_probe(block, pattern, eps_level(q, 2), q, seed_b);
  CHECK(a.successes == b.successes);
  CHECK(a.samples == b.samples);
  CHECK(a.dense == b.dense);
}

TEST_CASE("find_close_blocks") {
  const std::string x = "abcdabcd";
  const std::string far = "zzzzzzzz";
  const std::vector<BlockRef> cands{{{0, 8}, x}, {{8, 16}, far}, {{16, 24}, x}};
  CHECK(find_close_blocks(x, cands, 2) == std::vector<Span>{{0, 8}, {16, 24}});

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto block = oracle::random_string(rng, 8, 2);
    std::vector<std::string> store;
    for (int k = 0; k < 6; ++k) store.push_back(oracle::random_string(rng, 8, 2));
    std::vector<BlockRef> refs;
    for (int k = 0; k < 6; ++k) refs.push_back({{8 * k, 8 * k + 8}, store[k]});
    const Cost th = static_cast<Cost>(rng() % 5);
    std::vector<Span> expect;
    for (int k = 0; k < 6; ++k) {
      if (oracle::levenshtein(block, store[k]) <= th) expect.push_back(refs[k].span);
    }
    REQUIRE(find_close_blocks(block, refs, th) == expect);
  }
}

TEST_CASE("find_aligned_matches sandwich") {
  const CoverParams p = pinned(64, 8, 32, 4, 2);
  SUBCASE("repeated block") {
    const std::string block = "abcabcab";
    std::string pattern;
    while (pattern.size() < 64) pattern += block;
    pattern.resize(64);
    const auto level = eps_level(p, 0);
    CHECK(find_aligned_matches(pattern, block, level).size() ==
          aligned_starts(level.eps, 8, 64).size());
  }
  SUBCASE("disjoint alphabet") {
    const CoverParams wide = pinned(128, 16, 64, 4, 2);
    // Every window is at distance 16: excluded while 6 * eps * w1 < 16,
    // included once 3 * eps * w1 >= 16.
    CHECK(find_aligned_matches(std::string(128, 'a'), std::string(16, 'b'), eps_level(wide, 2)).empty());
    CHECK(find_aligned_matches(std::string(128, 'a'), std::string(16, 'b'), eps_level(wide, 0)).size() ==
          aligned_starts(1.0, 16, 128).size());
  }
  SUBCASE("random instances") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 150; ++trial) {
      const auto pattern = oracle::random_string(rng, 64, 2);
      const auto block = oracle::random_string(rng, 8, 2);
      const int j = static_cast<int>(rng() % 3);
      const auto level = eps_level(p, j);
      const auto found = find_aligned_matches(pattern, block, level);
      const std::set<Span> got(found.begin(), found.end());
      for (const Index s : aligned_starts(level.eps, 8, 64)) {
        const Span span{s - 1, s + 7};
        const Cost d = oracle::levenshtein(substring(pattern, span), block);
        if (d <= 3 * level.eps_w1) REQUIRE(got.count(span) == 1);
        if (d > 6 * level.eps_w1) REQUIRE(got.count(span) == 0);
      }
      for (const Span& s : found) REQUIRE(s.width() == 8);
    }
  }
}

TEST_CASE("diagonal_extension") {
  CHECK(diagonal_extension(20, 6, 3, 5) == Span{2, 8});
  CHECK(diagonal_extension(20, 6, 5, 2) == Span{0, 6});
  CHECK(diagonal_extension(20, 6, 1, 17) == Span{14, 20});
  CHECK_THROWS_AS(diagonal_extension(5, 6, 1, 1), std::invalid_argument);
}

TEST_CASE("dense_phase on a unary string") {
  const std::string a64(64, 'a');
  for (const Index inv_theta : {Index{1}, Index{4}}) {
    const CoverParams p = pinned(64, 4, 16, inv_theta, 2);
    const auto [boxes, dense] = dense_phase(a64, a64, p, PartContext{0, 0});
    // 16 blocks times 61 aligned windows, all at distance 0.
    Index level0 = 0;
    for (const auto& b : boxes) {
      if (b.level != 0) continue;
      ++level0;
      CHECK(b.box.bound == 32);
    }
    CHECK(level0 == 16 * 61);
    CHECK(dense.count(0) == 16);
    CHECK(dense.repeat_inserts() == 0);
  }
}

TEST_CASE("disjoint alphabets produce no boxes") {
  const CoverParams p = pinned(64, 4, 16, 4, 2);
  const auto batch = cover_part(std::string(64, 'x'), std::string(64, 'y'), p, PartContext{0, 0});
  for (const auto& b : batch) CHECK(b.level == 0);  // eps_0 * w1 = w1 admits everything
  const CoverParams q = pinned(256, 16, 64, 4, 16);
  const auto extension = extension_phase(std::string(256, 'x'), std::string(256, 'y'), q,
                                         DenseSet(q.max_level() + 1, 16), PartContext{0, 0});
  // Only the top level (eps = 1) admits windows at distance w1.
  for (const auto& b : extension) CHECK(b.level == 0);
}

TEST_CASE("extension_phase with every block dense emits nothing") {
  const CoverParams q = pinned(256, 16, 64, 4, 16);
  std::mt19937_64 rng(4);
  const auto text = oracle::random_string(rng, 256, 4);
  DenseSet all(q.max_level() + 1, 16);
  for (int j = 0; j <= q.max_level(); ++j) {
    for (Index b = 0; b < 16; ++b) all.insert(j, b);
  }
  CHECK(extension_phase(text, text, q, all, PartContext{0, 0}).empty());
}

TEST_CASE("extension of the true match has c = 0") {
  const CoverParams q = pinned(256, 16, 64, 4, 16);
  std::mt19937_64 rng(6);
  const auto pattern = oracle::random_string(rng, 256, 4);
  const auto batch =
      extension_phase(pattern, pattern, q, DenseSet(q.max_level() + 1, 16), PartContext{0, 0});
  REQUIRE_FALSE(batch.empty());
  const Cost min_ab = 2 * ceil_pow2(q.theta_w());
  bool diagonal_seen = false;
  for (const auto& b : batch) {
    CHECK(b.provenance == Provenance::extension_step9);
    CHECK(b.box.bound >= min_ab);
    if (b.box.i_span == b.box.j_span) {
      diagonal_seen = true;
      CHECK(b.box.bound == min_ab);
    }
  }
  CHECK(diagonal_seen);
  require_sound(pattern, pattern, batch);
}

TEST_CASE("cover_part soundness, determinism and offsets") {
  std::mt19937_64 rng(31);
  const std::vector<CoverParams> configs{
      pinned(64, 4, 16, 4, 2, 256), pinned(256, 16, 64, 4, 16, 1024),
      pinned(256, 8, 32, 4, 2, 1024), pinned(256, 4, 16, 4, 4, 1024)};
  for (int trial = 0; trial < 16; ++trial) {
    CoverParams p = configs[trial % configs.size()];
    p.extension_box_mode = trial % 2 ? ExtensionBoxMode::enlarged : ExtensionBoxMode::as_written;
    const Index n = 3 * p.w;
    const Corpus c = generate_corpus(CorpusSpec{n, p.w, 2 + trial % 3, {p.w / 2 + 1}, trial % 8,
                                                static_cast<std::uint64_t>(trial)});
    const Index offset = p.w;
    const auto part = std::string_view(c.text).substr(static_cast<std::size_t>(offset),
                                                      static_cast<std::size_t>(p.w));
    const auto batch = cover_part(part, c.pattern, p, PartContext{1, offset});
    const auto again = cover_part(part, c.pattern, p, PartContext{1, offset});
    REQUIRE(batch == again);
    require_sound(c.text, c.pattern, batch);
    std::vector<Index> per_level(static_cast<std::size_t>(p.max_level()) + 1, 0);
    for (const auto& b : batch) {
      REQUIRE(b.box.i_span.lo >= offset);
      REQUIRE(b.box.i_span.hi <= offset + p.w);
      if (b.provenance == Provenance::dense_step5) ++per_level[static_cast<std::size_t>(b.level)];
    }
    for (int j = 0; j <= p.max_level(); ++j) {
      const double eps = std::ldexp(1.0, -j);
      const double cap = (8.0 * p.w / (eps * p.w1)) * (static_cast<double>(p.w) / p.w1);
      REQUIRE(static_cast<double>(per_level[static_cast<std::size_t>(j)]) <= cap);
    }
  }
}

TEST_CASE("cover_part on the pattern itself is nonempty") {
  const CoverParams p = pinned(256, 16, 64, 4, 16);
  std::mt19937_64 rng(77);
  const auto pattern = oracle::random_string(rng, 256, 26);
  const auto batch = cover_part(pattern, pattern, p, PartContext{0, 0});
  CHECK_FALSE(batch.empty());
  require_sound(pattern, pattern, batch);
}

TEST_CASE("dense blocks are never probed twice at a level") {
  const CoverParams p = pinned(256, 8, 32, 4, 2);
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 6; ++trial) {
    const auto pattern = oracle::random_string(rng, 256, 2);
    const auto text = oracle::random_string(rng, 256, 2);
    const auto [boxes, dense] = dense_phase(text, pattern, p, PartContext{0, 0});
    CHECK(dense.repeat_inserts() == 0);
  }
}
