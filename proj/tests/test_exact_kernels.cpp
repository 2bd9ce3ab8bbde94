#include <doctest.h>

#include <random>

#include "apm/exact_kernels.hpp"
#include "oracles.hpp"

using namespace apm;

TEST_CASE("full_edit_distance") {
  CHECK(full_edit_distance("", "abc") == 3);
  CHECK(full_edit_distance("abc", "abc") == 0);
  CHECK(full_edit_distance("kitten", "sitting") == 3);
}

TEST_CASE("banded_edit_distance examples") {
  CHECK(banded_edit_distance("abc", "abc", 0).value == 0);
  CHECK(banded_edit_distance("abcd", "abed", 1).value == 1);
  CHECK(banded_edit_distance("abcd", "wxyz", 2).exceeds());
  CHECK(banded_edit_distance("abcd", "wxyz", 4).value == 4);
  CHECK(banded_edit_distance("", "ab", 1).exceeds());
}

TEST_CASE("banded_edit_distance matches the oracle on random strings") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = oracle::random_string(rng, static_cast<Index>(rng() % 20), 3);
    const auto b = oracle::random_string(rng, static_cast<Index>(rng() % 20), 3);
    const Cost k = static_cast<Cost>(rng() % 12);
    const Cost truth = oracle::levenshtein(a, b);
    const auto r = banded_edit_distance(a, b, k);
    if (truth <= k) {
      REQUIRE(r.value == truth);
    } else {
      REQUIRE(r.exceeds());
    }
  }
}

TEST_CASE("sellers_scan") {
  CHECK(sellers_scan("abcdef", "cd") == std::vector<Cost>{2, 2, 1, 0, 1, 2});
  CHECK(sellers_scan("bbb", "a") == std::vector<Cost>{1, 1, 1});
  CHECK(sellers_scan("abcab", "abcab").back() == 0);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    const auto text = oracle::random_string(rng, 1 + static_cast<Index>(rng() % 25), 2 + trial % 4);
    const auto pattern = oracle::random_string(rng, 1 + static_cast<Index>(rng() % 8), 2 + trial % 4);
    REQUIRE(sellers_scan(text, pattern) == oracle::brute_k_all(text, pattern));
  }
}

TEST_CASE("kbounded_scan agrees with thresholded sellers_scan") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const auto text = oracle::random_string(rng, 1 + static_cast<Index>(rng() % 80), 2 + trial % 3);
    const auto pattern = oracle::random_string(rng, 1 + static_cast<Index>(rng() % 16), 2 + trial % 3);
    const Cost k = static_cast<Cost>(rng() % 10);
    const auto full = sellers_scan(text, pattern);
    const auto bounded = kbounded_scan(text, pattern, k);
    REQUIRE(bounded.size() == full.size());
    for (std::size_t t = 0; t < full.size(); ++t) {
      if (full[t] <= k) {
        REQUIRE(bounded[t] == full[t]);
      } else {
        REQUIRE_FALSE(bounded[t].has_value());
      }
    }
  }
}

TEST_CASE("kbounded_end_positions examples") {
  const auto flags = [](std::string_view s, std::string_view r, Cost k) {
    const auto set = kbounded_end_positions(s, r, k);
    std::vector<Index> out;
    for (Index t = 1; t <= set.size(); ++t) {
      if (set.at(t)) out.push_back(t);
    }
    return out;
  };
  CHECK(flags("abcdef", "cd", 1) == std::vector<Index>{3, 4, 5});
  CHECK(flags("abcdef", "cd", 0) == std::vector<Index>{4});
  CHECK(flags("cd", "cd", 2) == std::vector<Index>{1, 2});
}

TEST_CASE("end positions stay within twice the threshold") {
  // A flagged position t has a substring of length |R| ending at t within 2k.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = oracle::random_string(rng, 1 + static_cast<Index>(rng() % 40), 2);
    const auto r = oracle::random_string(rng, 1 + static_cast<Index>(rng() % 8), 2);
    const Cost k = static_cast<Cost>(rng() % 4);
    const auto set = kbounded_end_positions(s, r, k);
    const auto m = static_cast<Index>(r.size());
    for (Index t = m; t <= set.size(); ++t) {
      if (!set.at(t)) continue;
      const auto window = std::string_view(s).substr(static_cast<std::size_t>(t - m),
                                                     static_cast<std::size_t>(m));
      REQUIRE(oracle::levenshtein(window, r) <= 2 * k);
    }
  }
}

TEST_CASE("threshold_table") {
  const auto table = threshold_table("abcdef", "cd", 1);
  REQUIRE(table.values.size() == 6);
  CHECK_FALSE(table.values[0].has_value());
  CHECK_FALSE(table.values[1].has_value());
  CHECK(table.values[2] == 1);
  CHECK(table.values[3] == 0);
  CHECK(table.values[4] == 1);
  CHECK_FALSE(table.values[5].has_value());

  CHECK(threshold_table("abcab", "abcab", 0).values.back() == 0);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto text = oracle::random_string(rng, 60, 3);
    const auto pattern = oracle::random_string(rng, 12, 3);
    const Cost cutoff = static_cast<Cost>(rng() % 14);
    const auto full = sellers_scan(text, pattern);
    const auto t = threshold_table(text, pattern, cutoff);
    for (std::size_t k = 0; k < full.size(); ++k) {
      if (full[k] <= cutoff) {
        REQUIRE(t.values[k] == full[k]);
      } else {
        REQUIRE_FALSE(t.values[k].has_value());
      }
    }
  }
}
