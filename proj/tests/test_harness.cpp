#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "apm/exact_kernels.hpp"
#include "apm/harness.hpp"

using namespace apm;

TEST_CASE("generate_corpus") {
  const Corpus a = generate_corpus(CorpusSpec{1024, 64, 4, {}, 0, 7});
  const Corpus b = generate_corpus(CorpusSpec{1024, 64, 4, {}, 0, 7});
  CHECK(a.text.size() == 1024);
  CHECK(a.pattern.size() == 64);
  CHECK(a.text == b.text);
  CHECK(a.pattern == b.pattern);

  const Corpus exact = generate_corpus(CorpusSpec{1024, 64, 4, {100}, 0, 7});
  CHECK(exact.text.substr(99, 64) == exact.pattern);
  CHECK(exact.plant_ends == std::vector<Index>{163});
  CHECK(sellers_scan(exact.text, exact.pattern)[162] == 0);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Corpus edited = generate_corpus(CorpusSpec{1024, 64, 4, {100}, 5, seed});
    const Index end = edited.plant_ends.front();
    CHECK(sellers_scan(edited.text, edited.pattern)[static_cast<std::size_t>(end - 1)] <= 5);
  }

  CHECK_THROWS_AS(generate_corpus(CorpusSpec{100, 64, 4, {40}, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_corpus(CorpusSpec{100, 64, 4, {30}, 10, 1}), std::invalid_argument);
}

TEST_CASE("tsv round trip") {
  std::ostringstream out;
  write_tsv_row(out, 1, 5, "exact");
  write_tsv_row(out, 2, 7, "approx");
  CHECK(out.str() == "1\t5\texact\n2\t7\tapprox\n");
  std::istringstream in(out.str());
  const auto rows = read_tsv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].t == 2);
  CHECK(rows[1].value == 7);
  CHECK(rows[1].mode == "approx");
  std::istringstream bad("1\tx\n");
  CHECK_THROWS_AS(read_tsv(bad), std::runtime_error);
}

TEST_CASE("evaluate") {
  const std::vector<Cost> oracle{3, 4, 5, 6};
  const auto same = evaluate(oracle, oracle, 1);
  CHECK(same.violations == 0);
  CHECK(same.ratio_max == doctest::Approx(1));

  std::vector<Cost> plus_one = oracle;
  for (auto& v : plus_one) ++v;
  const auto shifted = evaluate(plus_one, oracle, 1);
  CHECK(shifted.violations == 0);
  CHECK(shifted.additive_max == 1);
  CHECK(shifted.additive_mean == doctest::Approx(1));

  const auto low = evaluate(std::vector<Cost>{2, 4, 5, 6}, oracle, 1);
  CHECK(low.violations == 1);

  const auto restricted = evaluate(std::vector<Cost>{30, 4, 5, 6}, oracle, 4);
  CHECK(restricted.ratio_positions == 3);
  CHECK(restricted.ratio_max == doctest::Approx(1));

  CHECK_THROWS_AS(evaluate(std::vector<Cost>{1}, oracle, 1), std::invalid_argument);
  std::vector<TsvRow> a{{1, 3, "exact"}}, b{{2, 3, "exact"}};
  CHECK_THROWS_AS(evaluate(a, b, 1), std::invalid_argument);
}

TEST_CASE("bench reports counters") {
  const auto report = run_bench({1024, 2048}, {64}, 1, 3);
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) {
    CHECK(row.offline_seconds > 0);
    CHECK(row.dense_boxes > 0);
  }
  std::ostringstream out;
  write_bench(out, report);
  CHECK(out.str().find("offline_w_exponent=") != std::string::npos);
}
