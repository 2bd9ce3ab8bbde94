#pragma once

// Plumbing behind the command-line tool: seeded corpora with planted
// approximate occurrences, the TSV format for per-position output, and the
// evaluation and benchmark reports.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "apm/grid_model.hpp"
#include "apm/offline_matcher.hpp"

namespace apm {

struct CorpusSpec {
  Index n = 0;
  Index w = 0;
  int alphabet = 4;            // symbols 'a', 'b', ... ; at most 256
  std::vector<Index> plants;   // 1-indexed start positions of planted copies
  int edits = 0;               // random single-symbol edits per plant
  std::uint64_t seed = 0;
};

struct Corpus {
  std::string text;
  std::string pattern;
  std::vector<Index> plant_ends;  // 1-indexed end position of each plant
};

/// Throws std::invalid_argument if a plant (with room for its edits) does
/// not fit in the text.
Corpus generate_corpus(const CorpusSpec& spec);

struct TsvRow {
  Index t = 0;
  Cost value = 0;
  std::string mode;
};

void write_tsv_row(std::ostream& out, Index t, Cost value, const char* mode);
void write_tsv(std::ostream& out, const MatchOutput& output);
/// Parses "t<TAB>value<TAB>mode" lines; throws std::runtime_error on a
/// malformed line.
std::vector<TsvRow> read_tsv(std::istream& in);

struct EvalReport {
  Index positions = 0;
  Index violations = 0;            // rows with estimate < oracle
  Index ratio_positions = 0;       // rows with oracle >= theta_w (and > 0)
  double ratio_max = 0;
  double ratio_p99 = 0;
  double ratio_median = 0;
  Cost additive_max = 0;           // max of estimate - oracle
  double additive_mean = 0;
};

/// Throws std::invalid_argument when the two row sets do not cover the same
/// positions in the same order.
EvalReport evaluate(const std::vector<TsvRow>& approx, const std::vector<TsvRow>& oracle,
                    Index theta_w);
EvalReport evaluate(const std::vector<Cost>& approx, const std::vector<Cost>& oracle,
                    Index theta_w);

void write_report(std::ostream& out, const EvalReport& report);

struct BenchRow {
  Index n = 0;
  Index w = 0;
  double offline_seconds = 0;
  double oracle_seconds = 0;
  double online_us_per_symbol = 0;  // 0 when the online defaults do not apply
  Index dense_boxes = 0;
  Index extension_boxes = 0;
  Index shortcut_edges = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  double w_exponent_offline = 0;  // least-squares slope of log time vs log w at fixed n
  double n_exponent_offline = 0;  // same against n at fixed w
  double w_exponent_online = 0;
};

BenchReport run_bench(const std::vector<Index>& ns, const std::vector<Index>& ws, int repetitions,
                      std::uint64_t seed, unsigned threads = 1);
void write_bench(std::ostream& out, const BenchReport& report);

}  // namespace apm
