#include "apm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "apm/exact_kernels.hpp"
#include "apm/online_matcher.hpp"

namespace apm {

namespace {

char symbol(int alphabet, int i) {
  return alphabet <= 26 ? static_cast<char>('a' + i) : static_cast<char>(i);
}

}  // namespace

Corpus generate_corpus(const CorpusSpec& spec) {
  if (spec.alphabet < 1 || spec.alphabet > 256) throw std::invalid_argument("alphabet must be 1..256");
  if (spec.n < 0 || spec.w < 0 || spec.edits < 0) throw std::invalid_argument("negative size");
  for (const Index p : spec.plants) {
    if (p < 1 || p - 1 + spec.w + spec.edits > spec.n) {
      throw std::invalid_argument("plant at " + std::to_string(p) + " does not fit in the text");
    }
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> sym(0, spec.alphabet - 1);
  Corpus c;
  c.text.resize(static_cast<std::size_t>(spec.n));
  for (auto& ch : c.text) ch = symbol(spec.alphabet, sym(rng));
  c.pattern.resize(static_cast<std::size_t>(spec.w));
  for (auto& ch : c.pattern) ch = symbol(spec.alphabet, sym(rng));

  std::uniform_int_distribution<int> op(0, 2);
  for (const Index p : spec.plants) {
    std::string copy = c.pattern;
    for (int e = 0; e < spec.edits; ++e) {
      const int kind = copy.empty() ? 1 : op(rng);
      if (kind == 0) {
        std::uniform_int_distribution<std::size_t> at(0, copy.size() - 1);
        const std::size_t k = at(rng);
        if (spec.alphabet > 1) {
          char next = copy[k];
          while (next == copy[k]) next = symbol(spec.alphabet, sym(rng));
          copy[k] = next;
        }
      } else if (kind == 1) {
        std::uniform_int_distribution<std::size_t> at(0, copy.size());
        copy.insert(copy.begin() + static_cast<std::ptrdiff_t>(at(rng)), symbol(spec.alphabet, sym(rng)));
      } else {
        std::uniform_int_distribution<std::size_t> at(0, copy.size() - 1);
        copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(at(rng)));
      }
    }
    std::copy(copy.begin(), copy.end(), c.text.begin() + (p - 1));
    c.plant_ends.push_back(p - 1 + static_cast<Index>(copy.size()));
  }
  return c;
}

void write_tsv_row(std::ostream& out, Index t, Cost value, const char* mode) {
  out << t << '\t' << value << '\t' << mode << '\n';
}

void write_tsv(std::ostream& out, const MatchOutput& output) {
  for (std::size_t k = 0; k < output.values.size(); ++k) {
    write_tsv_row(out, static_cast<Index>(k) + 1, output.values[k], to_string(output.modes[k]));
  }
}

std::vector<TsvRow> read_tsv(std::istream& in) {
  std::vector<TsvRow> rows;
  std::string line;
  Index lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    TsvRow row;
    if (!(fields >> row.t >> row.value >> row.mode)) {
      throw std::runtime_error("malformed TSV line " + std::to_string(lineno) + ": " + line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

double nearest_rank(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::min(sorted.size() - 1, rank == 0 ? 0 : rank - 1)];
}

EvalReport evaluate_pairs(const std::vector<std::pair<Cost, Cost>>& pairs, Index theta_w) {
  EvalReport r;
  r.positions = static_cast<Index>(pairs.size());
  std::vector<double> ratios;
  double gap_sum = 0;
  for (const auto& [approx, exact] : pairs) {
    if (approx < exact) ++r.violations;
    const Cost gap = approx - exact;
    r.additive_max = std::max(r.additive_max, gap);
    gap_sum += static_cast<double>(gap);
    if (exact >= theta_w && exact > 0) {
      ratios.push_back(static_cast<double>(approx) / static_cast<double>(exact));
    }
  }
  if (!pairs.empty()) r.additive_mean = gap_sum / static_cast<double>(pairs.size());
  std::sort(ratios.begin(), ratios.end());
  r.ratio_positions = static_cast<Index>(ratios.size());
  if (!ratios.empty()) {
    r.ratio_max = ratios.back();
    r.ratio_p99 = nearest_rank(ratios, 0.99);
    r.ratio_median = nearest_rank(ratios, 0.5);
  }
  return r;
}

}  // namespace

EvalReport evaluate(const std::vector<TsvRow>& approx, const std::vector<TsvRow>& oracle,
                    Index theta_w) {
  if (approx.size() != oracle.size()) {
    throw std::invalid_argument("inputs cover different numbers of positions");
  }
  std::vector<std::pair<Cost, Cost>> pairs;
  pairs.reserve(approx.size());
  for (std::size_t k = 0; k < approx.size(); ++k) {
    if (approx[k].t != oracle[k].t) {
      throw std::invalid_argument("position mismatch at row " + std::to_string(k + 1));
    }
    pairs.emplace_back(approx[k].value, oracle[k].value);
  }
  return evaluate_pairs(pairs, theta_w);
}

EvalReport evaluate(const std::vector<Cost>& approx, const std::vector<Cost>& oracle,
                    Index theta_w) {
  if (approx.size() != oracle.size()) {
    throw std::invalid_argument("inputs cover different numbers of positions");
  }
  std::vector<std::pair<Cost, Cost>> pairs;
  pairs.reserve(approx.size());
  for (std::size_t k = 0; k < approx.size(); ++k) pairs.emplace_back(approx[k], oracle[k]);
  return evaluate_pairs(pairs, theta_w);
}

void write_report(std::ostream& out, const EvalReport& r) {
  out << "positions=" << r.positions << '\n'
      << "violations=" << r.violations << '\n'
      << "ratio_positions=" << r.ratio_positions << '\n'
      << "ratio_max=" << r.ratio_max << '\n'
      << "ratio_p99=" << r.ratio_p99 << '\n'
      << "ratio_median=" << r.ratio_median << '\n'
      << "additive_max=" << r.additive_max << '\n'
      << "additive_mean=" << r.additive_mean << '\n';
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Least-squares slope of log(y) against log(x).
double log_slope(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    const double lx = std::log(x);
    const double ly = std::log(std::max(y, 1e-9));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(xy.size());
  const double denom = m * sxx - sx * sx;
  return denom == 0 ? 0 : (m * sxy - sx * sy) / denom;
}

}  // namespace

BenchReport run_bench(const std::vector<Index>& ns, const std::vector<Index>& ws, int repetitions,
                      std::uint64_t seed, unsigned threads) {
  BenchReport report;
  repetitions = std::max(1, repetitions);
  for (const Index n : ns) {
    for (const Index w : ws) {
      if (w > n || w < 16) continue;
      const Corpus corpus = generate_corpus(CorpusSpec{n, w, 4, {}, 0, seed});
      BenchRow row;
      row.n = n;
      row.w = w;
      ParamOverrides ov;
      ov.seed = seed;
      const NormalizedParams params = normalize_params(w, n, ov);
      OfflineOptions opts;
      opts.threads = threads;
      for (int r = 0; r < repetitions; ++r) {
        auto start = Clock::now();
        const MatchOutput out = approx_match(corpus.text, corpus.pattern, params, opts);
        row.offline_seconds += seconds(start) / repetitions;
        row.dense_boxes = out.stats.dense_boxes;
        row.extension_boxes = out.stats.extension_boxes;
        row.shortcut_edges = out.stats.shortcut_edges;

        start = Clock::now();
        const auto exact = sellers_scan(corpus.text, corpus.pattern);
        row.oracle_seconds += seconds(start) / repetitions;
      }
      try {
        OnlineMatcher probe(corpus.pattern, ov);
        double total = 0;
        for (int r = 0; r < repetitions; ++r) {
          OnlineMatcher online(corpus.pattern, ov);
          const auto start = Clock::now();
          for (const char ch : corpus.text) online.push(ch);
          total += seconds(start);
        }
        row.online_us_per_symbol = 1e6 * total / repetitions / static_cast<double>(n);
      } catch (const std::invalid_argument&) {
        row.online_us_per_symbol = 0;
      }
      report.rows.push_back(row);
    }
  }

  if (!ns.empty()) {
    const Index n_max = *std::max_element(ns.begin(), ns.end());
    std::vector<std::pair<double, double>> offline_w, online_w;
    for (const auto& row : report.rows) {
      if (row.n != n_max) continue;
      offline_w.emplace_back(static_cast<double>(row.w), row.offline_seconds);
      if (row.online_us_per_symbol > 0) {
        online_w.emplace_back(static_cast<double>(row.w), row.online_us_per_symbol);
      }
    }
    report.w_exponent_offline = log_slope(offline_w);
    report.w_exponent_online = log_slope(online_w);
  }
  if (!ws.empty()) {
    const Index w_ref = *std::min_element(ws.begin(), ws.end());
    std::vector<std::pair<double, double>> offline_n;
    for (const auto& row : report.rows) {
      if (row.w == w_ref) offline_n.emplace_back(static_cast<double>(row.n), row.offline_seconds);
    }
    report.n_exponent_offline = log_slope(offline_n);
  }
  return report;
}

void write_bench(std::ostream& out, const BenchReport& report) {
  out << "n\tw\toffline_s\toracle_s\tonline_us_per_symbol\tdense_boxes\textension_boxes\tshortcut_edges\n";
  out << std::setprecision(6);
  for (const auto& r : report.rows) {
    out << r.n << '\t' << r.w << '\t' << r.offline_seconds << '\t' << r.oracle_seconds << '\t'
        << r.online_us_per_symbol << '\t' << r.dense_boxes << '\t' << r.extension_boxes << '\t'
        << r.shortcut_edges << '\n';
  }
  out << "# offline_w_exponent=" << report.w_exponent_offline << " (prediction 0.75)\n"
      << "# offline_n_exponent=" << report.n_exponent_offline << " (prediction 1)\n"
      << "# online_w_exponent=" << report.w_exponent_online << " (prediction " << 1.0 - 7.0 / 54.0
      << ")\n";
}

}  // namespace apm
