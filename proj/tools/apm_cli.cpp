// apm: approximate pattern matching under edit distance.
//
//   apm gen   --n N --w W [--alphabet A] [--plant P]... [--edits E] [--seed S]
//             --text-out FILE --pattern-out FILE
//   apm run   --mode oracle|offline|online --pattern FILE [--text FILE] [flags]
//   apm eval  --approx FILE --oracle FILE --theta-w K
//   apm bench [--n N]... [--w W]... [--reps R] [--seed S]

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "apm/exact_kernels.hpp"
#include "apm/harness.hpp"
#include "apm/offline_matcher.hpp"
#include "apm/online_matcher.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << data;
}

struct RunFlags {
  std::string mode = "offline";
  std::string text_path;
  std::string pattern_path;
  std::uint64_t seed = 0;
  apm::Index w1 = 0;
  apm::Index w2 = 0;
  double d = 0;
  double theta = 0;
  double c0 = 0;
  double c1 = 0;
  std::string extension_box_mode;
  bool paper_grid = false;
  bool boundaries_only = false;
  bool no_exact = false;
  std::string trace_path;
  std::string stats_path;
  unsigned threads = 1;
};

apm::ParamOverrides overrides_from(const RunFlags& f) {
  apm::ParamOverrides ov;
  ov.seed = f.seed;
  if (f.w1 > 0) ov.w1 = f.w1;
  if (f.w2 > 0) ov.w2 = f.w2;
  if (f.d > 0) ov.d = f.d;
  if (f.theta > 0) {
    const double inv = 1.0 / f.theta;
    const auto rounded = static_cast<apm::Index>(std::llround(inv));
    if (std::abs(inv - static_cast<double>(rounded)) > 1e-9 || !apm::is_power_of_two(rounded)) {
      throw std::invalid_argument("--theta must be 1/2^k");
    }
    ov.inv_theta = rounded;
  }
  if (f.c0 > 0) ov.c0 = f.c0;
  if (f.c1 > 0) ov.c1 = f.c1;
  if (f.extension_box_mode == "as-written") ov.extension_box_mode = apm::ExtensionBoxMode::as_written;
  if (f.extension_box_mode == "enlarged") ov.extension_box_mode = apm::ExtensionBoxMode::enlarged;
  return ov;
}

nlohmann::json box_json(const apm::EmittedBox& b) {
  return {{"part", b.part},
          {"level", b.level},
          {"provenance", apm::to_string(b.provenance)},
          {"i", {b.box.i_span.lo, b.box.i_span.hi}},
          {"j", {b.box.j_span.lo, b.box.j_span.hi}},
          {"bound", b.box.bound}};
}

// Stats go to --stats FILE when given, otherwise to stderr.
class StatsSink {
 public:
  explicit StatsSink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cerr; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int run_oracle(const RunFlags& f, const std::string& text, const std::string& pattern) {
  const auto values = apm::sellers_scan(text, pattern);
  std::ostringstream buf;
  for (std::size_t k = 0; k < values.size(); ++k) {
    apm::write_tsv_row(buf, static_cast<apm::Index>(k) + 1, values[k], "exact");
  }
  std::cout << buf.str();
  StatsSink stats(f.stats_path);
  stats.out() << "mode=oracle\nn=" << text.size() << "\nw=" << pattern.size() << '\n';
  return 0;
}

int run_offline(const RunFlags& f, const std::string& text, const std::string& pattern) {
  const auto params = apm::normalize_params(static_cast<apm::Index>(pattern.size()),
                                            static_cast<apm::Index>(text.size()), overrides_from(f));
  apm::OfflineOptions opts;
  opts.paper_grid = f.paper_grid;
  opts.threads = f.threads;
  opts.skip_exact = f.no_exact;
  std::unique_ptr<std::ofstream> trace;
  if (!f.trace_path.empty()) {
    trace = std::make_unique<std::ofstream>(f.trace_path);
    if (!*trace) throw std::runtime_error("cannot write " + f.trace_path);
    opts.trace = [&](const apm::EmittedBox& b) { *trace << box_json(b).dump() << '\n'; };
  }
  const apm::MatchOutput out = apm::approx_match(text, pattern, params, opts);
  std::ostringstream buf;
  apm::write_tsv(buf, out);
  std::cout << buf.str();

  const auto& p = params.cover;
  StatsSink stats(f.stats_path);
  auto& s = stats.out();
  s << "mode=offline\nn=" << text.size() << "\nw=" << params.pattern_len
    << "\nw_used=" << params.truncated_len << "\nw1=" << p.w1 << "\nw2=" << p.w2 << "\nd=" << p.d
    << "\ninv_theta=" << p.inv_theta << "\ntheta_w=" << p.theta_w() << "\ncutoff=" << params.cutoff
    << "\nparts=" << out.stats.parts << "\ndense_boxes=" << out.stats.dense_boxes
    << "\nextension_boxes=" << out.stats.extension_boxes
    << "\nshortcut_edges=" << out.stats.shortcut_edges
    << "\nexact_positions=" << out.stats.exact_positions
    << "\nexact_seconds=" << out.stats.exact_seconds
    << "\ncover_seconds=" << out.stats.cover_seconds
    << "\nsweep_seconds=" << out.stats.sweep_seconds << '\n';
  return 0;
}

int run_online(const RunFlags& f, const std::string& pattern) {
  apm::OnlineMatcher matcher(pattern, overrides_from(f));
  std::unique_ptr<std::ofstream> trace;
  if (!f.trace_path.empty()) {
    trace = std::make_unique<std::ofstream>(f.trace_path);
    if (!*trace) throw std::runtime_error("cannot write " + f.trace_path);
    matcher.set_box_observer([&](const apm::EmittedBox& b) { *trace << box_json(b).dump() << '\n'; });
  }

  std::unique_ptr<std::ifstream> file;
  std::istream* in = &std::cin;
  if (!f.text_path.empty() && f.text_path != "-") {
    file = std::make_unique<std::ifstream>(f.text_path, std::ios::binary);
    if (!*file) throw std::runtime_error("cannot open " + f.text_path);
    in = file.get();
  }

  const apm::Index w2 = matcher.params().w2;
  bool caps_held = true;
  char ch;
  while (in->get(ch)) {
    const apm::OnlineEmission e = matcher.push(ch);
    const apm::Index t = matcher.position();
    caps_held = caps_held && matcher.space_report().within_caps();
    if (f.boundaries_only && t % w2 != 0) continue;
    apm::write_tsv_row(std::cout, t, e.value, apm::to_string(e.mode));
  }
  std::cout.flush();

  const auto& p = matcher.params();
  const apm::SpaceReport r = matcher.space_report();
  StatsSink stats(f.stats_path);
  auto& s = stats.out();
  s << "mode=online\nn=" << matcher.position() << "\nw=" << matcher.pattern_len()
    << "\nw_used=" << p.w << "\nw1=" << p.w1 << "\nw2=" << p.w2 << "\nd=" << p.d
    << "\ninv_theta=" << p.inv_theta << "\nboxes=" << matcher.boxes_sent()
    << "\nshortcut_edges=" << matcher.edges_sent() << "\nspace.batch_bytes=" << r.batch_bytes
    << "\nspace.dprime_members=" << r.dprime_members << "\nspace.dprime_bytes=" << r.dprime_bytes
    << "\nspace.y_spans=" << r.y_spans << "\nspace.pending_edges=" << r.pending_edges
    << "\nspace.tree_nodes=" << r.tree_nodes << "\nspace.tree_node_cap=" << r.tree_node_cap
    << "\nspace.peak_total=" << r.peak_total << "\nspace.within_caps=" << (caps_held ? 1 : 0)
    << '\n';
  for (std::size_t j = 0; j < r.dprime_per_level.size(); ++j) {
    s << "space.dprime_level" << j << '=' << r.dprime_per_level[j] << " cap=" << r.dprime_caps[j]
      << '\n';
  }
  return 0;
}

int cmd_run(const RunFlags& f) {
  const std::string pattern = read_file(f.pattern_path);
  if (f.mode == "online") return run_online(f, pattern);
  if (f.text_path.empty()) throw std::invalid_argument("--text is required for this mode");
  const std::string text = read_file(f.text_path);
  if (f.mode == "oracle") return run_oracle(f, text, pattern);
  return run_offline(f, text, pattern);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate pattern matching under edit distance"};
  app.require_subcommand(1);

  apm::CorpusSpec gen;
  std::string text_out, pattern_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded corpus with planted copies");
  gen_cmd->add_option("--n", gen.n, "Text length")->required();
  gen_cmd->add_option("--w", gen.w, "Pattern length")->required();
  gen_cmd->add_option("--alphabet", gen.alphabet, "Alphabet size")->check(CLI::Range(1, 256));
  gen_cmd->add_option("--plant", gen.plants, "1-indexed start of a planted copy (repeatable)");
  gen_cmd->add_option("--edits", gen.edits, "Random edits per plant")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--text-out", text_out)->required();
  gen_cmd->add_option("--pattern-out", pattern_out)->required();

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Per-position estimates as t<TAB>value<TAB>mode");
  run_cmd->add_option("--mode", run.mode)->check(CLI::IsMember({"oracle", "offline", "online"}));
  run_cmd->add_option("--text", run.text_path, "Text file (online: defaults to stdin)");
  run_cmd->add_option("--pattern", run.pattern_path)->required();
  run_cmd->add_option("--seed", run.seed);
  run_cmd->add_option("--w1", run.w1, "Block length override");
  run_cmd->add_option("--w2", run.w2, "Superblock length override");
  run_cmd->add_option("--d", run.d, "Density threshold override");
  run_cmd->add_option("--theta", run.theta, "Theta override, 1/2^k");
  run_cmd->add_option("--c0", run.c0);
  run_cmd->add_option("--c1", run.c1);
  run_cmd->add_option("--extension-box-mode", run.extension_box_mode)
      ->check(CLI::IsMember({"as-written", "enlarged"}));
  run_cmd->add_flag("--paper-grid", run.paper_grid, "Offline: read the sweep only at multiples of w2");
  run_cmd->add_flag("--no-exact", run.no_exact, "Offline: report the sweep value everywhere");
  run_cmd->add_flag("--boundaries-only", run.boundaries_only, "Online: emit only batch boundaries");
  run_cmd->add_option("--trace-boxes", run.trace_path, "Write every certified box as JSON lines");
  run_cmd->add_option("--stats", run.stats_path, "Stats file (default: stderr)");
  run_cmd->add_option("--threads", run.threads, "Offline covering threads")->check(CLI::PositiveNumber);

  std::string approx_path, oracle_path;
  apm::Index theta_w = 0;
  auto* eval_cmd = app.add_subcommand("eval", "Compare an estimate TSV against an oracle TSV");
  eval_cmd->add_option("--approx", approx_path)->required();
  eval_cmd->add_option("--oracle", oracle_path)->required();
  eval_cmd->add_option("--theta-w", theta_w, "Ratio statistics use positions with k >= this");

  std::vector<apm::Index> bench_ns{4096, 8192}, bench_ws{64, 256, 1024};
  int reps = 1;
  std::uint64_t bench_seed = 1;
  unsigned bench_threads = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Timing table over a grid of (n, w)");
  bench_cmd->add_option("--n", bench_ns, "Text lengths");
  bench_cmd->add_option("--w", bench_ws, "Pattern lengths");
  bench_cmd->add_option("--reps", reps)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed);
  bench_cmd->add_option("--threads", bench_threads)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      const apm::Corpus c = apm::generate_corpus(gen);
      write_file(text_out, c.text);
      write_file(pattern_out, c.pattern);
      for (const auto end : c.plant_ends) std::cerr << "plant_end=" << end << '\n';
      return 0;
    }
    if (*run_cmd) return cmd_run(run);
    if (*eval_cmd) {
      std::ifstream a(approx_path), o(oracle_path);
      if (!a) throw std::runtime_error("cannot open " + approx_path);
      if (!o) throw std::runtime_error("cannot open " + oracle_path);
      const auto report = apm::evaluate(apm::read_tsv(a), apm::read_tsv(o), theta_w);
      apm::write_report(std::cout, report);
      return report.violations == 0 ? 0 : 3;
    }
    if (*bench_cmd) {
      apm::write_bench(std::cout, apm::run_bench(bench_ns, bench_ws, reps, bench_seed, bench_threads));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "apm: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
