#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "r58/census.hpp"
#include "r58/finisher.hpp"
#include "r58/lp.hpp"
#include "r58/matcher.hpp"
#include "r58/oracle.hpp"

using namespace r58;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string coloring_text(const Coloring& c) {
  std::ostringstream out;
  write_coloring(out, c);
  return out.str();
}

struct ColorArgs {
  int n = 0;
  std::uint64_t seed = 0;
  int k = 0;
  std::string p = "1/6";
  double delta = 0.1;
  long long max_rounds = 0;
  long long stop = 0;
  std::string sweep = "auto";
  std::string out, report, stage1_out, stage1_report;
  int threads = 1;
  bool timing = false;
};

int cmd_color(const ColorArgs& a) {
  if (a.n < 5) throw UsageError("--n must be at least 5");
  if (a.k < 0 || a.k == 1) throw UsageError("--k must be at least 2");
  if (a.threads < 1) throw UsageError("--threads must be positive");
  if (a.max_rounds < 0 || a.stop < 0) throw UsageError("--max-rounds and --stop must be nonnegative");
  if (!(a.delta >= 0 && a.delta < 1)) throw UsageError("--delta must lie in [0, 1)");

  PipelineOptions opt;
  opt.n = a.n;
  opt.k = a.k;
  opt.p = Probability::parse(a.p);
  opt.delta = a.delta;
  opt.seed = a.seed;
  opt.stop.max_rejections = a.stop;
  if (a.sweep == "on") opt.stop.sweep = true;
  else if (a.sweep == "off") opt.stop.sweep = false;
  else if (a.sweep != "auto") throw UsageError("--sweep must be on, off or auto");
  opt.max_rounds = a.max_rounds;
  opt.threads = a.threads;
  opt.timing = a.timing;

  const auto result = pipeline(opt);
  if (!a.out.empty()) write_file_atomic(a.out, coloring_text(result.coloring));
  if (!a.stage1_out.empty()) write_file_atomic(a.stage1_out, coloring_text(result.stage1.coloring()));
  if (!a.stage1_report.empty()) {
    MatchingOptions m;
    m.n = opt.n;
    m.k = result.stage1.k();
    m.p = opt.p;
    m.seed = opt.seed;
    m.stop = opt.stop;
    write_file_atomic(a.stage1_report, stage1_report_json(result.stage1, m));
  }
  const std::string json = result.report.json();
  if (!a.report.empty()) write_file_atomic(a.report, json);
  else std::cout << json;
  return result.report.valid ? 0 : kExitInvalid;
}

int cmd_verify(const std::string& path, int threads) {
  if (threads < 1) throw UsageError("--threads must be positive");
  const Coloring c = read_coloring_file(path);
  if (!c.is_total()) throw UsageError(path + ": coloring is not total");
  const auto rep = verify_58(c, threads);
  std::cout << "valid: " << (rep.valid ? "yes" : "no") << "\n";
  std::cout << "min_colors_seen: " << rep.min_colors_seen << "\n";
  if (rep.witness) {
    std::cout << "witness:";
    for (Vertex v : *rep.witness) std::cout << ' ' << v;
    std::cout << "\n";
  }
  const int colors = c.color_count();
  std::cout << "colors: " << colors << "\n";
  const Census s = census(c);
  std::cout << "census: a=" << s.a << " b1=" << s.b1 << " b2=" << s.b2 << " c=" << s.c << " d=" << s.d
            << " e=" << s.e << " other=" << s.other << "\n";
  try {
    std::cout << "pair identity: " << (check_pair_identity(s, c.n()) ? "holds" : "fails") << "\n";
  } catch (const InputError& err) {
    std::cout << "pair identity: n/a (" << err.what() << ")\n";
  }
  const auto f = check_inequalities(s, colors, c.n());
  std::cout << "inequalities (m=" << colors << "): supply=" << (f.supply ? "yes" : "no")
            << " star_slack=" << (f.star_slack ? "yes" : "no")
            << " path_slack=" << (f.path_slack ? "yes" : "no") << "\n";
  return rep.valid ? 0 : kExitInvalid;
}

int cmd_lp(long long n) {
  if (n < 5) throw UsageError("--n must be at least 5");
  const auto cert = lower_bound_certificate(n);
  std::cout << "optimum = " << cert.optimum.str() << " = " << cert.ratio.str() << "·C(" << n
            << ",2); bound = " << cert.bound << "\n";
  const auto lp = build_pairs_lp(Rational(1));
  std::cout << "normalized: " << lp_report(lp, cert.normalized) << "\n";
  std::cout << "certificate: " << (check_certificate(lp, cert.normalized).ok() ? "verified" : "FAILED")
            << "\n";
  return 0;
}

int cmd_oracle(int n, double budget, int q) {
  OracleOptions opt;
  opt.q = q;
  opt.budget_seconds = budget;
  opt.allow_n7 = budget > 0;
  if (n == 7 && budget <= 0) throw UsageError("n = 7 requires --budget");
  if (budget < 0) throw UsageError("--budget must be nonnegative");
  const auto r = brute_force_min_colors(n, opt);
  if (r.value) std::cout << "f(" << n << ",5," << q << ") = " << *r.value << "\n";
  else std::cout << "unknown (timeout)\n";
  return 0;
}

struct StatsArgs {
  int n = 12;
  int k = 0;
  std::string p = "1/6";
  int samples = 500;
  std::uint64_t seed = 0;
  int matchings = 3;
};

int cmd_stats(const StatsArgs& a) {
  if (a.samples < 1) throw UsageError("--samples must be at least 1");
  if (a.n < 3) throw UsageError("--n must be at least 3");
  if (a.matchings < 0) throw UsageError("--matchings must be nonnegative");
  const int k = a.k > 0 ? a.k : a.n;
  if (k < 2) throw UsageError("--k must be at least 2");
  const Probability p = Probability::parse(a.p);
  const auto ex = expected_degrees(a.n, k, p.value());
  const auto mc = monte_carlo_degree(a.n, k, p, a.samples, a.seed);

  std::cout << "n=" << a.n << " k=" << k << " p=" << p.str() << " samples=" << a.samples
            << " seed=" << a.seed << "\n";
  std::cout << std::left << std::setw(11) << "degree" << std::right << std::setw(14) << "formula"
            << std::setw(14) << "empirical" << std::setw(12) << "stderr" << std::setw(10) << "z"
            << "\n";
  auto row = [&](const char* name, double formula, const Estimate& e) {
    std::ostringstream z;
    if (e.stderr_ > 0) z << std::fixed << std::setprecision(2) << (e.mean - formula) / e.stderr_;
    else z << (e.mean == formula ? "exact" : "inf");
    std::cout << std::left << std::setw(11) << name << std::right << std::fixed << std::setprecision(4)
              << std::setw(14) << formula << std::setw(14) << e.mean << std::setw(12) << e.stderr_
              << std::setw(10) << z.str() << "\n";
  };
  row("d_edge", ex.d_edge, mc.d_edge);
  row("d_primary", ex.d_primary, mc.d_primary);
  row("d_apex", ex.d_apex, mc.d_apex);
  const double n3 = std::pow(static_cast<double>(a.n), 3);
  std::cout << std::setprecision(6) << "leading constant 5^5/(2*6^5) = " << kDegreeConstant
            << "; d_edge/n^3 = " << ex.d_edge / n3 << "\n";

  for (int s = 0; s < a.matchings; ++s) {
    MatchingOptions m;
    m.n = a.n;
    m.k = k;
    m.p = p;
    m.seed = a.seed + static_cast<std::uint64_t>(s);
    const auto state = greedy_matching(m);
    const auto cov = coverage_stats(state);
    std::cout << "matching seed=" << m.seed << " triangles=" << state.triangles().size()
              << " coverage min=" << cov.min << " mean=" << std::setprecision(2) << cov.mean
              << " max=" << cov.max << " leftover_max_degree=" << leftover(state).max_degree << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(5,8)-coloring toolkit for complete graphs"};
  app.require_subcommand(1);

  ColorArgs ca;
  auto* color = app.add_subcommand("color", "Build a coloring with the two-stage construction");
  color->add_option("--n", ca.n, "Vertex count (>= 5)")->required();
  color->add_option("--seed", ca.seed, "Master seed")->capture_default_str();
  color->add_option("--k", ca.k, "Stage-1 color count (default n)");
  color->add_option("--p", ca.p, "Apex probability, e.g. 1/6")->capture_default_str();
  color->add_option("--delta", ca.delta, "Palette exponent: ceil(n^(1-delta)) fresh colors")
      ->capture_default_str();
  color->add_option("--max-rounds", ca.max_rounds, "Resampling rounds before fallback (0: default)");
  color->add_option("--stop", ca.stop, "Consecutive rejections that end stage 1 (0: 50 n ceil(ln n))");
  color->add_option("--sweep", ca.sweep, "Exhaustive stage-1 sweep: on, off, auto (n <= 60)")
      ->capture_default_str();
  color->add_option("--out", ca.out, "Write the final coloring here");
  color->add_option("--report", ca.report, "Write the JSON report here (default stdout)");
  color->add_option("--stage1-out", ca.stage1_out, "Write the stage-1 partial coloring here");
  color->add_option("--stage1-report", ca.stage1_report, "Write the stage-1 JSON sidecar here");
  color->add_option("--threads", ca.threads, "Verification threads")->capture_default_str();
  color->add_flag("--timing", ca.timing, "Record wall-clock runtime in the report");

  std::string verify_path;
  int verify_threads = 1;
  auto* verify = app.add_subcommand("verify", "Check a coloring file and print its census");
  verify->add_option("file", verify_path, "Coloring file")->required();
  verify->add_option("--threads", verify_threads, "Verification threads")->capture_default_str();

  long long lp_n = 0;
  auto* lp = app.add_subcommand("lp", "Exact LP lower bound with certificate");
  lp->add_option("--n", lp_n, "Vertex count (>= 5)")->required();

  int oracle_n = 0, oracle_q = 8;
  double budget = 0;
  auto* oracle = app.add_subcommand("oracle", "Exact minimum color count by exhaustive search");
  oracle->add_option("--n", oracle_n, "Vertex count: 5, 6, or 7 with --budget")->required();
  oracle->add_option("--budget", budget, "Wall-clock budget in seconds");
  oracle->add_option("--q", oracle_q, "Required colors per 5-subset")->capture_default_str();

  StatsArgs sa;
  auto* stats = app.add_subcommand("stats", "Hypergraph degree formulas against Monte Carlo");
  stats->add_option("--n", sa.n, "Vertex count")->capture_default_str();
  stats->add_option("--k", sa.k, "Color count (default n)");
  stats->add_option("--p", sa.p, "Apex probability")->capture_default_str();
  stats->add_option("--samples", sa.samples, "Monte Carlo samples")->capture_default_str();
  stats->add_option("--seed", sa.seed, "Master seed")->capture_default_str();
  stats->add_option("--matchings", sa.matchings, "Stage-1 runs summarized")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*color) return cmd_color(ca);
    if (*verify) return cmd_verify(verify_path, verify_threads);
    if (*lp) return cmd_lp(lp_n);
    if (*oracle) return cmd_oracle(oracle_n, budget, oracle_q);
    if (*stats) return cmd_stats(sa);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
