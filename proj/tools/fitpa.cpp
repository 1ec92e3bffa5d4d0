// Command-line front end: analyze competition functions, simulate trajectories,
// run Monte Carlo ensembles, sweep a parameter, and verify model identities.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fitpa/additive.hpp"
#include "fitpa/competition.hpp"
#include "fitpa/config.hpp"
#include "fitpa/errors.hpp"
#include "fitpa/experiments.hpp"
#include "fitpa/report.hpp"
#include "fitpa/sim.hpp"
#include "fitpa/thresholds.hpp"
#include "fitpa/urn.hpp"

namespace {

using namespace fitpa;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::optional<std::string> format;
};

void attach_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("-c,--config", a.config_path, "JSON configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", a.seed, "Master RNG seed (overrides the config)");
  cmd->add_option("-o,--out", a.out_dir, "Output directory (overrides the config)");
  cmd->add_option("--threads", a.threads, "Worker threads, 0 = hardware (overrides the config)");
  cmd->add_option("--format", a.format, "Output format: csv or json (overrides the config)");
}

RunConfig load(const CommonArgs& a) {
  FlagOverrides f;
  f.seed = a.seed;
  f.out_dir = a.out_dir;
  f.threads = a.threads;
  f.format = a.format;
  return load_config_file(a.config_path, f);
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void finish(const RunConfig& rc, const std::string& command, std::vector<OutputFile> outputs) {
  const auto manifest = manifest_json(rc, command, outputs);
  const auto mf = write_output(join_path(rc.out_dir, "manifest.json"), manifest);
  outputs.push_back(mf);
  for (const auto& f : outputs)
    std::cout << "wrote " << f.path << " (" << f.bytes << " bytes, fnv1a64 " << f.digest << ")\n";
}

int cmd_analyze(const CommonArgs& a, bool svg) {
  const RunConfig rc = load(a);
  const CompetitionFunction cf = build_competition(rc.ta, rc.fm);
  const ZeroReport zr = find_zeros(cf);
  const ThresholdReport tr = endpoint_thresholds(rc.ta, rc.fm);

  std::cout << "model " << model_name(rc.fm) << ", competition function " << kind_name(cf.kind)
            << (zr.degenerate ? " (identically zero)" : "") << "\n";
  for (const auto& z : zr.zeros)
    std::cout << "  zero at " << format_double(z.location) << "  " << zero_class_name(z.cls)
              << "  derivative " << format_double(z.derivative) << "\n";
  if (tr.applicable)
    for (const auto& e : tr.entries)
      std::cout << "  threshold " << e.name << " = " << format_double(e.value) << "  ("
                << e.meaning << ")\n";
  else
    std::cout << "  endpoint thresholds not applicable: " << tr.reason << "\n";

  std::vector<OutputFile> outputs;
  outputs.push_back(write_output(join_path(rc.out_dir, "analysis.json"),
                                 analysis_report_json(rc, cf, zr, tr)));
  if (svg) {
    const std::string title =
        std::string(kind_name(cf.kind)) + " on [0,1], model " + model_name(rc.fm);
    outputs.push_back(
        write_output(join_path(rc.out_dir, "competition.svg"), competition_svg(cf, zr, title)));
  }
  finish(rc, "analyze", std::move(outputs));
  return 0;
}

int cmd_simulate(const CommonArgs& a) {
  const RunConfig rc = load(a);
  const Trajectory t = run(to_sim_config(rc));
  const auto& s = t.terminal;
  std::cout << "n=" << s.n << " q=" << format_double(s.q) << " X=" << s.X << " Y=" << s.Y
            << " A=" << s.A << " B=" << s.B << "\n";

  std::vector<OutputFile> outputs;
  if (rc.format == "json")
    outputs.push_back(
        write_output(join_path(rc.out_dir, "trajectory.json"), trajectory_json(rc, t)));
  else
    outputs.push_back(write_output(join_path(rc.out_dir, "trajectory.csv"), trajectory_csv(t)));
  finish(rc, "simulate", std::move(outputs));
  return 0;
}

int cmd_ensemble(const CommonArgs& a, std::uint64_t early_step, bool per_run) {
  const RunConfig rc = load(a);
  DominationRule rule = DominationRule::at(rc.steps);
  if (early_step > 0) rule.early_step = early_step;
  const EnsembleResult er = run_ensemble(to_sim_config(rc), rc.runs, rule, rc.threads);

  const double n = static_cast<double>(er.runs);
  std::cout << er.runs << " runs: red " << er.red << " (" << format_double(er.red / n * 100.0)
            << "%, wilson95 [" << format_double(er.red_interval.lo) << ", "
            << format_double(er.red_interval.hi) << "]), blue " << er.blue << ", undecided "
            << er.undecided << "\n";

  std::vector<OutputFile> outputs;
  outputs.push_back(
      write_output(join_path(rc.out_dir, "ensemble.json"), ensemble_json(rc, er, rule, per_run)));
  finish(rc, "ensemble", std::move(outputs));
  return 0;
}

int cmd_scan(const CommonArgs& a, const std::string& param, std::optional<double> from,
             std::optional<double> to, std::optional<double> step) {
  const RunConfig rc = load(a);
  ScanSpec spec;
  if (rc.scan) spec = *rc.scan;
  if (!param.empty()) {
    const auto p = scan_param_from_name(param);
    if (!p) throw ConfigError("scan: unknown parameter \"" + param + "\"");
    spec.param = p.value();
  } else if (!rc.scan) {
    throw ConfigError("scan: no \"scan\" block in the config and no --param given");
  }
  if (from) spec.from = *from;
  if (to) spec.to = *to;
  if (step) spec.step = *step;
  if (spec.step <= 0) throw ConfigError("scan: step must be > 0");
  if (spec.to < spec.from) throw ConfigError("scan: empty range");

  const auto points = phase_scan(rc.ta, rc.fm, spec.param, spec.from, spec.to, spec.step);
  std::size_t zero_rows = 0;
  for (const auto& pt : points) zero_rows += pt.degenerate ? 1 : pt.zeros.size();
  std::cout << "scan " << scan_param_name(spec.param) << " in [" << format_double(spec.from)
            << ", " << format_double(spec.to) << "] step " << format_double(spec.step) << ": "
            << points.size() << " points, " << zero_rows << " rows\n";

  std::vector<OutputFile> outputs;
  outputs.push_back(write_output(join_path(rc.out_dir, "scan.csv"), phase_scan_csv(points)));
  finish(rc, "scan", std::move(outputs));
  return 0;
}

// ---- verify ---------------------------------------------------------------

struct CheckResult {
  std::string name;
  std::string status;  // PASS | FAIL | SKIP
  std::string detail;
};

CheckResult check_drift_identity(const RunConfig& rc) {
  SimState s(rc.ta, rc.fm, rc.g0);
  Rng rng(rc.seed);
  const std::uint64_t steps = std::min<std::uint64_t>(rc.steps ? rc.steps : 500, 500);
  double worst = 0.0;
  for (std::uint64_t i = 0; i <= steps; ++i) {
    const DriftPair d = exact_drift(s);
    for (int k = 0; k < d.dim; ++k) {
      const double scale = std::max({1.0, std::fabs(d.expected_d[k]), std::fabs(d.theory[k])});
      worst = std::max(worst, std::fabs(d.expected_d[k] - d.theory[k]) / scale);
    }
    if (i < steps) s.step(rng);
  }
  const bool ok = worst <= 1e-12;
  return {"drift_identity", ok ? "PASS" : "FAIL",
          "max relative deviation " + format_double(worst) + " over " + std::to_string(steps + 1) +
              " states"};
}

CheckResult check_state_space(const RunConfig& rc) {
  SimState s(rc.ta, rc.fm, rc.g0);
  Rng rng(rc.seed + 1);
  const std::uint64_t steps = std::min<std::uint64_t>(rc.steps ? rc.steps : 2000, 2000);
  try {
    s.check_invariants();
    for (std::uint64_t i = 0; i < steps; ++i) {
      s.step(rng);
      s.check_invariants();
    }
  } catch (const VerificationFailure& e) {
    return {"state_space_bounds", "FAIL", e.what()};
  }
  return {"state_space_bounds", "PASS",
          std::to_string(steps) + " steps within bounds" +
              (s.strict_bounds() ? "" : " (absorbing-endpoint bounds not active)")};
}

CheckResult check_enumeration(const RunConfig& rc) {
  if (!urn_eligible(rc.fm)) return {"enumeration_equivalence", "SKIP", "urn path needs alpha = 0"};
  if (rc.ta.m > 2) return {"enumeration_equivalence", "SKIP", "exact enumeration needs m <= 2"};
  const int n_steps = rc.ta.m == 1 ? 4 : 3;
  const auto g = enumerate_graph_exact(rc.g0, rc.ta, rc.fm, n_steps);
  const auto u = enumerate_urn_exact(rc.g0, rc.ta, rc.fm, n_steps);
  const Rat tv = tv_distance(g, u);
  const bool ok = tv == 0;
  return {"enumeration_equivalence", ok ? "PASS" : "FAIL",
          "TV(graph, urn) = " + rat_to_string(tv) + " after " + std::to_string(n_steps) +
              " steps, " + std::to_string(g.prob.size()) + " outcomes"};
}

CheckResult check_lyapunov(const RunConfig& rc) {
  const auto* af = std::get_if<AdditiveFitness>(&rc.fm);
  if (!af) return {"lyapunov_descent", "SKIP", "additive model only"};
  if (af->alpha_red == af->alpha_blue)
    return {"lyapunov_descent", "SKIP", "equal fitness: the drift criterion is degenerate"};
  const AdditiveGeometry geo(rc.ta, *af);
  double worst_gap = -1e300;
  const int G = 200;
  for (int i = 0; i <= G; ++i) {
    for (int j = 0; j <= G; ++j) {
      const auto xy = geo.point(i / static_cast<double>(G), j / static_cast<double>(G));
      const double q = xy[0] / (xy[0] + xy[1]);
      // Quadratic descent bound: the cross term in grad L . F is capped by
      // S2 |ell| |PA|, so the drift is at most -2 (|ell| - S2 |PA|)^2.
      const double s =
          std::fabs(geo.ell(xy[0], xy[1])) - geo.S2() * std::fabs(geo.PA(q));
      const double rhs = -2.0 * s * s + 1e-8;
      worst_gap = std::max(worst_gap, geo.grad_L_dot_F(xy[0], xy[1]) - rhs);
    }
  }
  double worst_rate = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double u = (k % 5) / 4.0;
    const double v = (k / 5) / 3.0;
    const auto xy = geo.point(u, v);
    const auto fr = integrate_flow(geo, xy[0], xy[1], 50.0);
    worst_rate = std::max(worst_rate, fr.max_L_increase_rate);
  }
  const bool ok = worst_gap <= 0.0 && worst_rate <= 1e-7;
  return {"lyapunov_descent", ok ? "PASS" : "FAIL",
          "max drift-bound gap " + format_double(worst_gap) + ", max dL/dt along flows " +
              format_double(worst_rate)};
}

CheckResult check_reductions(const RunConfig& rc) {
  const int m = rc.ta.m;
  double worst = 0.0;
  // equal additive weights collapse onto the plain form
  for (int i = 0; i <= 1000; ++i) {
    const double z = i / 1000.0;
    worst = std::max(
        worst, std::fabs(eval_PA(rc.ta, 1.0, 1.0, z) - 2.0 * (m + 1) * eval_P(rc.ta, z)));
  }
  // equal multiplicative weight collapses onto a rescaled plain form
  for (int i = 0; i <= 1000; ++i) {
    const double z = i / 1000.0;
    worst = std::max(worst, std::fabs(eval_PM(rc.ta, 1.0, 0.0, z) - eval_P(rc.ta, z)));
  }
  // expanded rational form agrees with the defining formula
  const CompetitionFunction cf = build_competition(rc.ta, rc.fm);
  double worst2 = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double z = i / 1000.0;
    worst2 = std::max(worst2, std::fabs(cf.eval(z) - cf.eval_formula(z)));
  }
  const bool ok = worst <= 1e-12 && worst2 <= 1e-9;
  return {"reduction_identities", ok ? "PASS" : "FAIL",
          "max reduction deviation " + format_double(worst) + ", max dual-evaluation gap " +
              format_double(worst2)};
}

int cmd_verify(const CommonArgs& a) {
  const RunConfig rc = load(a);
  std::vector<CheckResult> results;
  results.push_back(check_drift_identity(rc));
  results.push_back(check_state_space(rc));
  results.push_back(check_enumeration(rc));
  results.push_back(check_lyapunov(rc));
  results.push_back(check_reductions(rc));

  bool all_ok = true;
  std::string body;
  for (const auto& r : results) {
    std::cout << r.status << " " << r.name << ": " << r.detail << "\n";
    body += r.status + " " + r.name + ": " + r.detail + "\n";
    if (r.status == "FAIL") all_ok = false;
  }
  std::vector<OutputFile> outputs;
  outputs.push_back(write_output(join_path(rc.out_dir, "verify.txt"), body));
  finish(rc, "verify", std::move(outputs));
  if (!all_ok) throw VerificationFailure("verification checks failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-type preferential attachment with vertex fitness: analysis and simulation"};
  app.require_subcommand(1);

  CommonArgs a_analyze, a_simulate, a_ensemble, a_scan, a_verify;
  bool svg = false;
  std::uint64_t early_step = 0;
  bool per_run = false;
  std::string scan_param;
  std::optional<double> scan_from, scan_to, scan_step;

  auto* analyze =
      app.add_subcommand("analyze", "Classify zeros and endpoint thresholds of the model");
  attach_common(analyze, a_analyze);
  analyze->add_flag("--svg", svg, "Also write a plot of the competition function");

  auto* simulate = app.add_subcommand("simulate", "Run one trajectory and write it out");
  attach_common(simulate, a_simulate);

  auto* ensemble = app.add_subcommand("ensemble", "Monte Carlo runs with dominance counts");
  attach_common(ensemble, a_ensemble);
  ensemble->add_option("--early-step", early_step,
                       "Comparison step for the dominance call (default 90% of steps)");
  ensemble->add_flag("--per-run", per_run, "Include per-run terminal statistics in the output");

  auto* scan = app.add_subcommand("scan", "Sweep a parameter and record classified zeros");
  attach_common(scan, a_scan);
  scan->add_option("--param", scan_param, "Parameter: phi, alpha, alpha_red, alpha_blue, p1");
  scan->add_option("--from", scan_from, "Sweep start");
  scan->add_option("--to", scan_to, "Sweep end");
  scan->add_option("--step", scan_step, "Sweep step (> 0)");

  auto* verify = app.add_subcommand("verify", "Check model identities and invariants");
  attach_common(verify, a_verify);

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(analyze)) return cmd_analyze(a_analyze, svg);
    if (app.got_subcommand(simulate)) return cmd_simulate(a_simulate);
    if (app.got_subcommand(ensemble)) return cmd_ensemble(a_ensemble, early_step, per_run);
    if (app.got_subcommand(scan))
      return cmd_scan(a_scan, scan_param, scan_from, scan_to, scan_step);
    if (app.got_subcommand(verify)) return cmd_verify(a_verify);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fitpa::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fitpa::VerificationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
