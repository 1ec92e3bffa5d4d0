#include "fitpa/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <thread>
#include <utility>

#include "fitpa/errors.hpp"

namespace fitpa {

const char* dominance_name(Dominance d) {
  switch (d) {
    case Dominance::Red: return "red";
    case Dominance::Blue: return "blue";
    case Dominance::Undecided: return "undecided";
  }
  return "?";
}

Dominance classify_domination(const Trajectory& t, const DominationRule& rule) {
  const std::uint64_t early =
      rule.early_step > 0 ? rule.early_step : (rule.final_step * 9) / 10;
  const double q_final = t.at_step(rule.final_step).q;
  const double q_early = t.at_step(early).q;
  if (q_final > rule.threshold && q_final > q_early) return Dominance::Red;
  if (1.0 - q_final > rule.threshold && q_final < q_early) return Dominance::Blue;
  return Dominance::Undecided;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = (z / denom) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  WilsonInterval iv{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // At p = 0 (resp. p = 1) the exact bound is z^2/(2n) / denom with the other
  // endpoint pinned; compute the pinned side exactly instead of relying on
  // centre - half cancelling to zero in floating point.
  if (successes == 0) iv.lo = 0.0;
  if (successes == trials) iv.hi = 1.0;
  return iv;
}

EnsembleResult run_ensemble(const SimConfig& cfg, std::uint64_t runs,
                            const DominationRule& rule, int threads) {
  if (runs == 0) throw ConfigError("ensemble needs at least one run");
  validate_model(cfg.ta, cfg.fm);

  const std::uint64_t early =
      rule.early_step > 0 ? rule.early_step : (rule.final_step * 9) / 10;
  const std::array<std::uint64_t, 2> forced{early, rule.final_step};

  EnsembleResult res;
  res.runs = runs;
  res.master_seed = cfg.seed;
  res.terminal_q.assign(runs, 0.0);
  std::vector<Dominance> outcome(runs, Dominance::Undecided);

  unsigned t = threads > 0 ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  t = static_cast<unsigned>(std::min<std::uint64_t>(t, runs));

  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    try {
      for (std::uint64_t i = begin; i < end; ++i) {
        SimConfig c = cfg;
        c.seed = Rng::stream_seed(cfg.seed, i);
        const Trajectory traj = run(c, forced);
        outcome[i] = classify_domination(traj, rule);
        res.terminal_q[i] = traj.at_step(rule.final_step).q;
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (t <= 1) {
    worker(0, runs);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    const std::uint64_t chunk = (runs + t - 1) / t;
    for (unsigned w = 0; w < t; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(runs, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (const Dominance d : outcome) {
    switch (d) {
      case Dominance::Red: ++res.red; break;
      case Dominance::Blue: ++res.blue; break;
      case Dominance::Undecided: ++res.undecided; break;
    }
  }
  res.red_interval = wilson_interval(res.red, runs);
  res.blue_interval = wilson_interval(res.blue, runs);
  res.undecided_interval = wilson_interval(res.undecided, runs);
  return res;
}

const char* scan_param_name(ScanParam p) {
  switch (p) {
    case ScanParam::Phi: return "phi";
    case ScanParam::Alpha: return "alpha";
    case ScanParam::AlphaRed: return "alpha_red";
    case ScanParam::AlphaBlue: return "alpha_blue";
    case ScanParam::P1: return "p1";
  }
  return "?";
}

std::optional<ScanParam> scan_param_from_name(const std::string& s) {
  if (s == "phi") return ScanParam::Phi;
  if (s == "alpha") return ScanParam::Alpha;
  if (s == "alpha_red") return ScanParam::AlphaRed;
  if (s == "alpha_blue") return ScanParam::AlphaBlue;
  if (s == "p1") return ScanParam::P1;
  return std::nullopt;
}

namespace {

// Model/type pair with `param` set to v. Skips full model validation so a
// scan may pass through degenerate points (e.g. alpha_red == alpha_blue),
// but rejects values that break the functions themselves.
std::pair<TypeAssignment, FitnessModel> apply_param(const TypeAssignment& ta,
                                                    const FitnessModel& fm, ScanParam param,
                                                    double v) {
  const Rat vr = rat_from_double(v);
  switch (param) {
    case ScanParam::Phi: {
      if (v <= 0) throw ConfigError("phi scan value must be > 0");
      auto m = std::get<MultiplicativeFitness>(fm);
      m.phi = vr;
      return {ta, m};
    }
    case ScanParam::Alpha: {
      if (v <= -ta.m) throw ConfigError("alpha scan value must be > -m");
      if (std::holds_alternative<MultiplicativeFitness>(fm)) {
        auto m = std::get<MultiplicativeFitness>(fm);
        m.alpha = vr;
        return {ta, m};
      }
      auto p = std::get<PlainFitness>(fm);
      p.alpha = vr;
      return {ta, p};
    }
    case ScanParam::AlphaRed: {
      if (v <= -ta.m) throw ConfigError("alpha_red scan value must be > -m");
      auto a = std::get<AdditiveFitness>(fm);
      return {ta, AdditiveFitness::unchecked(vr, a.alpha_blue)};
    }
    case ScanParam::AlphaBlue: {
      if (v <= -ta.m) throw ConfigError("alpha_blue scan value must be > -m");
      auto a = std::get<AdditiveFitness>(fm);
      return {ta, AdditiveFitness::unchecked(a.alpha_red, vr)};
    }
    case ScanParam::P1: {
      if (v < 0 || v > 1) throw ConfigError("p1 scan value must lie in [0,1]");
      std::vector<Rat> p = ta.p;
      p.at(1) = vr;
      return {TypeAssignment::create(ta.m, std::move(p)), fm};
    }
  }
  throw ConfigError("unknown scan parameter");
}

}  // namespace

std::vector<PhaseScanPoint> phase_scan(const TypeAssignment& ta, const FitnessModel& fm,
                                       ScanParam param, double from, double to, double step) {
  if (step <= 0) throw ConfigError("scan step must be > 0");
  if (to < from) throw ConfigError("scan range is empty");
  std::vector<PhaseScanPoint> points;
  for (double v = from; v <= to + step * 0.5; v += step) {
    const auto [ta_v, fm_v] = apply_param(ta, fm, param, std::min(v, to));
    const CompetitionFunction cf = build_competition(ta_v, fm_v);
    const ZeroReport rep = find_zeros(cf);
    PhaseScanPoint pt;
    pt.param = std::min(v, to);
    pt.degenerate = rep.degenerate;
    pt.zeros = rep.zeros;
    points.push_back(std::move(pt));
  }
  return points;
}

LyapunovReport lyapunov_monitor(const TypeAssignment& ta, const FitnessModel& fm,
                                const Trajectory& t) {
  const auto* add = std::get_if<AdditiveFitness>(&fm);
  if (!add) throw WrongModel("Lyapunov diagnostics require the additive model");
  const AdditiveGeometry geo(ta, *add);

  LyapunovReport rep;
  rep.S1 = geo.S1();
  rep.S2 = geo.S2();
  rep.colors_swapped = geo.swapped();
  rep.samples.reserve(t.records.size());
  for (const auto& r : t.records) {
    // The geometry works in normalized colour order; mirror if needed.
    const double x = geo.swapped() ? r.y : r.x;
    const double y = geo.swapped() ? r.x : r.y;
    LyapunovSample s;
    s.n = r.n;
    s.ell = geo.ell(x, y);
    s.L1 = geo.L1(x / (x + y));
    s.L2 = geo.L2(x, y);
    s.L = geo.L(x, y);
    rep.samples.push_back(s);
  }
  if (!rep.samples.empty()) {
    const auto& last = t.records.back();
    const double x = geo.swapped() ? last.y : last.x;
    const double y = geo.swapped() ? last.x : last.y;
    rep.terminal_abs_ell = std::abs(geo.ell(x, y));
    rep.terminal_abs_PA = std::abs(geo.PA(x / (x + y)));
  }
  return rep;
}

}  // namespace fitpa
