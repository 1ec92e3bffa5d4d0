#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fitpa/additive.hpp"
#include "fitpa/sim.hpp"
#include "fitpa/thresholds.hpp"

namespace fitpa {

// Dominance call on a finished trajectory: Red needs the tracked statistic
// above 1/2 at final_step AND strictly above its value at early_step
// (monotone approach); Blue is the mirror on 1-q; anything else is Undecided.
struct DominationRule {
  std::uint64_t final_step = 0;
  std::uint64_t early_step = 0;  // 0 -> floor(0.9 * final_step)
  double threshold = 0.5;

  static DominationRule at(std::uint64_t final_step) {
    return DominationRule{final_step, (final_step * 9) / 10, 0.5};
  }
};

enum class Dominance { Red, Blue, Undecided };

const char* dominance_name(Dominance d);

Dominance classify_domination(const Trajectory& t, const DominationRule& rule);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// 95% Wilson score interval for successes/trials.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct EnsembleResult {
  std::uint64_t runs = 0;
  std::uint64_t red = 0, blue = 0, undecided = 0;
  WilsonInterval red_interval, blue_interval, undecided_interval;
  std::vector<double> terminal_q;  // per run, indexed by run
  std::uint64_t master_seed = 0;
};

// Monte Carlo ensemble; run i uses the RNG stream (master seed, i), so the
// result is independent of the thread schedule. threads = 0 picks the
// hardware count. Throws ConfigError when runs = 0.
EnsembleResult run_ensemble(const SimConfig& cfg, std::uint64_t runs, const DominationRule& rule,
                            int threads = 0);

// Which scalar a phase scan sweeps.
enum class ScanParam { Phi, Alpha, AlphaRed, AlphaBlue, P1 };

const char* scan_param_name(ScanParam p);
std::optional<ScanParam> scan_param_from_name(const std::string& s);

struct PhaseScanPoint {
  double param = 0.0;
  bool degenerate = false;
  std::vector<ClassifiedZero> zeros;
};

// find_zeros across a parameter grid; rows for the bifurcation CSV.
std::vector<PhaseScanPoint> phase_scan(const TypeAssignment& ta, const FitnessModel& fm,
                                       ScanParam param, double from, double to, double step);

// Lyapunov diagnostics along an additive trajectory. Throws WrongModel for
// non-additive fitness.
LyapunovReport lyapunov_monitor(const TypeAssignment& ta, const FitnessModel& fm,
                                const Trajectory& t);

}  // namespace fitpa
