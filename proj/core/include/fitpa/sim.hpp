#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fitpa/fenwick.hpp"
#include "fitpa/rng.hpp"
#include "fitpa/types.hpp"

namespace fitpa {

struct InitialGraph {
  std::vector<std::uint32_t> degree;
  std::vector<Color> type;

  // One red and one blue vertex joined by m parallel edges. Default for the
  // plain and multiplicative models.
  static InitialGraph pair(int m);
  // Two red vertices joined by m+1 parallel edges plus two blue vertices
  // joined by m+1 parallel edges. Default for the additive model: every
  // vertex has a same-coloured neighbour, which keeps the sharper additive
  // state-space bounds exact from step 0.
  static InitialGraph monochrome_pairs(int m);
};

enum class Engine { Auto, Graph, Urn };

struct SimConfig {
  TypeAssignment ta;
  FitnessModel fm;
  InitialGraph g0;          // empty -> model default
  std::uint64_t seed = 1;
  std::uint64_t steps = 0;
  std::uint64_t record_every = 0;  // 0 -> only initial and final records
  Engine engine = Engine::Auto;
  bool check_invariants = true;    // verify state-space bounds at each record
};

struct TrajectoryRecord {
  std::uint64_t n = 0;
  double q = 0.0;  // tracked fraction statistic in [0,1]
  double x = 0.0;  // additive: red mass statistic; otherwise q
  double y = 0.0;  // additive: blue mass statistic; otherwise 1-q
  double red_fraction = 0.0;  // A/(A+B)
};

struct SimSummary {
  std::uint64_t n = 0;
  std::uint64_t X = 0, Y = 0;  // total degree by colour
  std::uint64_t A = 0, B = 0;  // vertex counts by colour
  double q = 0.0, x = 0.0, y = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  SimSummary terminal;

  const TrajectoryRecord& at_step(std::uint64_t n) const;  // throws MissingRecord
};

struct StepOutcome {
  std::array<std::uint32_t, 32> picks{};  // chosen vertex ids, first m valid
  int red_hits = 0;                       // K: picks landing on red, with multiplicity
  Color new_type = Color::Red;
};

// Graph-path simulation state. X+Y = 2mn + X0+Y0 always (no self-loops).
class SimState {
 public:
  SimState(const TypeAssignment& ta, const FitnessModel& fm, const InitialGraph& g0);

  StepOutcome step(Rng& rng);

  const TypeAssignment& ta() const { return ta_; }
  const FitnessModel& fm() const { return fm_; }
  std::uint64_t n() const { return n_; }
  std::uint64_t X() const { return X_; }
  std::uint64_t Y() const { return Y_; }
  std::uint64_t A() const { return A_; }
  std::uint64_t B() const { return B_; }
  std::uint32_t degree(std::size_t v) const { return degree_[v]; }
  Color type(std::size_t v) const { return type_[v]; }
  std::size_t vertex_count() const { return degree_.size(); }

  const WeightIndex& weights() const { return weights_; }
  void reserve(std::uint64_t steps);

  // Exact weighted masses.
  Rat red_mass() const;   // X + alpha_red * A
  Rat blue_mass() const;  // Y + alpha_blue * B
  Rat c0() const { return c0_; }  // initial weighted mass
  const Rat& nu() const { return nu_; }  // additive effective-time offset

  // Tracked statistics (exact rationals converted at the call).
  // plain/multiplicative: q = x = (X + aA) / ((2m+a) n + c); y = 1 - x.
  // additive: x = (X + a1 A)/(n + nu), y = (Y + a2 B)/(n + nu), q = x/(x+y).
  double stat_q() const;
  double stat_x() const;
  double stat_y() const;
  Rat stat_x_exact() const;
  Rat stat_y_exact() const;
  Rat stat_q_exact() const;

  // Probability that a single neighbour choice lands on a red vertex.
  Rat red_pick_probability() const;

  TrajectoryRecord record() const;
  SimSummary summary() const;

  // Throws on conservation or state-space violations (tolerance 1e-9 on the
  // additive bounds). `strict_bounds` is false when the initial graph made
  // the exact additive bounds infeasible.
  void check_invariants() const;
  bool strict_bounds() const { return strict_bounds_; }

 private:
  void append_vertex(Color c, std::uint32_t deg);
  double vertex_weight(std::uint32_t deg, Color c) const;

  TypeAssignment ta_;
  FitnessModel fm_;
  std::vector<std::uint32_t> degree_;
  std::vector<Color> type_;
  WeightIndex weights_;
  std::uint64_t n_ = 0;
  std::uint64_t X_ = 0, Y_ = 0, A_ = 0, B_ = 0;
  std::uint64_t X0_ = 0, Y0_ = 0, A0_ = 0, B0_ = 0;
  Rat c0_;
  Rat nu_;  // 0 unless additive
  bool strict_bounds_ = true;
  std::uint64_t steps_since_rebuild_ = 0;
  double phi_d_ = 1.0;
  double alpha_red_d_ = 0.0, alpha_blue_d_ = 0.0;
};

// Conditional one-step drift of the tracked statistic(s), two routes:
//  expected: exact rational, assembled from the binomial sum over K;
//  theory:   competition-function form (2(m+a)P(q), P^M(x), or (F1,F2)),
//            divided by the matching time factor, evaluated in doubles.
// dim is 1 for plain/multiplicative, 2 for additive.
struct DriftPair {
  int dim = 1;
  std::array<Rat, 2> expected{};
  std::array<double, 2> expected_d{};
  std::array<double, 2> theory{};
};

DriftPair exact_drift(const SimState& s);

// Sorted, deduplicated record steps: 0, multiples of record_every (when
// nonzero), forced steps within range, and `steps` itself.
std::vector<std::uint64_t> record_schedule(std::uint64_t steps, std::uint64_t record_every,
                                           std::span<const std::uint64_t> forced);

// Runs cfg.steps steps, recording per cfg.record_every plus any steps in
// `forced_records` plus the final step. Chooses the urn fast path when
// engine is Auto and the model is multiplicative with alpha = 0.
Trajectory run(const SimConfig& cfg, std::span<const std::uint64_t> forced_records = {});

// Default initial graph for the model (pair, or monochrome_pairs for additive).
InitialGraph default_initial_graph(const TypeAssignment& ta, const FitnessModel& fm);

void validate_initial_graph(const TypeAssignment& ta, const FitnessModel& fm,
                            const InitialGraph& g0);

}  // namespace fitpa
