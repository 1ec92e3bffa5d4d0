#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "fitpa/rng.hpp"
#include "fitpa/sim.hpp"
#include "fitpa/types.hpp"

namespace fitpa {

// Aggregate-state fast path for the multiplicative model with alpha = 0
// (phi = 1 covers the plain case). Distributionally identical to the graph
// path projected onto (X, A): each of the m choices is red with probability
// X/(X + phi Y) independently, so only the colour masses matter.
struct UrnState {
  std::uint64_t X = 0, Y = 0;  // total degree by colour, both > 0
  std::uint64_t A = 0, B = 0;  // vertex counts by colour
  std::uint64_t n = 0;
  std::uint64_t X0 = 0, Y0 = 0;
  int m = 1;
  Rat phi = 1;
  double phi_d = 1.0;

  static UrnState from_graph(const TypeAssignment& ta, const FitnessModel& fm,
                             const InitialGraph& g0);  // throws WrongModel
};

struct UrnStepOutcome {
  int red_hits = 0;
  Color new_type = Color::Red;
};

UrnStepOutcome urn_step(UrnState& u, const TypeAssignment& ta, Rng& rng);

// Exact distribution of (X_n, A_n) after n_steps, as rationals.
struct ExactDistribution {
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rat> prob;  // (X, A) -> mass
};

// Total variation distance, exact.
Rat tv_distance(const ExactDistribution& a, const ExactDistribution& b);

// Vertex-resolved enumeration over all neighbour multisets of the graph
// process, projected onto (X, A). Exact rationals. Limits: m <= 2,
// n_steps <= 6; throws StateSpaceTooLarge beyond 100000 states and
// WrongModel for models the urn comparison does not cover (alpha != 0).
ExactDistribution enumerate_graph_exact(const InitialGraph& g0, const TypeAssignment& ta,
                                        const FitnessModel& fm, int n_steps);

// Aggregate-level enumeration of the urn chain; independent implementation
// used to validate the equivalence.
ExactDistribution enumerate_urn_exact(const InitialGraph& g0, const TypeAssignment& ta,
                                      const FitnessModel& fm, int n_steps);

// Urn-path run with the Trajectory schema of the graph path.
Trajectory run_urn(const SimConfig& cfg, std::span<const std::uint64_t> forced_records = {});

}  // namespace fitpa
