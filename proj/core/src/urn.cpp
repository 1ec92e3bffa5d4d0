#include "fitpa/urn.hpp"

#include <string>

#include "fitpa/errors.hpp"

namespace fitpa {

UrnState UrnState::from_graph(const TypeAssignment& ta, const FitnessModel& fm,
                              const InitialGraph& g0) {
  if (!urn_eligible(fm))
    throw WrongModel("urn path requires the multiplicative model with alpha = 0 (" +
                     model_name(fm) + " given)");
  validate_initial_graph(ta, fm, g0);
  UrnState u;
  u.m = ta.m;
  u.phi = effective_phi(fm);
  u.phi_d = to_double(u.phi);
  for (std::size_t v = 0; v < g0.degree.size(); ++v) {
    if (g0.type[v] == Color::Red) {
      u.X += g0.degree[v];
      ++u.A;
    } else {
      u.Y += g0.degree[v];
      ++u.B;
    }
  }
  u.X0 = u.X;
  u.Y0 = u.Y;
  return u;
}

UrnStepOutcome urn_step(UrnState& u, const TypeAssignment& ta, Rng& rng) {
  UrnStepOutcome out;
  const double x = static_cast<double>(u.X);
  const double rho = x / (x + u.phi_d * static_cast<double>(u.Y));
  for (int j = 0; j < u.m; ++j)
    if (rng.bernoulli(rho)) ++out.red_hits;
  out.new_type = rng.bernoulli(ta.p_d[static_cast<std::size_t>(out.red_hits)]) ? Color::Red
                                                                               : Color::Blue;
  u.X += static_cast<std::uint64_t>(out.red_hits);
  u.Y += static_cast<std::uint64_t>(u.m - out.red_hits);
  if (out.new_type == Color::Red) {
    u.X += static_cast<std::uint64_t>(u.m);
    ++u.A;
  } else {
    u.Y += static_cast<std::uint64_t>(u.m);
    ++u.B;
  }
  ++u.n;
  return out;
}

Trajectory run_urn(const SimConfig& cfg, std::span<const std::uint64_t> forced_records) {
  validate_model(cfg.ta, cfg.fm);
  InitialGraph g0 = cfg.g0;
  if (g0.degree.empty()) g0 = default_initial_graph(cfg.ta, cfg.fm);
  UrnState u = UrnState::from_graph(cfg.ta, cfg.fm, g0);

  Rng rng(cfg.seed);
  const auto at = record_schedule(cfg.steps, cfg.record_every, forced_records);

  Trajectory traj;
  traj.records.reserve(at.size());
  const auto make_record = [&] {
    // With alpha = 0 the tracked statistic is X / (X + Y) exactly.
    TrajectoryRecord r;
    r.n = u.n;
    r.q = static_cast<double>(u.X) / static_cast<double>(u.X + u.Y);
    r.x = r.q;
    r.y = 1.0 - r.q;
    r.red_fraction = static_cast<double>(u.A) / static_cast<double>(u.A + u.B);
    return r;
  };
  std::size_t next = 0;
  const auto maybe_record = [&] {
    if (next < at.size() && u.n == at[next]) {
      traj.records.push_back(make_record());
      if (cfg.check_invariants &&
          u.X + u.Y != 2 * static_cast<std::uint64_t>(u.m) * u.n + u.X0 + u.Y0)
        throw VerificationFailure("urn degree conservation violated at step " +
                                  std::to_string(u.n));
      ++next;
    }
  };
  maybe_record();
  for (std::uint64_t i = 0; i < cfg.steps; ++i) {
    urn_step(u, cfg.ta, rng);
    maybe_record();
  }
  traj.terminal.n = u.n;
  traj.terminal.X = u.X;
  traj.terminal.Y = u.Y;
  traj.terminal.A = u.A;
  traj.terminal.B = u.B;
  traj.terminal.q = static_cast<double>(u.X) / static_cast<double>(u.X + u.Y);
  traj.terminal.x = traj.terminal.q;
  traj.terminal.y = 1.0 - traj.terminal.q;
  return traj;
}

}  // namespace fitpa
