#include "fitpa/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fitpa/competition.hpp"
#include "fitpa/errors.hpp"
#include "fitpa/urn.hpp"

namespace fitpa {

namespace {

constexpr std::uint64_t kRebuildPeriod = std::uint64_t{1} << 16;

}  // namespace

InitialGraph InitialGraph::pair(int m) {
  InitialGraph g;
  g.degree = {static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(m)};
  g.type = {Color::Red, Color::Blue};
  return g;
}

InitialGraph InitialGraph::monochrome_pairs(int m) {
  InitialGraph g;
  const auto d = static_cast<std::uint32_t>(m + 1);
  g.degree = {d, d, d, d};
  g.type = {Color::Red, Color::Red, Color::Blue, Color::Blue};
  return g;
}

InitialGraph default_initial_graph(const TypeAssignment& ta, const FitnessModel& fm) {
  if (std::holds_alternative<AdditiveFitness>(fm)) return InitialGraph::monochrome_pairs(ta.m);
  return InitialGraph::pair(ta.m);
}

void validate_initial_graph(const TypeAssignment& ta, const FitnessModel& fm,
                            const InitialGraph& g0) {
  (void)fm;
  if (g0.degree.empty()) throw InvalidInitialGraph("initial graph has no vertices");
  if (g0.degree.size() != g0.type.size())
    throw InvalidInitialGraph("initial graph degree/type arrays differ in length");
  bool red = false, blue = false;
  for (std::size_t v = 0; v < g0.degree.size(); ++v) {
    if (g0.degree[v] < static_cast<std::uint32_t>(ta.m))
      throw InvalidInitialGraph("initial vertex " + std::to_string(v) + " has degree " +
                                std::to_string(g0.degree[v]) + " < m = " + std::to_string(ta.m));
    (g0.type[v] == Color::Red ? red : blue) = true;
  }
  if (!red || !blue)
    throw InvalidInitialGraph("initial graph must contain at least one vertex of each type");
}

const TrajectoryRecord& Trajectory::at_step(std::uint64_t n) const {
  const auto it = std::lower_bound(records.begin(), records.end(), n,
                                   [](const TrajectoryRecord& r, std::uint64_t v) { return r.n < v; });
  if (it == records.end() || it->n != n)
    throw MissingRecord("no record at step " + std::to_string(n));
  return *it;
}

SimState::SimState(const TypeAssignment& ta, const FitnessModel& fm, const InitialGraph& g0)
    : ta_(ta), fm_(fm) {
  validate_model(ta, fm);
  validate_initial_graph(ta, fm, g0);
  phi_d_ = to_double(effective_phi(fm));
  alpha_red_d_ = to_double(alpha_of(fm, Color::Red));
  alpha_blue_d_ = to_double(alpha_of(fm, Color::Blue));

  for (std::size_t v = 0; v < g0.degree.size(); ++v) append_vertex(g0.type[v], g0.degree[v]);
  X0_ = X_;
  Y0_ = Y_;
  A0_ = A_;
  B0_ = B_;

  const Rat aR = alpha_of(fm, Color::Red);
  const Rat aB = alpha_of(fm, Color::Blue);
  c0_ = Rat(X0_ + Y0_) + aR * Rat(A0_) + aB * Rat(B0_);

  if (std::holds_alternative<AdditiveFitness>(fm)) {
    // Effective-time offset nu: x = (X + aR A)/(n + nu), y = (Y + aB B)/(n + nu).
    // Each state-space bound advances by at least (resp. at most) its own
    // slope every step, so each holds for all n as soon as it holds at n = 0,
    // which pins nu to an exact rational interval; we take the midpoint.
    Rat u = Rat(X0_) + aR * Rat(A0_);  // mass of the lower-alpha colour
    Rat w = Rat(Y0_) + aB * Rat(B0_);
    Rat aL = aR, aH = aB;
    if (aL > aH) {
      std::swap(aL, aH);
      std::swap(u, w);
    }
    const Rat M(ta.m);
    const Rat S = u + w;
    const Rat G = (M + aH) * u + (M + aL) * w;
    Rat lo = Rat(S / (2 * M + aH));
    lo = std::max(lo, Rat(G / ((M + aH) * (2 * M + aL))));
    Rat hi = Rat(S / (2 * M + aL));
    hi = std::min(hi, Rat(G / ((M + aL) * (2 * M + aH))));
    if (lo > hi)
      throw InvalidInitialGraph("no effective-time offset satisfies the state-space bounds");
    if (ta.endpoint_absorbing()) {
      const Rat lo0 =
          std::max(lo, Rat(((M + 2 + aH) * u + (M + 1 + aL) * w) / ((M + 2 + aH) * (2 * M + aL))));
      const Rat hi0 =
          std::min(hi, Rat(((M + 1 + aH) * u + (M + 1 + aL) * w) / ((M + 1 + aL) * (2 * M + aH))));
      if (lo0 <= hi0) {
        lo = lo0;
        hi = hi0;
      } else {
        strict_bounds_ = false;  // sharper bounds unattainable for this graph
      }
    }
    nu_ = (lo + hi) / 2;
  }
}

void SimState::append_vertex(Color c, std::uint32_t deg) {
  degree_.push_back(deg);
  type_.push_back(c);
  weights_.push_back(vertex_weight(deg, c));
  if (c == Color::Red) {
    X_ += deg;
    ++A_;
  } else {
    Y_ += deg;
    ++B_;
  }
}

double SimState::vertex_weight(std::uint32_t deg, Color c) const {
  const double w = deg + (c == Color::Red ? alpha_red_d_ : alpha_blue_d_);
  return c == Color::Blue ? w * phi_d_ : w;
}

void SimState::reserve(std::uint64_t steps) {
  const std::size_t cap = degree_.size() + static_cast<std::size_t>(steps);
  degree_.reserve(cap);
  type_.reserve(cap);
  weights_.reserve(cap);
}

StepOutcome SimState::step(Rng& rng) {
  StepOutcome out;
  const int m = ta_.m;
  // All m choices use the weights of the current graph (frozen for the step).
  const double total = weights_.total();
  for (int j = 0; j < m; ++j) {
    const std::size_t v = weights_.sample(rng.next_double() * total);
    out.picks[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(v);
    if (type_[v] == Color::Red) ++out.red_hits;
  }
  out.new_type = rng.bernoulli(ta_.p_d[static_cast<std::size_t>(out.red_hits)]) ? Color::Red
                                                                                : Color::Blue;
  for (int j = 0; j < m; ++j) {
    const std::size_t v = out.picks[static_cast<std::size_t>(j)];
    ++degree_[v];
    if (type_[v] == Color::Red) {
      ++X_;
      weights_.add(v, 1.0);
    } else {
      ++Y_;
      weights_.add(v, phi_d_);
    }
  }
  append_vertex(out.new_type, static_cast<std::uint32_t>(m));
  ++n_;
  if (++steps_since_rebuild_ >= kRebuildPeriod) {
    weights_.rebuild();
    steps_since_rebuild_ = 0;
  }
  return out;
}

Rat SimState::red_mass() const { return Rat(X_) + alpha_of(fm_, Color::Red) * Rat(A_); }

Rat SimState::blue_mass() const { return Rat(Y_) + alpha_of(fm_, Color::Blue) * Rat(B_); }

Rat SimState::red_pick_probability() const {
  const Rat rm = red_mass();
  return rm / (rm + effective_phi(fm_) * blue_mass());
}

Rat SimState::stat_x_exact() const {
  if (std::holds_alternative<AdditiveFitness>(fm_)) return red_mass() / (Rat(n_) + nu_);
  const Rat a = alpha_of(fm_, Color::Red);
  return red_mass() / ((2 * Rat(ta_.m) + a) * Rat(n_) + c0_);
}

Rat SimState::stat_y_exact() const {
  if (std::holds_alternative<AdditiveFitness>(fm_)) return blue_mass() / (Rat(n_) + nu_);
  return 1 - stat_x_exact();
}

Rat SimState::stat_q_exact() const {
  if (std::holds_alternative<AdditiveFitness>(fm_)) {
    const Rat rm = red_mass();
    return rm / (rm + blue_mass());
  }
  return stat_x_exact();
}

double SimState::stat_q() const { return to_double(stat_q_exact()); }
double SimState::stat_x() const { return to_double(stat_x_exact()); }
double SimState::stat_y() const { return to_double(stat_y_exact()); }

TrajectoryRecord SimState::record() const {
  TrajectoryRecord r;
  r.n = n_;
  r.q = stat_q();
  r.x = stat_x();
  r.y = stat_y();
  r.red_fraction = static_cast<double>(A_) / static_cast<double>(A_ + B_);
  return r;
}

SimSummary SimState::summary() const {
  SimSummary s;
  s.n = n_;
  s.X = X_;
  s.Y = Y_;
  s.A = A_;
  s.B = B_;
  s.q = stat_q();
  s.x = stat_x();
  s.y = stat_y();
  return s;
}

void SimState::check_invariants() const {
  const std::uint64_t m64 = static_cast<std::uint64_t>(ta_.m);
  if (X_ + Y_ != 2 * m64 * n_ + X0_ + Y0_)
    throw VerificationFailure("degree conservation violated at step " + std::to_string(n_));
  if (A_ + B_ != n_ + A0_ + B0_)
    throw VerificationFailure("vertex-count conservation violated at step " + std::to_string(n_));

  const double exact = weights_.exact_total();
  if (std::abs(weights_.total() - exact) > 1e-9 * std::max(1.0, std::abs(exact)))
    throw VerificationFailure("sampling-weight total drifted beyond 1e-9 at step " +
                              std::to_string(n_));

  const Rat q = stat_q_exact();
  if (q < 0 || q > 1)
    throw VerificationFailure("tracked fraction left [0,1] at step " + std::to_string(n_));

  // Every vertex has degree >= m, and with absorbing endpoints every vertex
  // arriving after a start that satisfies the bound has a same-colour
  // neighbour, giving degree sums >= (m+1) x count.
  if (m64 * A_ > X_ || m64 * B_ > Y_)
    throw VerificationFailure("degree-count bound violated at step " + std::to_string(n_));
  if (ta_.endpoint_absorbing()) {
    if ((m64 + 1) * A0_ <= X0_ && (m64 + 1) * A_ > X_)
      throw VerificationFailure("red same-colour-neighbour bound violated at step " +
                                std::to_string(n_));
    if ((m64 + 1) * B0_ <= Y0_ && (m64 + 1) * B_ > Y_)
      throw VerificationFailure("blue same-colour-neighbour bound violated at step " +
                                std::to_string(n_));
  }

  if (!std::holds_alternative<AdditiveFitness>(fm_)) return;

  Rat u = red_mass(), w = blue_mass();
  Rat aL = alpha_of(fm_, Color::Red), aH = alpha_of(fm_, Color::Blue);
  if (aL > aH) {
    std::swap(aL, aH);
    std::swap(u, w);
  }
  const Rat M(ta_.m);
  const Rat t = Rat(n_) + nu_;
  const auto fail = [this](const char* what) {
    throw VerificationFailure(std::string("additive state-space bound violated (") + what +
                              ") at step " + std::to_string(n_));
  };
  if (u + w < (2 * M + aL) * t) fail("mass sum, lower");
  if (u + w > (2 * M + aH) * t) fail("mass sum, upper");
  const Rat G = (M + aH) * u + (M + aL) * w;
  if (G < (M + aL) * (2 * M + aH) * t) fail("parallelogram, lower");
  if (G > (M + aH) * (2 * M + aL) * t) fail("parallelogram, upper");
  if (ta_.endpoint_absorbing() && strict_bounds_) {
    if ((M + 1 + aH) * u + (M + 1 + aL) * w < (M + 1 + aL) * (2 * M + aH) * t)
      fail("sharpened parallelogram, lower");
    if ((M + 2 + aH) * u + (M + 1 + aL) * w > (M + 2 + aH) * (2 * M + aL) * t)
      fail("sharpened parallelogram, upper");
  }
}

DriftPair exact_drift(const SimState& s) {
  const TypeAssignment& ta = s.ta();
  const int m = ta.m;
  DriftPair d;

  // Distribution of K (red choices among the m picks): the picks are
  // independent and each is red with the single-pick probability.
  const Rat rho = s.red_pick_probability();
  std::vector<Rat> rp(m + 1), bp(m + 1);  // rho^k, (1-rho)^k
  rp[0] = 1;
  bp[0] = 1;
  for (int k = 1; k <= m; ++k) {
    rp[k] = rp[k - 1] * rho;
    bp[k] = bp[k - 1] * (1 - rho);
  }
  std::vector<Rat> wk(m + 1);
  for (int k = 0; k <= m; ++k) wk[k] = Rat(binomial(m, k)) * rp[k] * bp[m - k];

  const Rat aR = alpha_of(s.fm(), Color::Red);
  const Rat aB = alpha_of(s.fm(), Color::Blue);
  const Rat xm = s.red_mass();
  const Rat ym = s.blue_mass();
  const Rat n1 = Rat(s.n()) + 1;

  if (std::holds_alternative<AdditiveFitness>(s.fm())) {
    d.dim = 2;
    const Rat tnext = n1 + s.nu();
    Rat ex = 0, ey = 0;
    for (int k = 0; k <= m; ++k) {
      // New vertex red: X gains k + m, A gains 1; Y gains m - k.
      const Rat x_red = xm + k + m + aR;
      const Rat y_red = ym + (m - k);
      // New vertex blue: X gains k; Y gains m - k + m, B gains 1.
      const Rat x_blue = xm + k;
      const Rat y_blue = ym + (m - k) + m + aB;
      ex += wk[k] * (ta.p[k] * x_red + (1 - ta.p[k]) * x_blue);
      ey += wk[k] * (ta.p[k] * y_red + (1 - ta.p[k]) * y_blue);
    }
    d.expected[0] = ex / tnext - s.stat_x_exact();
    d.expected[1] = ey / tnext - s.stat_y_exact();

    const double q = s.stat_q();
    const double x = s.stat_x();
    const double y = s.stat_y();
    const double a1 = to_double(aR), a2 = to_double(aB);
    const double P = eval_P(ta, q);
    const double tn = to_double(tnext);
    d.theory[0] = ((2 * m + a1) * q + 2 * (m + a1) * P - x) / tn;
    d.theory[1] = ((2 * m + a2) * (1 - q) - 2 * (m + a2) * P - y) / tn;
  } else {
    d.dim = 1;
    const Rat dnext = (2 * Rat(m) + aR) * n1 + s.c0();
    Rat ex = 0;
    for (int k = 0; k <= m; ++k) {
      const Rat x_red = xm + k + m + aR;
      const Rat x_blue = xm + k;
      ex += wk[k] * (ta.p[k] * x_red + (1 - ta.p[k]) * x_blue);
    }
    d.expected[0] = ex / dnext - s.stat_x_exact();

    const double x = s.stat_x();
    const double a = to_double(aR);
    const double dn = to_double(dnext);
    if (std::holds_alternative<MultiplicativeFitness>(s.fm())) {
      const double phi = to_double(std::get<MultiplicativeFitness>(s.fm()).phi);
      d.theory[0] = (2 * m + a) * eval_PM(ta, phi, a, x) / dn;
    } else {
      d.theory[0] = 2 * (m + a) * eval_P(ta, x) / dn;
    }
  }
  d.expected_d[0] = to_double(d.expected[0]);
  d.expected_d[1] = to_double(d.expected[1]);
  return d;
}

std::vector<std::uint64_t> record_schedule(std::uint64_t steps, std::uint64_t record_every,
                                           std::span<const std::uint64_t> forced) {
  std::vector<std::uint64_t> at{0, steps};
  if (record_every > 0)
    for (std::uint64_t n = record_every; n < steps; n += record_every) at.push_back(n);
  for (std::uint64_t n : forced)
    if (n <= steps) at.push_back(n);
  std::sort(at.begin(), at.end());
  at.erase(std::unique(at.begin(), at.end()), at.end());
  return at;
}

Trajectory run(const SimConfig& cfg, std::span<const std::uint64_t> forced_records) {
  validate_model(cfg.ta, cfg.fm);
  SimConfig c = cfg;
  if (c.g0.degree.empty()) c.g0 = default_initial_graph(c.ta, c.fm);

  Engine engine = c.engine;
  if (engine == Engine::Auto)
    engine = urn_eligible(c.fm) ? Engine::Urn : Engine::Graph;
  if (engine == Engine::Urn) {
    c.engine = Engine::Urn;
    return run_urn(c, forced_records);
  }

  SimState st(c.ta, c.fm, c.g0);
  st.reserve(c.steps);
  Rng rng(c.seed);
  const auto at = record_schedule(c.steps, c.record_every, forced_records);

  Trajectory traj;
  traj.records.reserve(at.size());
  std::size_t next = 0;
  const auto maybe_record = [&] {
    if (next < at.size() && st.n() == at[next]) {
      traj.records.push_back(st.record());
      if (c.check_invariants) st.check_invariants();
      ++next;
    }
  };
  maybe_record();
  for (std::uint64_t i = 0; i < c.steps; ++i) {
    st.step(rng);
    maybe_record();
  }
  traj.terminal = st.summary();
  return traj;
}

}  // namespace fitpa
