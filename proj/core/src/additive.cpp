#include "fitpa/additive.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "fitpa/errors.hpp"

namespace fitpa {

namespace {

TypeAssignment mirror_types(const TypeAssignment& ta) {
  // Swapping colours maps k red choices to m-k and "new vertex red" to "new
  // vertex blue": p'[k] = 1 - p[m-k].
  std::vector<Rat> p(static_cast<std::size_t>(ta.m) + 1);
  for (int k = 0; k <= ta.m; ++k)
    p[static_cast<std::size_t>(k)] = 1 - ta.p[static_cast<std::size_t>(ta.m - k)];
  return TypeAssignment::create(ta.m, std::move(p));
}

constexpr double kGoldenInv = 0.6180339887498949;

}  // namespace

AdditiveGeometry::AdditiveGeometry(const TypeAssignment& ta, const AdditiveFitness& fm) {
  Rat a1r = fm.alpha_red;
  Rat a2r = fm.alpha_blue;
  swapped_ = a1r > a2r;
  ta_ = swapped_ ? mirror_types(ta) : ta;
  if (swapped_) std::swap(a1r, a2r);
  m_ = ta_.m;
  a1_ = to_double(a1r);
  a2_ = to_double(a2r);

  pa_ = build_competition(ta_, AdditiveFitness::unchecked(a1r, a2r));
  const CompetitionFunction p_cf = build_competition(ta_, PlainFitness{Rat(0)});
  p_num_ = p_cf.num;
  p_deriv_ = Poly(p_cf.num_exact.derivative());

  const RatPoly anti = pa_.num_exact.antiderivative();
  l1_exact_ = RatPoly::constant(anti.eval(Rat(1))) - anti;
  l1_ = Poly(l1_exact_);

  S2_ = S2_from_grid(8192);
}

std::array<double, 2> AdditiveGeometry::point(double u, double v) const {
  // Corner (2m+a1, 0); u moves along (-m, m), v along (-(m+a1), m+a2).
  const double x = (2 * m_ + a1_) + u * (-m_) + v * (-(m_ + a1_));
  const double y = u * m_ + v * (m_ + a2_);
  return {x, y};
}

bool AdditiveGeometry::in_state_space(double x, double y, double tol) const {
  const double s = x + y;
  if (s < 2 * m_ + a1_ - tol || s > 2 * m_ + a2_ + tol) return false;
  const double g = (m_ + a2_) * x + (m_ + a1_) * y;
  const double g_lo = (m_ + a1_) * (2 * m_ + a2_);
  const double g_hi = (m_ + a2_) * (2 * m_ + a1_);
  const double tol_g = tol * (std::abs(g_lo) + std::abs(g_hi) + 1.0);
  return g >= g_lo - tol_g && g <= g_hi + tol_g;
}

double AdditiveGeometry::P(double q) const { return p_num_.eval(q); }
double AdditiveGeometry::P_derivative(double q) const { return p_deriv_.eval(q); }
double AdditiveGeometry::PA(double q) const { return pa_.num.eval(q); }
double AdditiveGeometry::L1(double q) const { return l1_.eval(q); }

std::array<double, 2> AdditiveGeometry::drift(double x, double y) const {
  const double q = x / (x + y);
  const double p = P(q);
  const double f1 = (2 * m_ + a1_) * q + 2 * (m_ + a1_) * p - x;
  const double f2 = (2 * m_ + a2_) * (1 - q) - 2 * (m_ + a2_) * p - y;
  return {f1, f2};
}

double AdditiveGeometry::ell(double x, double y) const {
  const double q = x / (x + y);
  return (2 * m_ + a1_) * (2 * m_ + a2_) + 2 * m_ * (a1_ - a2_) * P(q) -
         (2 * m_ + a2_) * x - (2 * m_ + a1_) * y;
}

double AdditiveGeometry::S1() const { return 1.0 / (2 * m_ + a2_); }

double AdditiveGeometry::L(double x, double y) const {
  const double q = x / (x + y);
  return L2(x, y) + 2 * (S2_ * S2_ / S1()) * L1(q);
}

double AdditiveGeometry::grad_L_dot_F(double x, double y) const {
  const double s = x + y;
  const double q = x / s;
  const auto [f1, f2] = drift(x, y);
  const double pd = P_derivative(q);
  // grad ell = (2m(a1-a2) P'(q) y/s^2 - (2m+a2), -2m(a1-a2) P'(q) x/s^2 - (2m+a1))
  const double c = 2 * m_ * (a1_ - a2_) * pd / (s * s);
  const double dl_dx = c * y - (2 * m_ + a2_);
  const double dl_dy = -c * x - (2 * m_ + a1_);
  const double d_l2 = 2 * ell(x, y) * (dl_dx * f1 + dl_dy * f2);
  // d/dt L1(q) = -PA(q) * dq/dt, dq/dt = (y F1 - x F2)/s^2.
  const double d_l1 = -PA(q) * (y * f1 - x * f2) / (s * s);
  return d_l2 + 2 * (S2_ * S2_ / S1()) * d_l1;
}

std::array<double, 2> AdditiveGeometry::stationary_point(double q_star) const {
  const double num =
      (2 * m_ + a1_) * (2 * m_ + a2_) + 2 * m_ * (a1_ - a2_) * P(q_star);
  const double den = (2 * m_ + a2_) * q_star + (2 * m_ + a1_) * (1 - q_star);
  const double s = num / den;
  return {s * q_star, s * (1 - q_star)};
}

double AdditiveGeometry::S2_from_grid(int grid) const {
  // sup over D of |m(a2-a1) P'(q)/(x+y)|. The absolute value is what the
  // descent bound needs: it caps the cross term of the quadratic form in
  // (ell, PA) regardless of the sign of P', which can be negative. For fixed
  // q the supremum in x+y always sits at the smallest feasible mass, which
  // reduces the search to one dimension.
  const double g_lo = (m_ + a1_) * (2 * m_ + a2_);
  const auto value = [&](double q) {
    const double d = (m_ + a1_) + (a2_ - a1_) * q;  // ((m+a2)x+(m+a1)y)/s on the ray
    const double s_min = std::max(2 * m_ + a1_, g_lo / d);
    return std::abs(P_derivative(q)) / s_min;
  };

  double best_q = 0.0, best = value(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double q = static_cast<double>(i) / grid;
    const double v = value(q);
    if (v > best) {
      best = v;
      best_q = q;
    }
  }
  // Golden-section polish around the best grid cell.
  double lo = std::max(0.0, best_q - 1.0 / grid);
  double hi = std::min(1.0, best_q + 1.0 / grid);
  double c = hi - (hi - lo) * kGoldenInv;
  double d = lo + (hi - lo) * kGoldenInv;
  double fc = value(c), fd = value(d);
  while (hi - lo > 1e-12) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) * kGoldenInv;
      fc = value(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) * kGoldenInv;
      fd = value(d);
    }
  }
  best = std::max(best, value(0.5 * (lo + hi)));
  return m_ * (a2_ - a1_) * best;
}

FlowResult integrate_flow(const AdditiveGeometry& geo, double x0, double y0, double t_end) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;

  FlowResult res;
  const auto rhs = [&geo](const State& s, State& dsdt, double) {
    const auto f = geo.drift(s[0], s[1]);
    dsdt[0] = f[0];
    dsdt[1] = f[1];
  };
  const auto observer = [&](const State& s, double t) {
    res.times.push_back(t);
    res.states.push_back(s);
    res.L_values.push_back(geo.L(s[0], s[1]));
  };

  State s{x0, y0};
  auto stepper = odeint::make_controlled(1e-9, 1e-9, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_adaptive(stepper, rhs, s, 0.0, t_end, t_end / 4096.0, observer);

  for (std::size_t i = 1; i < res.times.size(); ++i) {
    const double dt = res.times[i] - res.times[i - 1];
    if (dt <= 0) continue;
    const double rate = (res.L_values[i] - res.L_values[i - 1]) / dt;
    res.max_L_increase_rate = std::max(res.max_L_increase_rate, rate);
  }
  const auto& last = res.states.back();
  res.terminal_abs_ell = std::abs(geo.ell(last[0], last[1]));
  res.terminal_abs_PA = std::abs(geo.PA(last[0] / (last[0] + last[1])));
  return res;
}

}  // namespace fitpa
