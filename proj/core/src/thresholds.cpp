#include "fitpa/thresholds.hpp"

#include <cmath>
#include <stdexcept>

namespace fitpa {

double bisect_sign_change(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("bisect_sign_change: no sign change on interval");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double bisect_predicate(const std::function<bool(double)>& pred, double lo, double hi,
                        double tol) {
  const bool plo = pred(lo);
  if (pred(hi) == plo)
    throw std::invalid_argument("bisect_predicate: same value at both ends");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid) == plo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> scan_sign_flips(const std::function<double(double)>& f, double lo,
                                    double hi, int grid, double tol) {
  std::vector<double> flips;
  if (grid < 1) return flips;
  double xa = lo;
  double fa = f(xa);
  for (int i = 1; i <= grid; ++i) {
    const double xb = lo + (hi - lo) * i / grid;
    const double fb = f(xb);
    if (fa == 0.0) {
      flips.push_back(xa);
    } else if (fb != 0.0 && (fa > 0) != (fb > 0)) {
      flips.push_back(bisect_sign_change(f, xa, xb, tol));
    }
    xa = xb;
    fa = fb;
  }
  if (fa == 0.0) flips.push_back(xa);
  return flips;
}

namespace {

void add_numeric_flips(ThresholdReport& rep, const std::function<double(double)>& f,
                       double lo, double hi, const std::string& name,
                       const std::string& meaning) {
  for (double v : scan_sign_flips(f, lo, hi, 2048, 1e-9))
    rep.entries.push_back({name, v, false, meaning});
}

}  // namespace

ThresholdReport endpoint_thresholds(const TypeAssignment& ta, const FitnessModel& fm) {
  ThresholdReport rep;
  if (!ta.endpoint_absorbing()) {
    rep.reason = "endpoints are zeros of the competition function only when "
                 "p[0] = 0 and p[m] = 1";
    return rep;
  }
  rep.applicable = true;
  const int m = ta.m;

  if (std::holds_alternative<PlainFitness>(fm)) {
    // P'(0) = (m p1 - 1)/2 and P'(1) = (m - 1 - m p_{m-1})/2; the competition
    // function does not depend on alpha.
    rep.entries.push_back({"p1_flip_endpoint0", 1.0 / m, true,
                           "endpoint 0 is stable iff p[1] is below this value"});
    rep.entries.push_back({"p_m_minus_1_flip_endpoint1", 1.0 - 1.0 / m, true,
                           "endpoint 1 is stable iff p[m-1] is above this value"});
    return rep;
  }

  if (const auto* mult = std::get_if<MultiplicativeFitness>(&fm)) {
    if (mult->alpha == 0) {
      const Rat t0 = (Rat(m) * ta.p[1] + 1) / 2;
      const Rat t1 = Rat(2) / (Rat(m) * (Rat(1) - ta.p[m - 1]) + 1);
      rep.entries.push_back({"phi_flip_endpoint0", to_double(t0), true,
                             "endpoint 0 is stable iff phi is above this value"});
      rep.entries.push_back({"phi_flip_endpoint1", to_double(t1), true,
                             "endpoint 1 is stable iff phi is below this value"});
    } else {
      const double alpha = to_double(mult->alpha);
      add_numeric_flips(
          rep, [&](double phi) { return eval_PM_derivative(ta, phi, alpha, 0.0); },
          1.0 / 64, 64.0, "phi_flip_endpoint0",
          "endpoint 0 is stable iff phi is above this value");
      add_numeric_flips(
          rep, [&](double phi) { return eval_PM_derivative(ta, phi, alpha, 1.0); },
          1.0 / 64, 64.0, "phi_flip_endpoint1",
          "endpoint 1 is stable iff phi is below this value");
    }
    return rep;
  }

  const auto& add = std::get<AdditiveFitness>(fm);
  const Rat& a1 = add.alpha_red;
  const Rat& a2 = add.alpha_blue;
  if (m == 2) {
    // (P^A)'(0) = (a1-a2) + (2+a1)(2 p1 - 1), linear in p1; same at 1.
    const Rat t0 = Rat(1, 2) + (a2 - a1) / (Rat(2) * a1 + 4);
    const Rat t1 = Rat(1, 2) + (a2 - a1) / (Rat(2) * a2 + 4);
    rep.entries.push_back({"p1_flip_endpoint0", to_double(t0), true,
                           "endpoint 0 is stable iff p[1] is below this value"});
    rep.entries.push_back({"p1_flip_endpoint1", to_double(t1), true,
                           "endpoint 1 is stable iff p[1] is above this value"});
  } else {
    const double a1d = to_double(a1);
    const double a2d = to_double(a2);
    add_numeric_flips(
        rep, [&](double b) { return eval_PA_derivative(ta, a1d, b, 0.0); },
        -m + 1.0 / 64, 64.0, "alpha_blue_flip_endpoint0",
        "endpoint 0 is stable iff alpha_blue is above this value");
    add_numeric_flips(
        rep, [&](double a) { return eval_PA_derivative(ta, a, a2d, 1.0); },
        -m + 1.0 / 64, 64.0, "alpha_red_flip_endpoint1",
        "endpoint 1 is stable iff alpha_red is above this value");
  }
  return rep;
}

}  // namespace fitpa
