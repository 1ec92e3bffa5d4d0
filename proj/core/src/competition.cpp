#include "fitpa/competition.hpp"

#include <algorithm>
#include <cmath>

#include "fitpa/errors.hpp"

namespace fitpa {

namespace {

double binom_d(int n, int k) { return to_double(Rat(binomial(n, k))); }

// Bernstein weights C(m,k) q^k (1-q)^(m-k) for k = 0..m.
std::vector<double> bernstein_weights(int m, double q) {
  std::vector<double> w(m + 1);
  for (int k = 0; k <= m; ++k)
    w[k] = binom_d(m, k) * std::pow(q, k) * std::pow(1.0 - q, m - k);
  return w;
}

}  // namespace

double eval_P(const TypeAssignment& ta, double z) {
  if (ta.is_linear) return 0.0;
  const auto w = bernstein_weights(ta.m, z);
  double acc = 0.0;
  for (int k = 0; k <= ta.m; ++k)
    acc += w[k] * (ta.p_d[k] - static_cast<double>(k) / ta.m);
  return 0.5 * acc;
}

double eval_P_derivative(const TypeAssignment& ta, double z) {
  if (ta.is_linear) return 0.0;
  double acc = 0.0;
  for (int k = 0; k <= ta.m; ++k) {
    const double gap = ta.p_d[k] - static_cast<double>(k) / ta.m;
    if (gap == 0.0) continue;
    // d/dz [z^k (1-z)^(m-k)]
    double d = 0.0;
    if (k > 0) d += k * std::pow(z, k - 1) * std::pow(1.0 - z, ta.m - k);
    if (ta.m - k > 0) d -= (ta.m - k) * std::pow(z, k) * std::pow(1.0 - z, ta.m - k - 1);
    acc += binom_d(ta.m, k) * gap * d;
  }
  return 0.5 * acc;
}

double new_red_probability(const TypeAssignment& ta, double q) {
  const auto w = bernstein_weights(ta.m, q);
  double acc = 0.0;
  for (int k = 0; k <= ta.m; ++k) acc += w[k] * ta.p_d[k];
  return acc;
}

double eval_PM(const TypeAssignment& ta, double phi, double alpha, double x) {
  const double den = x + phi * (1.0 - x);
  const double u = x / den;
  const double scale = 2.0 * (ta.m + alpha) / (2.0 * ta.m + alpha);
  return scale * eval_P(ta, u) + (u - x);
}

double eval_PM_derivative(const TypeAssignment& ta, double phi, double alpha, double x) {
  const double den = x + phi * (1.0 - x);
  const double u = x / den;
  const double du = phi / (den * den);
  const double scale = 2.0 * (ta.m + alpha) / (2.0 * ta.m + alpha);
  return scale * eval_P_derivative(ta, u) * du + (du - 1.0);
}

double eval_PA(const TypeAssignment& ta, double a1, double a2, double z) {
  return (a1 - a2) * z * (1.0 - z) +
         (2.0 * (ta.m + a1) + 2.0 * (a2 - a1) * z) * eval_P(ta, z);
}

double eval_PA_derivative(const TypeAssignment& ta, double a1, double a2, double z) {
  return (a1 - a2) * (1.0 - 2.0 * z) + 2.0 * (a2 - a1) * eval_P(ta, z) +
         (2.0 * (ta.m + a1) + 2.0 * (a2 - a1) * z) * eval_P_derivative(ta, z);
}

const char* kind_name(CompetitionKind k) {
  switch (k) {
    case CompetitionKind::P: return "P";
    case CompetitionKind::PM: return "PM";
    case CompetitionKind::PA: return "PA";
  }
  return "?";
}

namespace {

// 1/2 sum_k C(m,k) (p_k - k/m) w^(m-k) z^k (1-z)^(m-k); w = 1 recovers P.
RatPoly weighted_core(const TypeAssignment& ta, const Rat& w) {
  RatPoly acc;
  std::vector<Rat> wp(ta.m + 1);  // wp[k] = w^(m-k)
  wp[ta.m] = 1;
  for (int k = ta.m - 1; k >= 0; --k) wp[k] = wp[k + 1] * w;
  for (int k = 0; k <= ta.m; ++k) {
    const Rat gap = ta.p[k] - Rat(k, ta.m);
    if (gap == 0) continue;
    acc = acc + bernstein_term(ta.m, k).scaled(Rat(binomial(ta.m, k)) * gap * wp[k]);
  }
  return acc.scaled(Rat(1, 2));
}

RatPoly z_one_minus_z() {
  return RatPoly({Rat(0), Rat(1), Rat(-1)});  // z - z^2
}

}  // namespace

CompetitionFunction build_competition(const TypeAssignment& ta, const FitnessModel& fm) {
  CompetitionFunction cf;
  cf.ta = ta;
  cf.fm = fm;
  const RatPoly p_num = weighted_core(ta, Rat(1));

  if (const auto* add = std::get_if<AdditiveFitness>(&fm)) {
    cf.kind = CompetitionKind::PA;
    const Rat& a1 = add->alpha_red;
    const Rat& a2 = add->alpha_blue;
    // (a1-a2) z(1-z) + (2(m+a1) + 2(a2-a1) z) P(z)
    RatPoly bracket({Rat(2) * (Rat(ta.m) + a1), Rat(2) * (a2 - a1)});
    cf.num_exact = z_one_minus_z().scaled(a1 - a2) + bracket * p_num;
    cf.den_exact = RatPoly::constant(Rat(1));
  } else if (const auto* mult = std::get_if<MultiplicativeFitness>(&fm)) {
    cf.kind = CompetitionKind::PM;
    const Rat& phi = mult->phi;
    const Rat& alpha = mult->alpha;
    // Over the common denominator D(x)^m, D = phi + (1-phi) x:
    //   num = 2(m+a)/(2m+a) * Q + (1-phi) x(1-x) D^(m-1),
    // with Q the phi-weighted core; common D factors cancel exactly.
    RatPoly D({phi, Rat(1) - phi});
    const RatPoly q_num = weighted_core(ta, phi);
    const Rat scale = Rat(2) * (Rat(ta.m) + alpha) / (Rat(2 * ta.m) + alpha);
    RatPoly num = q_num.scaled(scale) + z_one_minus_z().scaled(Rat(1) - phi) * D.pow(ta.m - 1);
    int den_pow = ta.m;
    if (phi == 1) {
      den_pow = 0;  // D is the constant 1
    } else {
      RatPoly quotient;
      while (den_pow > 0 && num.divide_exact(D, quotient)) {
        num = quotient;
        --den_pow;
      }
    }
    cf.num_exact = num;
    cf.den_exact = D.pow(den_pow);
  } else {
    cf.kind = CompetitionKind::P;
    cf.num_exact = p_num;
    cf.den_exact = RatPoly::constant(Rat(1));
  }

  cf.num = Poly(cf.num_exact);
  cf.den = Poly(cf.den_exact);
  return cf;
}

double CompetitionFunction::eval(double z) const {
  const double d = den.c.empty() ? 1.0 : den.eval(z);
  return num.eval(z) / d;
}

double CompetitionFunction::eval_formula(double z) const {
  switch (kind) {
    case CompetitionKind::P:
      return eval_P(ta, z);
    case CompetitionKind::PM: {
      const auto& f = std::get<MultiplicativeFitness>(fm);
      return eval_PM(ta, to_double(f.phi), to_double(f.alpha), z);
    }
    case CompetitionKind::PA: {
      const auto& f = std::get<AdditiveFitness>(fm);
      return eval_PA(ta, to_double(f.alpha_red), to_double(f.alpha_blue), z);
    }
  }
  return 0.0;
}

double CompetitionFunction::eval_derivative(double z) const {
  const double n = num.eval(z);
  const double nd = num.eval_derivative(z);
  if (den.degree() <= 0) {
    const double d = den.c.empty() ? 1.0 : den.c[0];
    return nd / d;
  }
  const double d = den.eval(z);
  const double dd = den.eval_derivative(z);
  return (nd * d - n * dd) / (d * d);
}

const char* zero_class_name(ZeroClass c) {
  switch (c) {
    case ZeroClass::Stable: return "stable";
    case ZeroClass::Unstable: return "unstable";
    case ZeroClass::Touchpoint: return "touchpoint";
    case ZeroClass::EndpointStable: return "endpoint_stable";
    case ZeroClass::EndpointUnstable: return "endpoint_unstable";
  }
  return "?";
}

namespace {

double bisect_root(const Poly& f, double lo, double hi, double flo, double tol) {
  // Invariant: sign(f(lo)) == sign(flo) != sign at hi.
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f.eval(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_min_abs(const Poly& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = std::abs(f.eval(c));
  double fd = std::abs(f.eval(d));
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = std::abs(f.eval(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = std::abs(f.eval(d));
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ZeroReport find_zeros(const CompetitionFunction& cf, const ZeroFindOptions& opt) {
  ZeroReport report;
  if (cf.degenerate()) {
    report.degenerate = true;
    return report;
  }

  const Poly& f = cf.num;
  const int n = opt.grid_n;
  const double h = 1.0 / n;
  std::vector<double> fv(n + 1);
  for (int i = 0; i <= n; ++i) fv[i] = f.eval(i * h);

  const double scale = std::max(1.0, f.coeff_scale());
  const double touch_cut = opt.touch_tol * scale;

  // Endpoint zeros are exact statements about the rational coefficients.
  const bool zero_at_0 = cf.num_exact.eval(Rat(0)) == 0;
  const bool zero_at_1 = cf.num_exact.eval(Rat(1)) == 0;

  struct Found {
    double loc;
    bool endpoint;
    bool from_sign_change;
  };
  std::vector<Found> roots;
  if (zero_at_0) roots.push_back({0.0, true, false});

  // Exact zeros at interior grid nodes (rare in doubles, cheap to honour).
  for (int i = 1; i < n; ++i)
    if (fv[i] == 0.0) roots.push_back({i * h, false, fv[i - 1] * fv[i + 1] < 0.0});

  // Interior sign changes, with one 8x sub-scan per cell: a pair of roots an
  // even grid cannot see at its nodes is recovered from the sub-nodes, and
  // only a sub-cell that still hides two changes aborts.
  for (int i = 0; i < n; ++i) {
    const double a = i * h, b = (i + 1) * h;
    double fa = fv[i], fb = fv[i + 1];
    double lo = a, hi = b;
    if (i == 0 && zero_at_0) {
      // Probe past the exact endpoint root so it is not re-detected.
      lo = a + h * 0.25;
      fa = f.eval(lo);
    }
    if (i == n - 1 && zero_at_1) {
      hi = b - h * 0.25;
      fb = f.eval(hi);
    }
    if (fa == 0.0 || fb == 0.0) continue;  // node roots recorded above

    std::vector<std::pair<double, double>> sub;  // (x, f(x)) over the cell
    sub.emplace_back(lo, fa);
    for (int s = 1; s < 8; ++s) {
      const double xs = lo + (hi - lo) * s / 8.0;
      sub.emplace_back(xs, f.eval(xs));
    }
    sub.emplace_back(hi, fb);

    for (std::size_t s = 0; s + 1 < sub.size(); ++s) {
      const auto [xa, ya] = sub[s];
      const auto [xb, yb] = sub[s + 1];
      if (ya == 0.0) {
        if (xa != lo) roots.push_back({xa, false, true});
        continue;
      }
      if (yb == 0.0) continue;  // handled as the next segment's left node
      if (ya * yb < 0.0) {
        roots.push_back({bisect_root(f, xa, xb, ya, opt.tol), false, true});
      } else {
        // Same-sign sub-cell: a midpoint of opposite sign reveals a root pair
        // the refinement pass did not separate.
        const double mid = f.eval(0.5 * (xa + xb));
        if (mid != 0.0 && mid * ya < 0.0) {
          throw UnresolvedRoot(
              "root pair unresolved after one refinement pass near z=" +
              std::to_string(0.5 * (xa + xb)) + "; raise grid_n");
        }
      }
    }
  }

  if (zero_at_1) roots.push_back({1.0, true, false});

  // Touchpoint candidates: interior local minima of |f| below the cutoff with
  // equal signs on both sides.
  for (int i = 1; i < n; ++i) {
    const double av = std::abs(fv[i]);
    if (av > touch_cut) continue;
    if (std::abs(fv[i - 1]) < av || std::abs(fv[i + 1]) < av) continue;
    if (fv[i - 1] * fv[i + 1] < 0.0) continue;  // genuine crossing, found above
    const double loc = golden_min_abs(f, (i - 1) * h, (i + 1) * h, opt.tol);
    if (std::abs(f.eval(loc)) > touch_cut) continue;
    bool duplicate = false;
    for (const auto& r : roots)
      if (std::abs(r.loc - loc) < 2 * h) duplicate = true;
    if (!duplicate) roots.push_back({loc, false, false});
  }

  std::sort(roots.begin(), roots.end(), [](const Found& a, const Found& b) { return a.loc < b.loc; });
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](const Found& a, const Found& b) {
                            return std::abs(a.loc - b.loc) < opt.tol * 10;
                          }),
              roots.end());

  // Classification by sign probes at location +/- delta, delta capped by the
  // gap to the neighbouring root so probes never cross it.
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& r = roots[i];
    double delta = std::max(opt.tol, h);
    if (i > 0) delta = std::min(delta, 0.45 * (r.loc - roots[i - 1].loc));
    if (i + 1 < roots.size()) delta = std::min(delta, 0.45 * (roots[i + 1].loc - r.loc));
    delta = std::max(delta, opt.tol);

    ClassifiedZero z;
    z.location = r.loc;
    z.derivative = cf.eval_derivative(r.loc);
    if (r.endpoint) {
      z.one_sided = true;
      if (r.loc == 0.0) {
        const double right = f.eval(std::min(1.0, delta));
        z.cls = right < 0.0 ? ZeroClass::EndpointStable : ZeroClass::EndpointUnstable;
        if (right == 0.0) z.cls = z.derivative < 0 ? ZeroClass::EndpointStable : ZeroClass::EndpointUnstable;
      } else {
        const double left = f.eval(std::max(0.0, 1.0 - delta));
        z.cls = left > 0.0 ? ZeroClass::EndpointStable : ZeroClass::EndpointUnstable;
        if (left == 0.0) z.cls = z.derivative < 0 ? ZeroClass::EndpointStable : ZeroClass::EndpointUnstable;
      }
    } else {
      const double left = f.eval(std::max(0.0, r.loc - delta));
      const double right = f.eval(std::min(1.0, r.loc + delta));
      if (left > 0.0 && right < 0.0) {
        z.cls = ZeroClass::Stable;
      } else if (left < 0.0 && right > 0.0) {
        z.cls = ZeroClass::Unstable;
      } else {
        z.cls = ZeroClass::Touchpoint;
        // A sign-change root probing as a touchpoint means the grid could not
        // separate even multiplicities; keep it but flag it.
        z.multiplicity_warning = r.from_sign_change;
      }
    }
    report.zeros.push_back(z);
  }

  return report;
}

}  // namespace fitpa
