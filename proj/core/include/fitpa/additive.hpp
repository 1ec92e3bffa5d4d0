#pragma once

#include <array>
#include <vector>

#include "fitpa/competition.hpp"
#include "fitpa/types.hpp"

namespace fitpa {

// Mean-field geometry of the additive model. Works in normalized colour
// order (a1 < a2, swapping colours and reversing p if needed); `swapped`
// records whether inputs were mirrored.
class AdditiveGeometry {
 public:
  AdditiveGeometry(const TypeAssignment& ta, const AdditiveFitness& fm);

  bool swapped() const { return swapped_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  int m() const { return m_; }
  const TypeAssignment& ta() const { return ta_; }

  // State space D: 2m+a1 <= x+y <= 2m+a2 intersected with the slab between
  // the two parallel mixed-degree bounds. Parametrized over [0,1]^2.
  std::array<double, 2> point(double u, double v) const;
  bool in_state_space(double x, double y, double tol) const;

  // Mean-field drift (F1, F2) of (x, y).
  std::array<double, 2> drift(double x, double y) const;

  // ell(x,y) = (2m+a1)(2m+a2) + 2m(a1-a2) P(q) - (2m+a2) x - (2m+a1) y.
  double ell(double x, double y) const;
  double PA(double q) const;       // competition function of q = x/(x+y)
  double P(double q) const;
  double P_derivative(double q) const;
  double L1(double q) const;       // -integral_1^q PA(u) du  (>= 0 near stable ends)
  double L2(double x, double y) const { double e = ell(x, y); return e * e; }
  double L(double x, double y) const;
  // Analytic directional derivative of L along the drift field.
  double grad_L_dot_F(double x, double y) const;

  double S1() const;               // 1/(2m+a2), exact infimum of 1/(x+y) on D
  // sup over D of |m(a2-a1) P'(q)|/(x+y): the constant capping the cross term
  // in the descent bound grad L . F <= -2(|ell| - S2 |PA|)^2.
  double S2() const { return S2_; }

  // Stationary point with q = q_star on the ell = 0 line (closed form in the
  // total mass). Returns (x, y).
  std::array<double, 2> stationary_point(double q_star) const;

 private:
  double S2_from_grid(int grid) const;

  TypeAssignment ta_;
  double a1_ = 0.0, a2_ = 0.0;
  int m_ = 1;
  bool swapped_ = false;
  CompetitionFunction pa_;   // P^A in normalized colours
  RatPoly l1_exact_;         // antiderivative form of L1
  Poly l1_;
  Poly p_num_;               // P numerator (den 1)
  Poly p_deriv_;
  double S2_ = 0.0;
};

struct LyapunovSample {
  std::uint64_t n = 0;
  double ell = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;
  double L = 0.0;
};

struct LyapunovReport {
  double S1 = 0.0;
  double S2 = 0.0;
  bool colors_swapped = false;
  std::vector<LyapunovSample> samples;
  double terminal_abs_ell = 0.0;
  double terminal_abs_PA = 0.0;
};

struct FlowResult {
  std::vector<double> times;
  std::vector<std::array<double, 2>> states;
  std::vector<double> L_values;
  double max_L_increase_rate = 0.0;  // max over steps of dL/dt when positive
  double terminal_abs_ell = 0.0;
  double terminal_abs_PA = 0.0;
};

// Integrate the mean-field flow from (x0, y0) over [0, t_end] with a
// controlled dopri5 stepper (abs/rel tolerance 1e-9), recording L.
FlowResult integrate_flow(const AdditiveGeometry& geo, double x0, double y0, double t_end);

}  // namespace fitpa
