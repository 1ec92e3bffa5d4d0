#pragma once

#include <string>
#include <vector>

#include "fitpa/poly.hpp"
#include "fitpa/types.hpp"

namespace fitpa {

// Pointwise evaluation of the three competition functions, straight from the
// defining formulas (binomial sums); independent of the expanded-polynomial
// route below so the two can cross-check each other.

// P(z) = 1/2 * sum_k C(m,k) z^k (1-z)^(m-k) (p_k - k/m). Identically zero for
// linear type assignments (short-circuited exactly).
double eval_P(const TypeAssignment& ta, double z);
double eval_P_derivative(const TypeAssignment& ta, double z);

// Expected red share among the m choices plus colour rule:
// r(q) = sum_k p_k C(m,k) q^k (1-q)^(m-k) = 2 P(q) + q.
double new_red_probability(const TypeAssignment& ta, double q);

// P^M(x) = 2(m+a)/(2m+a) * P(u) + (u - x), u = x / (x + phi(1-x)).
double eval_PM(const TypeAssignment& ta, double phi, double alpha, double x);
double eval_PM_derivative(const TypeAssignment& ta, double phi, double alpha, double x);

// P^A(z) = (a1-a2) z(1-z) + (2(m+a1) + 2(a2-a1) z) P(z). Valid for any a1, a2.
double eval_PA(const TypeAssignment& ta, double a1, double a2, double z);
double eval_PA_derivative(const TypeAssignment& ta, double a1, double a2, double z);

enum class CompetitionKind { P, PM, PA };

const char* kind_name(CompetitionKind k);

// Canonical rational form numerator/denominator in the power basis. The
// denominator is 1 for P and P^A and a power of D(x) = x + phi(1-x) for P^M
// (common D factors cancelled exactly, so the linear case reduces to
// (1-phi)x(1-x) over D). D > 0 on [0,1], so signs and roots on [0,1] are the
// numerator's.
struct CompetitionFunction {
  CompetitionKind kind = CompetitionKind::P;
  TypeAssignment ta;
  FitnessModel fm;

  RatPoly num_exact;
  RatPoly den_exact;
  Poly num;  // double views
  Poly den;

  double eval(double z) const;             // num/den, expanded route
  double eval_formula(double z) const;     // defining-formula route
  double eval_derivative(double z) const;  // quotient rule on num/den
  bool degenerate() const { return num_exact.is_zero(); }
};

CompetitionFunction build_competition(const TypeAssignment& ta, const FitnessModel& fm);

enum class ZeroClass { Stable, Unstable, Touchpoint, EndpointStable, EndpointUnstable };

const char* zero_class_name(ZeroClass c);

struct ClassifiedZero {
  double location = 0.0;
  ZeroClass cls = ZeroClass::Touchpoint;
  double derivative = 0.0;  // d/dz of the competition function at the zero
  bool one_sided = false;   // endpoint zero
  bool multiplicity_warning = false;
};

struct ZeroFindOptions {
  int grid_n = 4096;           // sign-scan intervals on [0,1]
  double tol = 1e-12;          // bisection interval tolerance
  double touch_tol = 1e-10;    // |f| threshold for touchpoint candidates
};

struct ZeroReport {
  bool degenerate = false;     // numerator identically zero (exact)
  std::vector<ClassifiedZero> zeros;  // sorted by location
};

// Sign-scan + bisection on the numerator. Endpoint zeros are detected
// exactly from the rational coefficients. Touchpoints are local minima of
// |f| below touch_tol (scaled) without a sign change, refined by golden
// section. Throws UnresolvedRoot if a single grid cell still holds two sign
// changes after one 8x refinement pass.
ZeroReport find_zeros(const CompetitionFunction& cf, const ZeroFindOptions& opt = {});

}  // namespace fitpa
