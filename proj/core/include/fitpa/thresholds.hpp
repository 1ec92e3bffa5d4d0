#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fitpa/competition.hpp"

namespace fitpa {

// Locate a sign change of f on [lo, hi] by bisection; requires opposite signs
// at the ends. Interval is shrunk below tol.
double bisect_sign_change(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-9);

// Bisection on a boolean predicate; requires pred(lo) != pred(hi). Returns the
// boundary location to within tol.
double bisect_predicate(const std::function<bool(double)>& pred, double lo, double hi,
                        double tol = 1e-9);

// All sign flips of f found by a coarse scan of [lo, hi] (grid points), each
// refined by bisection.
std::vector<double> scan_sign_flips(const std::function<double(double)>& f, double lo,
                                    double hi, int grid, double tol = 1e-9);

struct ThresholdEntry {
  std::string name;
  double value = 0.0;
  bool closed_form = false;
  std::string meaning;
};

struct ThresholdReport {
  bool applicable = false;
  std::string reason;  // set when not applicable
  std::vector<ThresholdEntry> entries;
};

// Parameter values where an endpoint zero of the competition function changes
// stability. Requires p0 = 0 and pm = 1 (otherwise the endpoints are not
// zeros and the report says so). Closed forms where known:
//  - multiplicative, alpha = 0:  phi*_0 = (m p1 + 1)/2   (0 stable iff phi > phi*_0)
//                                phi*_1 = 2/(m(1-p_{m-1})+1) (1 stable iff phi < phi*_1)
//  - additive, m = 2, p=(0,p1,1): thresholds on p1 at both endpoints.
// Other cases locate the sign flip of the endpoint derivative numerically.
ThresholdReport endpoint_thresholds(const TypeAssignment& ta, const FitnessModel& fm);

}  // namespace fitpa
