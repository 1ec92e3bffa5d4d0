#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fitpa/rational.hpp"

namespace fitpa {

enum class Color : std::uint8_t { Red = 0, Blue = 1 };

inline Color other(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }

// Colour rule for a new vertex: after the m neighbour choices land on k red
// endpoints (with multiplicity), the vertex turns red with probability p[k].
// p is exact; is_linear means p[k] == k/m as rationals, the martingale case.
struct TypeAssignment {
  int m = 1;
  std::vector<Rat> p;        // size m+1
  std::vector<double> p_d;   // cached doubles of p
  bool is_linear = false;

  static TypeAssignment create(int m, std::vector<Rat> p);
  static TypeAssignment linear(int m);

  bool endpoint_absorbing() const;  // p[0] == 0 and p[m] == 1
};

// All vertices weighted degree + alpha, alpha > -m.
struct PlainFitness {
  Rat alpha;
};

// Red weight (deg+alpha), blue weight (deg+alpha)*phi; phi > 0, alpha > -m.
struct MultiplicativeFitness {
  Rat phi;
  Rat alpha;
};

// Red weight deg+alpha_red, blue weight deg+alpha_blue; both > -m and
// distinct (equal values reduce to the plain model and are rejected except
// through the test-only unchecked constructor).
struct AdditiveFitness {
  Rat alpha_red;
  Rat alpha_blue;

  static AdditiveFitness unchecked(Rat a_red, Rat a_blue) {
    AdditiveFitness f;
    f.alpha_red = std::move(a_red);
    f.alpha_blue = std::move(a_blue);
    return f;
  }
};

using FitnessModel = std::variant<PlainFitness, MultiplicativeFitness, AdditiveFitness>;

// Throws ConfigError when (ta, fm) violate the model constraints.
void validate_model(const TypeAssignment& ta, const FitnessModel& fm);

std::string model_name(const FitnessModel& fm);

// True when the urn fast path is distributionally exact: multiplicative (or
// plain, i.e. phi = 1) with alpha = 0.
bool urn_eligible(const FitnessModel& fm);

// phi for weight purposes: 1 for plain/additive.
Rat effective_phi(const FitnessModel& fm);

// Per-colour degree offset: alpha for plain/multiplicative, alpha_c for additive.
Rat alpha_of(const FitnessModel& fm, Color c);

}  // namespace fitpa
