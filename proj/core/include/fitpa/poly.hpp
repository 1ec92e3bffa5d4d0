#pragma once

#include <vector>

#include "fitpa/rational.hpp"

namespace fitpa {

// Dense univariate polynomial in the power basis, exact rational coefficients.
// coeffs[i] multiplies z^i; trailing zeros are stripped by normalize().
struct RatPoly {
  std::vector<Rat> c;

  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { normalize(); }
  static RatPoly constant(Rat v);

  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero poly
  bool is_zero() const { return c.empty(); }
  void normalize();

  Rat eval(const Rat& z) const;

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly scaled(const Rat& k) const;
  RatPoly derivative() const;
  // Antiderivative with F(0) = 0.
  RatPoly antiderivative() const;
  RatPoly pow(int e) const;

  // Exact division; returns false (and leaves quotient empty) when the
  // remainder is nonzero or the divisor is zero.
  bool divide_exact(const RatPoly& divisor, RatPoly& quotient) const;

  std::vector<double> to_doubles() const;
};

// z^k (1-z)^(n-k), expanded.
RatPoly bernstein_term(int n, int k);

// Double view of a polynomial for hot evaluation paths.
struct Poly {
  std::vector<double> c;

  Poly() = default;
  explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}
  explicit Poly(const RatPoly& p) : c(p.to_doubles()) {}

  int degree() const { return static_cast<int>(c.size()) - 1; }

  // Horner form; the canonical evaluator.
  double eval(double z) const;
  // Term-by-term sum with explicit powers; kept as an independent route so
  // the two can be checked against each other.
  double eval_direct(double z) const;
  double eval_derivative(double z) const;

  double coeff_scale() const;  // sum of |c[i]|, error scale for evaluations
};

}  // namespace fitpa
