#include "fitpa/poly.hpp"

#include <cmath>

namespace fitpa {

RatPoly RatPoly::constant(Rat v) {
  RatPoly p;
  if (v != 0) p.c.push_back(std::move(v));
  return p;
}

void RatPoly::normalize() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat RatPoly::eval(const Rat& z) const {
  Rat acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  RatPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
  for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
  r.normalize();
  return r;
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + o.scaled(Rat(-1)); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (c.empty() || o.c.empty()) return {};
  RatPoly r;
  r.c.assign(c.size() + o.c.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  r.normalize();
  return r;
}

RatPoly RatPoly::scaled(const Rat& k) const {
  RatPoly r;
  if (k == 0) return r;
  r.c.reserve(c.size());
  for (const Rat& v : c) r.c.push_back(v * k);
  r.normalize();
  return r;
}

RatPoly RatPoly::derivative() const {
  RatPoly r;
  if (c.size() <= 1) return r;
  r.c.reserve(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * Rat(static_cast<int>(i)));
  r.normalize();
  return r;
}

RatPoly RatPoly::antiderivative() const {
  RatPoly r;
  if (c.empty()) return r;
  r.c.assign(c.size() + 1, Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i + 1] = c[i] / Rat(static_cast<int>(i) + 1);
  r.normalize();
  return r;
}

RatPoly RatPoly::pow(int e) const {
  RatPoly r = RatPoly::constant(Rat(1));
  for (int i = 0; i < e; ++i) r = r * (*this);
  return r;
}

bool RatPoly::divide_exact(const RatPoly& divisor, RatPoly& quotient) const {
  quotient = RatPoly{};
  if (divisor.is_zero()) return false;
  if (is_zero()) return true;
  if (degree() < divisor.degree()) return false;
  std::vector<Rat> rem = c;
  std::vector<Rat> q(c.size() - divisor.c.size() + 1, Rat(0));
  const Rat& lead = divisor.c.back();
  for (int i = static_cast<int>(rem.size()) - 1;
       i >= static_cast<int>(divisor.c.size()) - 1; --i) {
    if (rem[i] == 0) continue;
    const Rat f = rem[i] / lead;
    const int shift = i - divisor.degree();
    q[shift] = f;
    for (std::size_t j = 0; j < divisor.c.size(); ++j) rem[shift + j] -= f * divisor.c[j];
  }
  for (const Rat& v : rem)
    if (v != 0) return false;
  quotient = RatPoly(std::move(q));
  return true;
}

std::vector<double> RatPoly::to_doubles() const {
  std::vector<double> out;
  out.reserve(c.size());
  for (const Rat& v : c) out.push_back(to_double(v));
  return out;
}

RatPoly bernstein_term(int n, int k) {
  // z^k * (1-z)^(n-k) expanded via the binomial theorem.
  RatPoly r;
  r.c.assign(n + 1, Rat(0));
  for (int j = 0; j <= n - k; ++j) {
    Rat coeff(binomial(n - k, j));
    if (j % 2 == 1) coeff = -coeff;
    r.c[k + j] += coeff;
  }
  r.normalize();
  return r;
}

double Poly::eval(double z) const {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Poly::eval_direct(double z) const {
  double acc = 0.0;
  double zp = 1.0;
  for (double v : c) {
    acc += v * zp;
    zp *= z;
  }
  return acc;
}

double Poly::eval_derivative(double z) const {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * z + c[i] * static_cast<double>(i);
  return acc;
}

double Poly::coeff_scale() const {
  double s = 0.0;
  for (double v : c) s += std::abs(v);
  return s;
}

}  // namespace fitpa
