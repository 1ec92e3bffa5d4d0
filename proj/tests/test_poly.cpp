#include <cmath>
#include <vector>

#include "doctest.h"

#include "fitpa/poly.hpp"
#include "fitpa/rational.hpp"
#include "fitpa/rng.hpp"

using namespace fitpa;

namespace {
RatPoly make(std::initializer_list<Rat> cs) { return RatPoly(std::vector<Rat>(cs)); }
}  // namespace

TEST_CASE("rational parsing covers integers, decimals and fractions") {
  CHECK(*parse_rational("3") == Rat(3));
  CHECK(*parse_rational("-2.5") == Rat(-5, 2));
  CHECK(*parse_rational("9/10") == Rat(9, 10));
  CHECK(*parse_rational("0.125") == Rat(1, 8));
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("abc").has_value());
  CHECK(!parse_rational("").has_value());
  CHECK(rat_to_string(Rat(-5, 2)) == "-5/2");
  CHECK(rat_to_string(Rat(4)) == "4");
}

TEST_CASE("rat_from_double is the exact dyadic value") {
  CHECK(rat_from_double(0.5) == Rat(1, 2));
  CHECK(rat_from_double(0.1) == Rat(3602879701896397LL, 1) / Rat(36028797018963968LL, 1));
  CHECK(to_double(rat_from_double(0.7362619)) == 0.7362619);
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(30, 15) == BigInt("155117520"));
  CHECK(binomial(3, 0) == 1);
  CHECK(binomial(3, 3) == 1);
}

TEST_CASE("RatPoly arithmetic and normalization") {
  const RatPoly a = make({Rat(1), Rat(2)});        // 1 + 2z
  const RatPoly b = make({Rat(0), Rat(-2)});       // -2z
  const RatPoly sum = a + b;                       // 1
  CHECK(sum.degree() == 0);
  CHECK(sum.eval(Rat(7)) == Rat(1));
  const RatPoly prod = a * b;                      // -2z - 4z^2
  CHECK(prod.eval(Rat(1, 2)) == Rat(-2));
  CHECK((a - a).is_zero());
  CHECK(a.scaled(Rat(3)).eval(Rat(1)) == Rat(9));
}

TEST_CASE("derivative and antiderivative are inverse up to the constant") {
  const RatPoly p = make({Rat(5), Rat(-1), Rat(0), Rat(2, 3)});
  const RatPoly back = p.antiderivative().derivative();
  CHECK(back.c == p.c);
  CHECK(p.antiderivative().eval(Rat(0)) == Rat(0));
}

TEST_CASE("exact division succeeds exactly on products and fails on remainders") {
  const RatPoly d = make({Rat(2), Rat(-1)});               // 2 - z
  const RatPoly q = make({Rat(1, 3), Rat(0), Rat(5)});     // 1/3 + 5z^2
  const RatPoly n = d * q;
  RatPoly out;
  REQUIRE(n.divide_exact(d, out));
  CHECK(out.c == q.c);
  RatPoly none;
  CHECK_FALSE((n + RatPoly::constant(Rat(1))).divide_exact(d, none));
  CHECK_FALSE(n.divide_exact(RatPoly(), none));
}

TEST_CASE("bernstein_term expands z^k (1-z)^(n-k)") {
  const RatPoly t = bernstein_term(3, 1);  // z(1-z)^2 = z - 2z^2 + z^3
  CHECK(t.c == std::vector<Rat>{Rat(0), Rat(1), Rat(-2), Rat(1)});
  for (int n = 0; n <= 5; ++n) {
    RatPoly sum;
    for (int k = 0; k <= n; ++k)
      sum = sum + bernstein_term(n, k).scaled(Rat(binomial(n, k)));
    CHECK(sum.c == std::vector<Rat>{Rat(1)});  // partition of unity
  }
}

TEST_CASE("pow matches repeated multiplication") {
  const RatPoly d = make({Rat(3, 2), Rat(-1, 2)});
  CHECK(d.pow(0).c == std::vector<Rat>{Rat(1)});
  CHECK((d.pow(3) - d * d * d).is_zero());
}

TEST_CASE("double views: Horner and direct evaluation agree within coefficient scale") {
  Rng rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> cs(1 + rng.below(7));
    for (auto& c : cs) c = 2.0 * rng.next_double() - 1.0;
    const Poly p(std::move(cs));
    const double scale = p.coeff_scale();
    for (int i = 0; i <= 20; ++i) {
      const double z = i / 20.0;
      const double a = p.eval(z);
      const double b = p.eval_direct(z);
      CHECK(std::fabs(a - b) <= 8 * std::numeric_limits<double>::epsilon() * (1.0 + scale));
    }
  }
}

TEST_CASE("eval_derivative matches a symbolic derivative") {
  const RatPoly p = make({Rat(1), Rat(-3), Rat(0), Rat(7, 2)});
  const Poly pd(p);
  const Poly dd(p.derivative());
  for (int i = 0; i <= 10; ++i) {
    const double z = i / 10.0;
    CHECK(pd.eval_derivative(z) == doctest::Approx(dd.eval(z)).epsilon(1e-14));
  }
}
