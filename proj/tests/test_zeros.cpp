#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "fitpa/competition.hpp"
#include "fitpa/errors.hpp"
#include "fitpa/rng.hpp"
#include "fitpa/types.hpp"

using namespace fitpa;

namespace {

TypeAssignment ta_of(int m, std::initializer_list<Rat> p) {
  return TypeAssignment::create(m, std::vector<Rat>(p));
}

// Exhaustive fine-grid root localization on the numerator, used as an
// independent oracle: every sign change and every exact node zero.
std::vector<double> grid_roots(const CompetitionFunction& cf, int grid) {
  std::vector<double> roots;
  double prev = cf.num.eval(0.0);
  double prev_z = 0.0;
  if (prev == 0.0) roots.push_back(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double z = static_cast<double>(i) / grid;
    const double v = cf.num.eval(z);
    if (v == 0.0)
      roots.push_back(z);
    else if (prev != 0.0 && ((prev < 0) != (v < 0)))
      roots.push_back(prev_z + (z - prev_z) * prev / (prev - v));
    prev = v;
    prev_z = z;
  }
  return roots;
}

bool has_zero_near(const ZeroReport& zr, double loc, double tol = 1e-8) {
  return std::any_of(zr.zeros.begin(), zr.zeros.end(),
                     [&](const ClassifiedZero& z) { return std::fabs(z.location - loc) < tol; });
}

const ClassifiedZero& zero_near(const ZeroReport& zr, double loc, double tol = 1e-6) {
  for (const auto& z : zr.zeros)
    if (std::fabs(z.location - loc) < tol) return z;
  REQUIRE(false);
  return zr.zeros.front();
}

}  // namespace

TEST_CASE("linear plain model is reported degenerate") {
  const auto cf = build_competition(TypeAssignment::linear(3), PlainFitness{Rat(0)});
  const auto zr = find_zeros(cf);
  CHECK(zr.degenerate);
  CHECK(zr.zeros.empty());
}

TEST_CASE("co-existence example: interior stable zero flanked by unstable endpoints") {
  const auto ta = ta_of(3, {Rat(0), Rat(1, 2), Rat(1, 2), Rat(1)});
  SUBCASE("below the transition the interior zero is stable") {
    const auto cf = build_competition(ta, MultiplicativeFitness{Rat(7, 6), Rat(0)});
    const auto zr = find_zeros(cf);
    REQUIRE(zr.zeros.size() == 3);
    CHECK(zr.zeros[0].location == 0.0);
    CHECK(zr.zeros[0].cls == ZeroClass::EndpointUnstable);
    CHECK(zr.zeros[0].one_sided);
    CHECK(zr.zeros[2].location == 1.0);
    CHECK(zr.zeros[2].cls == ZeroClass::EndpointUnstable);
    CHECK(zr.zeros[1].cls == ZeroClass::Stable);
    CHECK(zr.zeros[1].location > 0.0);
    CHECK(zr.zeros[1].location < 1.0);
    CHECK(cf.eval(zr.zeros[1].location) == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("above the transition the zero at 0 is stable and no interior stable zero exists") {
    const auto cf = build_competition(ta, MultiplicativeFitness{Rat(4, 3), Rat(0)});
    const auto zr = find_zeros(cf);
    CHECK(zero_near(zr, 0.0).cls == ZeroClass::EndpointStable);
    for (const auto& z : zr.zeros)
      if (z.location > 1e-9 && z.location < 1.0 - 1e-9) CHECK(z.cls != ZeroClass::Stable);
  }
}

TEST_CASE("two-transition example: interior zero pair lives only between the transitions") {
  const auto ta = ta_of(3, {Rat(0), Rat(1), Rat(1), Rat(1)});
  const auto interior_count = [&](const Rat& phi) {
    const auto zr = find_zeros(build_competition(ta, MultiplicativeFitness{phi, Rat(0)}));
    int n = 0;
    for (const auto& z : zr.zeros)
      if (z.location > 1e-9 && z.location < 1.0 - 1e-9) ++n;
    return n;
  };
  CHECK(interior_count(Rat(13, 7)) == 0);   // red dominance regime
  CHECK(interior_count(Rat(15, 7)) == 2);   // blue dominance or co-existence
  CHECK(interior_count(Rat(17, 7)) == 0);   // blue dominance only

  const auto mid = find_zeros(build_competition(ta, MultiplicativeFitness{Rat(15, 7), Rat(0)}));
  CHECK(zero_near(mid, 0.0).cls == ZeroClass::EndpointStable);
  CHECK(zero_near(mid, 1.0).cls == ZeroClass::EndpointUnstable);
  int stable_interior = 0, unstable_interior = 0;
  for (const auto& z : mid.zeros) {
    if (z.location <= 1e-9 || z.location >= 1.0 - 1e-9) continue;
    if (z.cls == ZeroClass::Stable) ++stable_interior;
    if (z.cls == ZeroClass::Unstable) ++unstable_interior;
  }
  CHECK(stable_interior == 1);
  CHECK(unstable_interior == 1);
}

TEST_CASE("bias-to-blue example: both endpoints stable below the transition") {
  const auto ta = ta_of(3, {Rat(0), Rat(0), Rat(9, 10), Rat(1)});
  const auto below = find_zeros(build_competition(ta, MultiplicativeFitness{Rat(7, 6), Rat(0)}));
  CHECK(zero_near(below, 0.0).cls == ZeroClass::EndpointStable);
  CHECK(zero_near(below, 1.0).cls == ZeroClass::EndpointStable);
  const auto above = find_zeros(build_competition(ta, MultiplicativeFitness{Rat(5, 3), Rat(0)}));
  CHECK(zero_near(above, 0.0).cls == ZeroClass::EndpointStable);
  CHECK(zero_near(above, 1.0).cls == ZeroClass::EndpointUnstable);
  for (const auto& z : above.zeros)
    if (z.location > 1e-9 && z.location < 1.0 - 1e-9) CHECK(z.cls != ZeroClass::Stable);
}

TEST_CASE("interior stable zero of an absorbing multiplicative model at an algebraic point") {
  // m=3, p=(0,1/2,1/2,1), phi=7/6: the numerator's interior factor is
  // 2z^2 + 245z - 49 after clearing denominators, with positive root
  // (-245 + sqrt(60417))/4.
  const auto ta = ta_of(3, {Rat(0), Rat(1, 2), Rat(1, 2), Rat(1)});
  const auto cf = build_competition(ta, MultiplicativeFitness{Rat(7, 6), Rat(0)});
  const auto zr = find_zeros(cf);
  const double root = (-245.0 + std::sqrt(60417.0)) / 4.0;
  REQUIRE(has_zero_near(zr, root, 1e-9));
  CHECK(zero_near(zr, root).cls == ZeroClass::Stable);
}

TEST_CASE("random models: finder agrees with a one-million-point grid oracle") {
  Rng rng(77);
  int models_checked = 0;
  while (models_checked < 200) {
    const int m = 1 + static_cast<int>(rng.below(4));
    std::vector<Rat> p(m + 1);
    for (auto& v : p) v = Rat(rng.below(33), 32);
    TypeAssignment ta = TypeAssignment::create(m, std::move(p));
    FitnessModel fm;
    switch (models_checked % 3) {
      case 0: fm = PlainFitness{Rat(static_cast<int>(rng.below(5)), 2)}; break;
      case 1: fm = MultiplicativeFitness{Rat(1 + rng.below(48), 16), Rat(0)}; break;
      default: {
        const Rat a1(static_cast<int>(rng.below(4)), 2);
        fm = AdditiveFitness::unchecked(a1, a1 + Rat(1 + rng.below(6), 2));
        break;
      }
    }
    const auto cf = build_competition(ta, fm);
    ZeroReport zr;
    try {
      zr = find_zeros(cf);
    } catch (const UnresolvedRoot&) {
      continue;  // legitimately reported; not part of the agreement contract
    }
    ++models_checked;
    if (zr.degenerate) continue;
    for (const double r : grid_roots(cf, 1000000)) {
      CAPTURE(r);
      CHECK(has_zero_near(zr, r, 1e-8));
    }
  }
}

TEST_CASE("touchpoint detection: double root inside (0,1)") {
  // For m = 2 no valid mechanism yields an interior double root (the sign
  // constraints at 0 and 1 force a crossing), so use m = 3 with
  // p = (1/4, 1/6, 3/4, 1): the numerator is (1-z)(2z-1)^2/8, giving a
  // touchpoint at 1/2 and a stable endpoint zero at 1.
  const auto ta = ta_of(3, {Rat(1, 4), Rat(1, 6), Rat(3, 4), Rat(1)});
  const auto cf = build_competition(ta, PlainFitness{Rat(0)});
  REQUIRE(cf.num_exact.eval(Rat(1, 2)) == Rat(0));
  REQUIRE(cf.num_exact.derivative().eval(Rat(1, 2)) == Rat(0));
  const auto zr = find_zeros(cf);
  REQUIRE(zr.zeros.size() == 2);
  CHECK(zr.zeros[0].cls == ZeroClass::Touchpoint);
  CHECK(zr.zeros[0].location == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(zr.zeros[1].cls == ZeroClass::EndpointStable);
  CHECK(zr.zeros[1].location == 1.0);
}

TEST_CASE("additive linear model keeps only the fitness term") {
  const auto cf =
      build_competition(TypeAssignment::linear(2), AdditiveFitness::unchecked(Rat(0), Rat(1)));
  CHECK(cf.num_exact.c == std::vector<Rat>{Rat(0), Rat(-1), Rat(1)});  // -z(1-z)
  const auto zr = find_zeros(cf);
  REQUIRE(zr.zeros.size() == 2);
  CHECK(zr.zeros[0].cls == ZeroClass::EndpointStable);
  CHECK(zr.zeros[1].cls == ZeroClass::EndpointUnstable);
}
