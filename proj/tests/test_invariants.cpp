#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "fnls/errors.hpp"
#include "fnls/fractional.hpp"
#include "fnls/grid.hpp"
#include "fnls/invariants.hpp"
#include "fnls/norms.hpp"

using namespace fnls;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("mass of a single mode is 2 pi |a|^2") {
  GridSpec g(16);
  const cplx a{0.8, -0.5};
  SpectralField f(g);
  f.set(3, a);
  CHECK(mass(f) == doctest::Approx(2.0 * kPi * std::norm(a)).epsilon(1e-14));
  f.set(-2, {1.0, 1.0});
  CHECK(mass(f) == doctest::Approx(2.0 * kPi * (std::norm(a) + 2.0)).epsilon(1e-14));
}

TEST_CASE("single-mode invariants match their closed forms for each sign of mu") {
  GridSpec g(32);
  const cplx a{1.2, 0.3};
  const int k = 4;
  SpectralField f(g);
  f.set(k, a);
  Alpha alpha(0.75);

  const double m2 = std::norm(a);
  const double kin = 2.0 * kPi * m2 * std::pow(static_cast<double>(k), 1.5);
  const double pot = kPi * m2 * m2;  // (1/2) int |u|^4 = (1/2)(2 pi |a|^4)

  InvariantSnapshot defo = invariants(f, alpha, -1, 0.7);
  CHECK(defo.t == 0.7);
  CHECK(defo.mass == doctest::Approx(2.0 * kPi * m2).epsilon(1e-13));
  CHECK(defo.kinetic == doctest::Approx(kin).epsilon(1e-13));
  CHECK(defo.potential == doctest::Approx(pot).epsilon(1e-12));
  CHECK(defo.energy == doctest::Approx(kin + pot).epsilon(1e-12));

  InvariantSnapshot focu = invariants(f, alpha, +1);
  CHECK(focu.energy == doctest::Approx(kin - pot).epsilon(1e-12));

  InvariantSnapshot lin = invariants(f, alpha, 0);
  CHECK(lin.energy == doctest::Approx(kin).epsilon(1e-13));
  CHECK(lin.potential == doctest::Approx(pot).epsilon(1e-12));

  CHECK_THROWS_AS(invariants(f, alpha, 5), ConfigError);
}

TEST_CASE("quartic potential of 1 + e^{ix} integrates to 6 pi") {
  // |u|^4 = (2 + 2 cos x)^2 has mean value 6.
  GridSpec g(16);
  SpectralField f(g);
  f.set(0, 1.0);
  f.set(1, 1.0);
  InvariantSnapshot s = invariants(f, Alpha(0.75), -1);
  CHECK(s.potential == doctest::Approx(6.0 * kPi).epsilon(1e-13));
  CHECK(s.mass == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  // kinetic sees only the k = 1 mode
  CHECK(s.kinetic == doctest::Approx(2.0 * kPi).epsilon(1e-13));
}

TEST_CASE("gagliardo-nirenberg quotient of a plane wave is 1/(2 pi) for every alpha") {
  // ||u||_{L^4}^4 = 2 pi and both L^2 factors are sqrt(2 pi), so the exponents
  // collapse: 2 pi / (2 pi)^{1/(2 alpha)} / (2 pi)^{2 - 1/(2 alpha)} = (2 pi)^{-1}.
  GridSpec g(16);
  SpectralField f(g);
  f.set(1, 1.0);
  for (double av : {0.6, 0.75, 0.9}) {
    CHECK(gagliardo_nirenberg_ratio(f, Alpha(av)) ==
          doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
  }
}

TEST_CASE("gagliardo-nirenberg quotient is scale invariant") {
  SpectralField f = random_field(GridSpec(64), 0.9, 31);
  Alpha a(0.8);
  const double base = gagliardo_nirenberg_ratio(f, a);
  CHECK(base > 0.0);
  CHECK(gagliardo_nirenberg_ratio(cplx{3.7, 0.0} * f, a) == doctest::Approx(base).epsilon(1e-12));
  CHECK(gagliardo_nirenberg_ratio(cplx{0.0, 0.01} * f, a) == doctest::Approx(base).epsilon(1e-11));
}

TEST_CASE("gagliardo-nirenberg quotient edge cases") {
  SpectralField zero(GridSpec(8));
  CHECK_THROWS_AS(gagliardo_nirenberg_ratio(zero, Alpha(0.75)), InputError);
  SpectralField dc(GridSpec(8));
  dc.set(0, 2.0);
  CHECK(std::isinf(gagliardo_nirenberg_ratio(dc, Alpha(0.75))));
}
