#include <cmath>

#include "cilab/calderon.hpp"
#include "cilab/derivations.hpp"
#include "cilab/errors.hpp"
#include "cilab/indicators.hpp"
#include "doctest.h"

using namespace cilab;
using doctest::Approx;

TEST_CASE("closed-form indicator") {
  DensityVector f({0.3, 0.7});
  CHECK(indicator_lp(Exponent::infinity(), f) == 0.0);
  CHECK(indicator_lp(Exponent::finite(2), DensityVector({1, 1})) == Approx(-std::log(2.0)));
  CHECK(indicator_lp(Exponent::finite(1), DensityVector({1, 1})) == Approx(-2 * std::log(2.0)));
  CHECK(indicator_lp(Exponent::finite(3), DensityVector({0, 1, 0})) == Approx(0.0));
  SpaceSpec w = SpaceSpec::weighted(Exponent::finite(2), Weight({2.0, 0.5}));
  CHECK(indicator(w, f) ==
        Approx(indicator_lp(Exponent::finite(2), f) - 0.3 * std::log(2.0) - 0.7 * std::log(0.5)));
}

TEST_CASE("numeric indicator matches the closed form") {
  SpaceSpec l2 = SpaceSpec::lp(Exponent::finite(2));
  CHECK(indicator_numeric(l2, DensityVector({1, 1})) == Approx(-std::log(2.0)).epsilon(1e-6));
  for (double p : {1.0, 1.5, 4.0}) {
    SpaceSpec s = SpaceSpec::weighted(Exponent::finite(p), Weight({1.0, 3.0, 0.2, 1.5}));
    DensityVector f = DensityVector::normalize({0.1, 0.5, 0.15, 0.25});
    CHECK(indicator_numeric(s, f) == Approx(indicator(s, f)).epsilon(1e-6));
  }
  SpaceSpec inf = SpaceSpec::weighted(Exponent::infinity(), Weight({2.0, 0.5}));
  DensityVector g({0.4, 0.6}, true);
  CHECK(indicator_numeric(inf, g) == Approx(indicator(inf, g)).epsilon(1e-9));
}

TEST_CASE("omega lift") {
  DensityVector f({0.2, 0.3, 0.5}, true);
  ComplexVector g{1.0, cplx(0, 2), -0.5};
  auto mult = CentralizerHandle::multiplication(g);
  ComplexVector lift = omega_lift_lp(mult, Exponent::finite(2), f);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(lift[i] - g[i] * f.entries()[i]) < 1e-15);
  cplx phi = phi_omega(mult, Exponent::finite(2), f);
  CHECK(std::abs(phi - (0.2 * g[0] + 0.3 * g[1] + 0.5 * g[2])) < 1e-15);

  auto kp = CentralizerHandle::kalton_peck(2, 2.0);
  ComplexVector l = omega_lift_lp(kp, Exponent::finite(2), f);
  for (int i = 0; i < 3; ++i) {
    double fi = f.entries()[i];
    CHECK(std::abs(l[i] - fi * std::log(fi)) < 1e-14);
  }
  CHECK(std::abs(phi_omega(CentralizerHandle::zero(), Exponent::finite(2), f)) == 0.0);
  CHECK_THROWS_AS(omega_lift_lp(kp, Exponent::finite(1), f), UsageError);
}

TEST_CASE("pair indicator identity with the pinned sign") {
  const auto& o = indicator_orientation();
  CHECK((o.sigma == 1 || o.sigma == -1));
  PairScale p(SpaceSpec::lp(Exponent::infinity()), SpaceSpec::lp(Exponent::finite(1)), 2);
  DensityVector f({0.5, 0.5}, true);
  auto omega = CentralizerHandle::pair_induced(p, 0.5);
  cplx phi = phi_omega(omega, Exponent::finite(2), f);
  double rhs = indicator(p.x0, f) - indicator(p.x1, f);
  CHECK(std::abs(phi.real() - o.sigma * rhs) < 1e-9);
  CHECK(std::abs(phi.real() + std::log(2.0)) < 1e-9);
}

TEST_CASE("density validation") {
  CHECK_THROWS_AS(DensityVector({-0.1, 1.1}), UsageError);
  CHECK_THROWS_AS(DensityVector({0.3, 0.3}, true), UsageError);
  CHECK_THROWS_AS(DensityVector::normalize({0.0, 0.0}), UsageError);
  CHECK(DensityVector::normalize({2.0, 6.0}).entries()[1] == Approx(0.75));
}
