#include <cmath>

#include "cilab/calderon.hpp"
#include "cilab/errors.hpp"
#include "doctest.h"

using namespace cilab;
using doctest::Approx;

namespace {
const Exponent kInf = Exponent::infinity();
Exponent fin(double p) { return Exponent::finite(p); }

// l_r norm computed directly, independent of the library's norm routine.
double lr(double r, const ComplexVector& x) {
  double s = 0.0;
  for (cplx v : x) s += std::pow(std::abs(v), r);
  return std::pow(s, 1.0 / r);
}
}  // namespace

TEST_CASE("calderon norm examples") {
  PairScale kp(SpaceSpec::lp(kInf), SpaceSpec::lp(fin(1)), 2);
  CHECK(calderon_norm(kp, 0.5, ComplexVector{3, 4}) == Approx(5.0).epsilon(1e-12));

  PairScale same(SpaceSpec::lp(fin(3)), SpaceSpec::lp(fin(3)), 3);
  ComplexVector x{1.0, cplx(0, -2), 0.5};
  CHECK(calderon_norm(same, 0.37, x) == Approx(lr(3, x)).epsilon(1e-12));

  PairScale w(SpaceSpec::weighted(fin(2), Weight({1, 1})), SpaceSpec::weighted(fin(2), Weight({4, 1})), 2);
  CHECK(calderon_norm(w, 0.5, ComplexVector{1, 0}) == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("calderon norm agrees with the lp oracle") {
  const double ps[] = {1.0, 1.5, 2.0, 4.0, INFINITY};
  ComplexVector x{0.3, cplx(-1.2, 0.4), 2.0, 0.0, cplx(0.0, 0.7)};
  for (double p0 : ps)
    for (double p1 : ps)
      for (double theta : {0.1, 0.5, 0.85}) {
        Exponent e0 = std::isinf(p0) ? kInf : fin(p0), e1 = std::isinf(p1) ? kInf : fin(p1);
        double inv_r = (1 - theta) * e0.reciprocal() + theta * e1.reciprocal();
        PairScale pair(SpaceSpec::lp(e0), SpaceSpec::lp(e1), x.size());
        double expected = inv_r == 0.0 ? 2.0 : lr(1.0 / inv_r, x);
        CHECK(calderon_norm(pair, theta, x) == Approx(expected).epsilon(1e-9));
      }
}

TEST_CASE("optimal factorization") {
  PairScale kp(SpaceSpec::lp(kInf), SpaceSpec::lp(fin(1)), 2);
  Factorization f = optimal_factorization(kp, 0.5, ComplexVector{1, 1});
  CHECK(f.achieved_value == Approx(std::sqrt(2.0)).epsilon(1e-12));
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(f.a0[i] - std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(f.a1[i] - std::sqrt(0.5)) < 1e-10);
  }

  // Weighted pair: |a0| / |a1| is proportional to w1 / w0.
  RealVector w0{1.0, 2.0, 0.5}, w1{3.0, 1.0, 1.0};
  PairScale w(SpaceSpec::weighted(fin(2), Weight(w0)), SpaceSpec::weighted(fin(2), Weight(w1)), 3);
  ComplexVector x{1.0, cplx(0, 2), -0.5};
  Factorization g = optimal_factorization(w, 0.3, x);
  double c = std::abs(g.a0[0]) / std::abs(g.a1[0]) / (w1[0] / w0[0]);
  for (int i = 1; i < 3; ++i) CHECK(std::abs(g.a0[i]) / std::abs(g.a1[i]) / (w1[i] / w0[i]) == Approx(c).epsilon(1e-8));
  for (int i = 0; i < 3; ++i) {
    double rebuilt = std::pow(std::abs(g.a0[i]), 0.7) * std::pow(std::abs(g.a1[i]), 0.3);
    CHECK(rebuilt == Approx(std::abs(x[i])).epsilon(1e-10));
    CHECK(std::abs(std::arg(g.a0[i]) - std::arg(x[i])) < 1e-12);
  }
}

TEST_CASE("pair derivation examples") {
  PairScale kp(SpaceSpec::lp(kInf), SpaceSpec::lp(fin(1)), 2);
  ComplexVector d = pair_derivation(kp, 0.5, ComplexVector{1, 1});
  for (cplx v : d) CHECK(std::abs(v + std::log(2.0)) < 1e-10);

  ComplexVector e1 = pair_derivation(kp, 0.5, ComplexVector{1, 0});
  for (cplx v : e1) CHECK(std::abs(v) < 1e-12);

  RealVector w0{2.0, 1.0}, w1{1.0, 5.0};
  PairScale w(SpaceSpec::weighted(fin(2), Weight(w0)), SpaceSpec::weighted(fin(2), Weight(w1)), 2);
  ComplexVector x{0.7, cplx(0, -1.5)};
  ComplexVector dw = pair_derivation(w, 0.4, x);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(dw[i] - std::log(w0[i] / w1[i]) * x[i]) < 1e-9);
}

TEST_CASE("multi product norm") {
  ComplexVector x{1.0, 0.0};
  SpaceSpec l2 = SpaceSpec::lp(fin(2));
  CHECK(multi_product_norm({l2}, {1.0}, ComplexVector{3, 4}) == Approx(5.0));
  CHECK(multi_product_norm({l2, l2, l2}, {0.2, 0.5, 0.3}, ComplexVector{3, 4}) == Approx(5.0).epsilon(1e-10));
  std::vector<SpaceSpec> specs{SpaceSpec::weighted(fin(2), Weight({std::exp(1.0), 1.0})), l2, l2};
  CHECK(multi_product_norm(specs, {1.0 / 3, 1.0 / 3, 1.0 / 3}, x) == Approx(std::exp(1.0 / 3)).epsilon(1e-10));
}

TEST_CASE("closed form exponent") {
  CHECK(closed_form_lp_pair(kInf, fin(1), 0.5).r() == fin(2));
  CHECK(closed_form_lp_pair(fin(3), fin(3), 0.2).r().value() == Approx(3.0));
  CHECK(closed_form_lp_pair(fin(2), fin(4), 0.5).r().value() == Approx(8.0 / 3.0));
  CHECK(closed_form_lp_pair(kInf, kInf, 0.5).r().is_infinite());
}

TEST_CASE("calderon argument validation") {
  PairScale kp(SpaceSpec::lp(kInf), SpaceSpec::lp(fin(1)), 2);
  CHECK_THROWS_AS(calderon_norm(kp, 1.5, ComplexVector{1, 1}), Error);
  CHECK_THROWS_AS(calderon_norm(kp, 0.5, ComplexVector{1, 1, 1}), UsageError);
  CHECK_THROWS_AS(calderon_norm(kp, 0.5, ComplexVector{NAN, 1}), UsageError);
  CHECK_THROWS_AS(pair_derivation(kp, 0.0, ComplexVector{1, 1}), Error);
}
