#include <cmath>

#include "cilab/errors.hpp"
#include "cilab/spaces.hpp"
#include "doctest.h"

using namespace cilab;
using doctest::Approx;

TEST_CASE("lp norms") {
  ComplexVector x{3.0, 4.0};
  CHECK(norm(SpaceSpec::lp(Exponent::finite(2)), x) == Approx(5.0));
  CHECK(norm(SpaceSpec::weighted(Exponent::finite(1), Weight({2, 1})), ComplexVector{1, 1}) == Approx(3.0));
  CHECK(norm(SpaceSpec::lp(Exponent::infinity()), ComplexVector{1, -2}) == Approx(2.0));
  CHECK(norm(SpaceSpec::lp(Exponent::finite(2)), ComplexVector{cplx(0, 3), cplx(4, 0)}) == Approx(5.0));
}

TEST_CASE("large p does not overflow") {
  ComplexVector x{1e200, 2e200};
  double n = norm(SpaceSpec::lp(Exponent::finite(400)), x);
  CHECK(n == Approx(2e200 * std::pow(1 + std::pow(0.5, 400), 1.0 / 400)));
}

TEST_CASE("compensated sums") {
  std::vector<double> v{1.0, 1e100, 1.0, -1e100};
  CHECK(compensated_sum(v) == 2.0);
  std::vector<double> many(100000, 0.1);
  CHECK(compensated_sum(many) == Approx(10000.0).epsilon(1e-15));
}

TEST_CASE("dual exponents") {
  CHECK(dual_exponent(Exponent::finite(2)) == Exponent::finite(2));
  CHECK(dual_exponent(Exponent::finite(1)).is_infinite());
  CHECK(dual_exponent(Exponent::infinity()) == Exponent::finite(1));
  CHECK(dual_exponent(Exponent::finite(4)).value() == Approx(4.0 / 3.0));
}

TEST_CASE("exponent parsing and validation") {
  CHECK(Exponent::parse("4/3").value() == Approx(4.0 / 3.0));
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("2.5").value() == 2.5);
  CHECK_THROWS_AS(Exponent::finite(0.5), UsageError);
  CHECK_THROWS_AS(Exponent::parse("0.5"), Error);
  CHECK_THROWS_AS(Weight({1.0, 0.0}), UsageError);
  CHECK_THROWS_AS(Weight({1.0, -1.0}), UsageError);
}

TEST_CASE("norm properties on random vectors") {
  std::uint64_t state = 12345;
  auto u = [&] {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) / 9007199254740992.0;
  };
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
    SpaceSpec s = SpaceSpec::lp(Exponent::finite(p));
    for (int trial = 0; trial < 20; ++trial) {
      ComplexVector x(6), y(6);
      for (auto& v : x) v = {u() - 0.5, u() - 0.5};
      for (auto& v : y) v = {u() - 0.5, u() - 0.5};
      ComplexVector sum(6);
      for (int i = 0; i < 6; ++i) sum[i] = x[i] + y[i];
      CHECK(norm(s, sum) <= norm(s, x) + norm(s, y) + 1e-14);
      ComplexVector scaled = x;
      for (auto& v : scaled) v *= cplx(0.0, -3.0);
      CHECK(norm(s, scaled) == Approx(3 * norm(s, x)).epsilon(1e-13));
    }
  }
}
