#include <cmath>

#include "cilab/calderon.hpp"
#include "cilab/errors.hpp"
#include "cilab/families.hpp"
#include "cilab/family_io.hpp"
#include "cilab/indicators.hpp"
#include "doctest.h"

using namespace cilab;
using doctest::Approx;

namespace {
const Exponent k2 = Exponent::finite(2);
ArcPartition thirds() { return ArcPartition({0.0, kTwoPi / 3, 2 * kTwoPi / 3}); }
FamilySpec thirds_family() {
  return FamilySpec::arcs_weighted(SpaceSpec::lp(k2), thirds(),
                                   {Weight({std::exp(1.0), 1.0}), Weight({1.0, 1.0}), Weight({1.0, 1.0})});
}
double l2norm(const ComplexVector& v) {
  double s = 0.0;
  for (cplx c : v) s += std::norm(c);
  return std::sqrt(s);
}
}  // namespace

TEST_CASE("rational function parsing") {
  auto a = RationalFunction::parse("z^2+2");
  CHECK(std::abs(a(0.5) - 2.25) < 1e-15);
  CHECK(std::abs(a.derivative(0.5) - 1.0) < 1e-15);
  auto b = RationalFunction::parse("(3*z+1)/(z-4)");
  cplx z{0.2, 0.1};
  CHECK(std::abs(b(z) - (3.0 * z + 1.0) / (z - 4.0)) < 1e-15);
  cplx h = 1e-6;
  CHECK(std::abs(b.derivative(z) - (b(z + h) - b(z - h)) / (2.0 * h)) < 1e-8);
  CHECK(RationalFunction::parse("2z^2 + 1/2").numerator() == Polynomial({Rational(1, 2), 0, 2}));
  CHECK_THROWS_AS(RationalFunction::parse("z^"), ParseError);
  CHECK_THROWS_AS(RationalFunction::parse("z/0"), Error);
}

TEST_CASE("family norm examples") {
  FamilyPoint pt(thirds_family(), 0.0);
  CHECK(family_norm(pt, ComplexVector{1, 0}) == Approx(std::exp(1.0 / 3)).epsilon(1e-10));

  FamilyPoint flat(FamilySpec::flat_diagonal(1, DiagonalRule{}), 0.0);
  ComplexVector x{1.0, cplx(0, 2), 3.0};
  CHECK(family_norm(flat, x) == Approx(l2norm(x)).epsilon(1e-14));

  FamilyPoint var(FamilySpec::variable_exponent(RationalFunction::parse("z^2+2")), 0.0);
  CHECK(family_norm(var, x) == Approx(l2norm(x)).epsilon(1e-12));
}

TEST_CASE("family derivation examples") {
  FamilyPoint var0(FamilySpec::variable_exponent(RationalFunction::parse("z^2+2")), 0.0);
  CHECK(l2norm(family_derivation(var0, ComplexVector{1, 1})) <= 1e-10);

  // At 0.5 the derivation is -alpha'/alpha times the Kalton-Peck map on l_{p(0.5)}.
  FamilyPoint var5(FamilySpec::variable_exponent(RationalFunction::parse("z^2+2")), 0.5);
  ComplexVector x{1.0, 2.0, 0.5};
  ComplexVector d = family_derivation(var5, x);
  ComplexVector kp = kalton_peck(2.25, -1.0 / 2.25, x);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(d[i] - kp[i]) < 1e-12);

  FamilyPoint flat(FamilySpec::flat_diagonal(2, DiagonalRule{}), cplx(0.3, 0.1));
  ComplexVector y{1.0, -1.0, 2.0};
  ComplexVector fd = family_derivation(flat, y);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(fd[i] - 2.0 * cplx(0.3, 0.1) * std::log(i + 2.0) * y[i]) < 1e-14);
  FamilyPoint flat0(FamilySpec::flat_diagonal(2, DiagonalRule{}), 0.0);
  CHECK(l2norm(family_derivation(flat0, y)) == 0.0);
}

TEST_CASE("two-arc family is the pair scale") {
  // Weights on arcs [0, a) and [a, 2pi): the family at z is the pair at the harmonic measure of arc 1.
  ArcPartition p({0.0, 2.0});
  RealVector w0{1.0, 3.0, 0.5}, w1{2.0, 0.25, 1.0};
  auto spec = FamilySpec::arcs_weighted(SpaceSpec::lp(k2), p, {Weight(w0), Weight(w1)});
  cplx z{0.2, -0.3};
  double theta = harmonic_measure(z, p.arc(1));
  PairScale pair(SpaceSpec::weighted(k2, Weight(w0)), SpaceSpec::weighted(k2, Weight(w1)), 3);
  ComplexVector x{1.0, cplx(0.5, -1), 2.0};
  CHECK(family_norm(FamilyPoint(spec, z), x) == Approx(calderon_norm(pair, theta, x)).epsilon(1e-10));
}

TEST_CASE("three-arc system") {
  ThreeArcSystem s = three_arc_coefficients(thirds());
  for (double a : s.alpha) CHECK(a == Approx(1.0 / 3).epsilon(1e-12));
  CHECK(s.beta[0].real() == Approx(0.13783).epsilon(1e-4));
  CHECK(s.beta[0].imag() == Approx(-0.23873).epsilon(1e-4));
  double sp = three_arc_sine_product({0.0, kTwoPi / 3, 2 * kTwoPi / 3});
  CHECK(std::abs(sp) == Approx(3 * std::sqrt(3.0) / 8).epsilon(1e-12));
  CHECK(s.det == Approx(sp / (kPi * kPi)).epsilon(1e-10));
  CHECK(std::abs(three_arc_determinant({0.0, 1.0, 1.0})) < 1e-12);
  CHECK_THROWS_AS(three_arc_coefficients(std::array<double, 3>{0.0, 2.0, 2.0}), SingularSystemError);
}

TEST_CASE("weights from a multiplier") {
  auto zero = weights_from_multiplier(ComplexVector{0, 0}, thirds());
  for (const Weight& w : zero)
    for (double v : w.entries()) CHECK(v == Approx(1.0).epsilon(1e-14));

  auto ws = weights_from_multiplier(ComplexVector{1, 0}, thirds());
  for (int i = 0; i < 2; ++i) {
    double prod = 1.0;
    for (const Weight& w : ws) prod *= std::pow(w[i], 1.0 / 3);
    CHECK(prod == Approx(1.0).epsilon(1e-8));
  }
  auto spec = FamilySpec::arcs_weighted(SpaceSpec::lp(k2), thirds(), ws);
  FamilyPoint pt(spec, 0.0);
  CHECK(family_norm(pt, ComplexVector{0.6, 0.8}) == Approx(1.0).epsilon(1e-8));
  ComplexVector d = family_derivation(pt, ComplexVector{1, 0});
  CHECK(std::abs(d[0] - 1.0) < 1e-6);
  CHECK(std::abs(d[1]) < 1e-6);
}

TEST_CASE("reiteration derivation") {
  PairScale p(SpaceSpec::lp(Exponent::infinity()), SpaceSpec::lp(Exponent::finite(1)), 2);
  ComplexVector x{1.0, 1.0};
  PiecewiseConstant constant(ArcPartition({0.0}), {0.4});
  CHECK(l2norm(reiteration_derivation(p, constant, 0.2, x)) < 1e-12);
  PiecewiseConstant b0(ArcPartition({0.0, kPi / 2, kPi, 3 * kPi / 2}), {1.0, 0.0, 1.0, 0.0});
  CHECK(l2norm(reiteration_derivation(p, b0, 0.0, x)) < 1e-12);
  PiecewiseConstant half(ArcPartition({0.0, kPi}), {1.0, 0.0});
  ComplexVector r = reiteration_derivation(p, half, 0.0, x);
  ComplexVector omega = pair_derivation(p, 0.5, x);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(r[i] - cplx(0, -2.0 / kPi) * omega[i]) < 1e-10);
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(FamilySpec::variable_exponent(RationalFunction::parse("z^2+1/2")), Error);
  CHECK_THROWS_AS(FamilySpec::variable_exponent(RationalFunction::parse("1/(z-1/2)")), Error);
  CHECK_THROWS_AS(FamilySpec::arcs_weighted(SpaceSpec::lp(k2), thirds(), {Weight({1.0})}), UsageError);
  CHECK_THROWS_AS(FamilyPoint(thirds_family(), 1.0), DomainError);
}

TEST_CASE("serialization round trip") {
  std::string text = serialize_family(thirds_family());
  CHECK(text.find("\"2pi/3\"") != std::string::npos);
  CHECK(serialize_family(parse_family(text)) == text);
  auto back = parse_family(text);
  const auto& aw = std::get<family::ArcsWeighted>(back.kind());
  CHECK(aw.partition.cuts()[1] == kTwoPi / 3);
  CHECK(aw.partition.cuts()[2] == 2 * kTwoPi / 3);

  for (const FamilySpec& f : {FamilySpec::flat_diagonal(2, DiagonalRule{}),
                              FamilySpec::variable_exponent(RationalFunction::parse("(z^2+4)/2"), 8.0),
                              FamilySpec::arcs_lp(thirds(), {k2, Exponent::infinity(), Exponent::finite(4.0 / 3)})}) {
    std::string s = serialize_family(f);
    CHECK(serialize_family(parse_family(s)) == s);
  }
}

TEST_CASE("parse errors name the field") {
  std::string bad = R"({"kind": "arcs-lp", "partition": ["0", "pi"], "exponents": ["2", "0.5"]})";
  try {
    parse_family(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where().find("exponents") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_family(R"({"kind": "flat-diagonal", "power": 2, "diag": "log1p", "extra": 1})"), ParseError);
  CHECK_THROWS_AS(parse_family("{"), ParseError);
  CHECK(parse_angle("2pi/3") == kTwoPi / 3);
  CHECK(parse_angle("-pi/4") == -kPi / 4);
  CHECK(format_angle(kPi) == "pi");
  CHECK(format_exponent(Exponent::finite(4.0 / 3)) == "4/3");
  CHECK(format_exponent(Exponent::infinity()) == "inf");
}

TEST_CASE("family poisson indicator identity") {
  FamilyPoint pt(thirds_family(), 0.0);
  DensityVector f({0.3, 0.7}, true);
  const double kappa = indicator_orientation().kappa;
  auto omega = CentralizerHandle::family_induced(pt.family, 0.0);
  cplx lhs = phi_omega(omega, k2, f);
  cplx rhs = kappa * boundary_indicator_moment(*pt.family, f);
  CHECK(std::abs(lhs - rhs) < 1e-6);
  auto space = interpolated_space(pt, 2);
  REQUIRE(space.has_value());
  CHECK(indicator(*space, f) == Approx(poisson_indicator_average(pt, f)).epsilon(1e-10));
}
