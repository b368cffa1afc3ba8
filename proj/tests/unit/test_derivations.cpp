#include <cmath>

#include "cilab/calderon.hpp"
#include "cilab/derivations.hpp"
#include "cilab/errors.hpp"
#include "cilab/families.hpp"
#include "doctest.h"

using namespace cilab;
using doctest::Approx;

namespace {
SpaceSpec l2() { return SpaceSpec::lp(Exponent::finite(2)); }
double l2norm(const ComplexVector& v) {
  double s = 0.0;
  for (cplx c : v) s += std::norm(c);
  return std::sqrt(s);
}
}  // namespace

TEST_CASE("kalton-peck map examples") {
  ComplexVector e1 = kalton_peck(2, 1.0, ComplexVector{1, 0});
  CHECK(l2norm(e1) < 1e-15);
  ComplexVector a = kalton_peck(2, 1.0, ComplexVector{1, 1});
  for (cplx v : a) CHECK(std::abs(v + std::log(std::sqrt(2.0))) < 1e-15);
  ComplexVector b = kalton_peck(2, 1.0, ComplexVector{2, 2});
  for (int i = 0; i < 2; ++i) CHECK(std::abs(b[i] - 2.0 * a[i]) < 1e-15);
}

TEST_CASE("kalton-peck map is homogeneous over complex scalars") {
  ComplexVector x{0.3, cplx(0, -1.1), 2.0};
  cplx c{-0.6, 1.7};
  ComplexVector cx = x;
  for (auto& v : cx) v *= c;
  ComplexVector lhs = kalton_peck(3, cplx(0.5, 0.2), cx), rhs = kalton_peck(3, cplx(0.5, 0.2), x);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(lhs[i] - c * rhs[i]) < 1e-12);
}

TEST_CASE("twisted quasinorm") {
  auto zero = CentralizerHandle::zero();
  ComplexVector f{3, 4}, x{1, 0};
  CHECK(twisted_quasinorm(zero, l2(), {f, x}) == Approx(6.0));
  CHECK(twisted_quasinorm(zero, l2(), {f, ComplexVector{0, 0}}) == Approx(5.0));
  auto kp = CentralizerHandle::kalton_peck(2);
  double s = 1.0 / std::sqrt(2.0);
  CHECK(twisted_quasinorm(kp, l2(), {ComplexVector{0, 0}, ComplexVector{s, s}}) ==
        Approx(std::log(std::sqrt(2.0)) + 1).epsilon(1e-12));
}

TEST_CASE("centralizer defect") {
  auto mult = CentralizerHandle::multiplication(ComplexVector{2.0, cplx(0, 1)});
  CHECK(centralizer_defect(mult, l2(), ComplexVector{0.3, -4}, ComplexVector{1, 2}) < 1e-15);
  auto kp = CentralizerHandle::kalton_peck(2);
  CHECK(centralizer_defect(kp, l2(), ComplexVector{1.5, 1.5}, ComplexVector{0.2, 3}) < 1e-14);

  // Entrywise oracle for a = (2, 1), x = (1, 1).
  double d0 = 2 * std::log(2 / std::sqrt(5.0)) + 2 * std::log(std::sqrt(2.0));
  double d1 = std::log(1 / std::sqrt(5.0)) + std::log(std::sqrt(2.0));
  double oracle = std::hypot(d0, d1);
  double got = centralizer_defect(kp, l2(), ComplexVector{2, 1}, ComplexVector{1, 1});
  CHECK(got == Approx(oracle).epsilon(1e-13));
  CHECK(got == Approx(0.65635).epsilon(1e-4));
}

TEST_CASE("centralizer constant estimate is seeded") {
  auto kp = CentralizerHandle::kalton_peck(2);
  auto a = estimate_centralizer_constant(kp, l2(), 8, 64, 11);
  auto b = estimate_centralizer_constant(kp, l2(), 8, 64, 11);
  CHECK(a.constant == b.constant);
  CHECK(a.seed == 11);
  CHECK(a.constant > 0.0);
  CHECK(a.constant < 1.0);
  auto m = estimate_centralizer_constant(CentralizerHandle::multiplication(ComplexVector(8, 3.0)), l2(), 8, 64, 11);
  CHECK(m.constant < 1e-14);
}

TEST_CASE("boundedness probe") {
  auto kp = CentralizerHandle::kalton_peck(2);
  std::vector<std::size_t> dims{16, 64, 256};
  ProbeReport rep = boundedness_probe(kp, l2(), dims);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].flat_ratio == Approx(std::log(16.0) / 2).epsilon(1e-12));
  CHECK(rep.flat_slope_vs_log_dim == Approx(0.5).epsilon(1e-10));
  for (const auto& r : rep.rows) CHECK(r.max_ratio >= r.flat_ratio);

  auto mult = CentralizerHandle::multiplication(ComplexVector(256, cplx(0, -2.5)));
  for (const auto& r : boundedness_probe(mult, l2(), {256}).rows) CHECK(r.max_ratio <= 2.5 + 1e-12);

  auto fam = std::make_shared<const FamilySpec>(FamilySpec::flat_diagonal(2, DiagonalRule{}));
  auto omega0 = CentralizerHandle::family_induced(fam, 0.0);
  for (const auto& r : boundedness_probe(omega0, l2(), dims).rows) CHECK(r.max_ratio == 0.0);
  CHECK_THROWS_AS(boundedness_probe(kp, l2(), {}), UsageError);
}

TEST_CASE("triviality probe removes a multiplier") {
  ComplexVector g(64);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::sin(0.3 * i);
  auto mult = CentralizerHandle::multiplication(g);
  TrivialityProbe t = triviality_probe(mult, l2(), {8, 32, 64});
  for (const auto& r : t.residual.rows) CHECK(r.max_ratio < 1e-12);
}

TEST_CASE("linear flow") {
  PairScale p(SpaceSpec::weighted(Exponent::finite(2), Weight({1, 1})),
              SpaceSpec::weighted(Exponent::finite(2), Weight({4, 1})), 2);
  ComplexVector g{std::log(0.25), 0.0};
  CHECK(linear_flow_check(g, p, 0.5, ComplexVector{1, 0}) < 1e-8);
  CHECK(linear_flow_check(g, p, 0.0, ComplexVector{1, 2}) == 0.0);
}

TEST_CASE("fit_log_slope") {
  std::vector<std::size_t> d{2, 8, 32};
  std::vector<double> v;
  for (auto n : d) v.push_back(1.5 * std::log(static_cast<double>(n)) - 2);
  CHECK(fit_log_slope(d, v) == Approx(1.5).epsilon(1e-13));
}
