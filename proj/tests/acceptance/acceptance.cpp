// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cilab/calderon.hpp"
#include "cilab/complex_plane.hpp"
#include "cilab/derivations.hpp"
#include "cilab/families.hpp"
#include "cilab/indicators.hpp"
#include "cilab/scale_harness.hpp"

using namespace cilab;

namespace {

using Rng = std::mt19937_64;

double uni(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

ComplexVector random_vector(Rng& rng, std::size_t dim) {
  ComplexVector x(dim);
  for (auto& v : x) v = std::polar(uni(rng, 0.05, 3.0), uni(rng, -kPi, kPi));
  return x;
}

RealVector random_weight(Rng& rng, std::size_t dim) {
  RealVector w(dim);
  for (auto& v : w) v = std::exp(uni(rng, -1.5, 1.5));
  return w;
}

DensityVector random_density(Rng& rng, std::size_t dim) {
  RealVector f(dim);
  for (auto& v : f) v = uni(rng, 0.05, 1.0);
  return DensityVector::normalize(f);
}

Exponent exp_of(double p) { return std::isinf(p) ? Exponent::infinity() : Exponent::finite(p); }

// Direct l_r norm, with 1/r given; 1/r = 0 is the sup norm.
double lr_norm(double inv_r, std::span<const cplx> x) {
  double m = 0.0;
  for (cplx v : x) m = std::max(m, std::abs(v));
  if (inv_r == 0.0 || m == 0.0) return m;
  double s = 0.0;
  for (cplx v : x) s += std::pow(std::abs(v) / m, 1.0 / inv_r);
  return m * std::pow(s, inv_r);
}

// Harmonic measure of the arc [t0, t1) seen from z: normalized length of its image under the
// automorphism moving z to 0.
double exact_measure(cplx z, double t0, double t1) {
  auto ang = [&](double t) { return std::arg((std::polar(1.0, t) - z) / (1.0 - std::conj(z) * std::polar(1.0, t))); };
  double len = ang(t1) - ang(t0);
  double arc = t1 - t0;
  while (arc < 0) arc += kTwoPi;
  while (len < 0) len += kTwoPi;
  while (len >= kTwoPi) len -= kTwoPi;
  if (arc >= kTwoPi - 1e-15) return 1.0;
  return len / kTwoPi;
}

// Indicator of l_p(w) at a density f, in closed form: (1/p) sum f log f - sum f log w.
double indicator_oracle(double p, const RealVector& w, const DensityVector& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double fi = f.entries()[i];
    if (fi > 0.0) s += (std::isinf(p) ? 0.0 : fi * std::log(fi) / p);
    if (!w.empty()) s -= fi * std::log(w[i]);
  }
  return s;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome verdict(bool pass, const char* fmt, ...) __attribute__((format(printf, 2, 3)));
Outcome verdict(bool pass, const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return {pass, buf};
}

const double kExponents[] = {1.0, 4.0 / 3.0, 2.0, 3.0, 4.0, INFINITY};

// 1. Optimizer against the l_r closed form over (p0, p1, theta, dim <= 32).
Outcome criterion1() {
  const double tol = 1e-6, budget = 30.0;
  Rng rng(101);
  auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int cases = 0;
  for (double p0 : kExponents)
    for (double p1 : kExponents)
      for (double theta : {0.1, 0.25, 0.5, 0.75, 0.9})
        for (std::size_t dim : {1u, 2u, 5u, 16u, 32u}) {
          ComplexVector x = random_vector(rng, dim);
          PairScale pair(SpaceSpec::lp(exp_of(p0)), SpaceSpec::lp(exp_of(p1)), dim);
          double inv_r = (1 - theta) / p0 + theta / p1;
          double expected = lr_norm(inv_r, x);
          worst = std::max(worst, std::abs(calderon_norm(pair, theta, x) - expected) / expected);
          ++cases;
        }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return verdict(worst <= tol && secs <= budget, "cases=%d max_rel_err=%.3e (tol %.0e) time=%.2fs (budget %.0fs)", cases,
                 worst, tol, secs, budget);
}

// 2. Weighted pairs over one lattice: norm and derivation in closed form.
Outcome criterion2() {
  const double tol = 1e-8;
  Rng rng(202);
  double worst_norm = 0.0, worst_der = 0.0;
  for (double p : kExponents)
    for (int s = 0; s < 20; ++s) {
      std::size_t dim = 1 + s % 12;
      double theta = uni(rng, 0.05, 0.95);
      RealVector w0 = random_weight(rng, dim), w1 = random_weight(rng, dim);
      ComplexVector x = random_vector(rng, dim);
      PairScale pair(SpaceSpec::weighted(exp_of(p), Weight(w0)), SpaceSpec::weighted(exp_of(p), Weight(w1)), dim);
      ComplexVector wx(dim), lx(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        wx[i] = std::pow(w0[i], 1 - theta) * std::pow(w1[i], theta) * x[i];
        lx[i] = std::log(w0[i] / w1[i]) * x[i];
      }
      double expected = lr_norm(1.0 / p, wx);
      worst_norm = std::max(worst_norm, std::abs(calderon_norm(pair, theta, x) - expected) / expected);
      ComplexVector d = pair_derivation(pair, theta, x);
      for (std::size_t i = 0; i < dim; ++i)
        worst_der = std::max(worst_der, std::abs(d[i] - lx[i]) / std::max(1.0, std::abs(lx[i])));
    }
  return verdict(worst_norm <= tol && worst_der <= tol, "norm_rel_err=%.3e derivation_err=%.3e (tol %.0e)", worst_norm,
                 worst_der, tol);
}

struct SweepCase {
  PairScale pair;
  ComplexVector x;
};

std::vector<SweepCase> sweep_matrix(Rng& rng) {
  std::vector<SweepCase> out;
  for (double p0 : kExponents)
    for (double p1 : kExponents) {
      std::size_t dim = 1 + out.size() % 9;
      out.push_back({PairScale(SpaceSpec::lp(exp_of(p0)), SpaceSpec::lp(exp_of(p1)), dim), random_vector(rng, dim)});
    }
  for (int s = 0; s < 12; ++s) {
    std::size_t dim = 2 + s % 6;
    double p = kExponents[s % 6];
    out.push_back({PairScale(SpaceSpec::weighted(exp_of(p), Weight(random_weight(rng, dim))),
                             SpaceSpec::weighted(exp_of(p), Weight(random_weight(rng, dim))), dim),
                   random_vector(rng, dim)});
  }
  return out;
}

std::vector<double> sweep_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 19; ++k) g.push_back(0.05 * k);
  return g;
}

// 3. log N(t) is convex along every sweep.
Outcome criterion3() {
  const double floor = -1e-9;
  Rng rng(303);
  double worst = INFINITY;
  int samples = 0;
  for (const auto& c : sweep_matrix(rng))
    for (const auto& s : scale_sweep(c.pair, c.x, sweep_grid())) {
      worst = std::min(worst, s.logconv_residual);
      ++samples;
    }
  return verdict(worst >= floor, "samples=%d min_logconv_residual=%.3e (floor %.0e)", samples, worst, floor);
}

// 4. One-sided differences of the norm are dominated by the derivation norm. The sweep records raw
// differences D(h) and the extrapolated 2 D(h/2) - D(h) of the same side; the bound is checked on the
// extrapolated pair, and the raw excess is reported next to it.
Outcome criterion4() {
  const double slack = 1e-4, rel = 1e-4;
  Rng rng(404);
  auto one_sided = [](const ScaleSample& s) {
    return std::max(std::abs(s.fd_left_extrapolated), std::abs(s.fd_right_extrapolated));
  };
  auto raw = [](const ScaleSample& s) { return std::max(std::abs(s.fd_derivative_left), std::abs(s.fd_derivative_right)); };
  double worst_excess = -INFINITY, worst_raw = -INFINITY;
  std::string where;
  for (const auto& c : sweep_matrix(rng))
    for (const auto& s : scale_sweep(c.pair, c.x, sweep_grid())) {
      double excess = one_sided(s) - s.omega_norm;
      worst_raw = std::max(worst_raw, raw(s) - s.omega_norm);
      if (excess > worst_excess) {
        worst_excess = excess;
        char buf[160];
        std::snprintf(buf, sizeof buf, "p0=%s p1=%s t=%.2f", c.pair.x0.p.to_string().c_str(),
                      c.pair.x1.p.to_string().c_str(), s.t);
        where = buf;
      }
    }
  // Equality case: (l_inf, l_1) on the flat vector.
  double worst_rel = 0.0, worst_rel_raw = 0.0;
  for (std::size_t dim : {2u, 8u, 32u}) {
    PairScale pair(SpaceSpec::lp(Exponent::infinity()), SpaceSpec::lp(Exponent::finite(1)), dim);
    for (const auto& s : scale_sweep(pair, ComplexVector(dim, 1.0), sweep_grid())) {
      worst_rel = std::max(worst_rel, std::abs(one_sided(s) - s.omega_norm) / s.omega_norm);
      worst_rel_raw = std::max(worst_rel_raw, std::abs(raw(s) - s.omega_norm) / s.omega_norm);
    }
  }
  return verdict(worst_excess <= slack && worst_rel <= rel,
                 "max(|fd|-omega_norm)=%.3e at %s (slack %.0e) equality_rel_gap=%.3e (tol %.0e); "
                 "raw step-h values: excess=%.3e equality_gap=%.3e",
                 worst_excess, where.c_str(), slack, worst_rel, rel, worst_raw, worst_rel_raw);
}

// 5. Disk automorphisms move boundary points by at most 2|a|.
Outcome criterion5() {
  Rng rng(505);
  double worst = -INFINITY;
  for (int s = 0; s < 1000; ++s) {
    cplx a = std::polar(std::sqrt(uni(rng, 0.0, 1.0)) * 0.999, uni(rng, -kPi, kPi));
    worst = std::max(worst, mobius_deviation(a, 10000) - 2 * std::abs(a));
  }
  return verdict(worst <= 1e-12, "trials=1000 max(deviation-2|a|)=%.3e (tol 1e-12)", worst);
}

// 6. Three-arc determinant, its sine-product form, and the multiplier round trip.
Outcome criterion6() {
  Rng rng(606);
  double worst_formula = 0.0, min_distinct = INFINITY, max_coincident = 0.0;
  for (int s = 0; s < 200; ++s) {
    std::array<double, 3> c{uni(rng, 0, kTwoPi), uni(rng, 0, kTwoPi), uni(rng, 0, kTwoPi)};
    std::sort(c.begin(), c.end());
    double gap = std::min({c[1] - c[0], c[2] - c[1], kTwoPi - c[2] + c[0]});
    if (gap < 0.05) continue;
    double det = three_arc_determinant(c);
    // Independent sine product: sin((t0-t1)/2) sin((t2-t1)/2) sin((t2-t0)/2) / pi^2.
    double sp = std::sin((c[0] - c[1]) / 2) * std::sin((c[2] - c[1]) / 2) * std::sin((c[2] - c[0]) / 2) / (kPi * kPi);
    worst_formula = std::max(worst_formula, std::abs(det - sp));
    min_distinct = std::min(min_distinct, std::abs(det));
    std::array<double, 3> d = c;
    d[s % 3] = d[(s + 1) % 3];
    std::sort(d.begin(), d.end());
    max_coincident = std::max(max_coincident, std::abs(three_arc_determinant(d)));
  }
  double worst_trip = 0.0;
  for (int s = 0; s < 30; ++s) {
    std::size_t dim = 1 + s % 6;
    std::array<double, 3> c{uni(rng, 0, 2.0), uni(rng, 2.2, 4.0), uni(rng, 4.2, 6.2)};
    ArcPartition part({c[0], c[1], c[2]});
    ComplexVector f(dim);
    for (auto& v : f) v = {uni(rng, -1.5, 1.5), uni(rng, -1.5, 1.5)};
    auto fam = FamilySpec::arcs_weighted(SpaceSpec::lp(Exponent::finite(2)), part, weights_from_multiplier(f, part));
    FamilyPoint pt(fam, 0.0);
    ComplexVector x = random_vector(rng, dim);
    ComplexVector d = family_derivation(pt, x);
    double xn = lr_norm(0.5, x);
    worst_trip = std::max(worst_trip, std::abs(family_norm(pt, x) - xn) / xn);
    for (std::size_t i = 0; i < dim; ++i) worst_trip = std::max(worst_trip, std::abs(d[i] - f[i] * x[i]) / xn);
  }
  bool ok = worst_formula <= 1e-10 && max_coincident <= 1e-12 && min_distinct > 1e-6 && worst_trip <= 1e-6;
  return verdict(ok, "formula_err=%.3e min|det| distinct=%.3e max|det| coincident=%.3e round_trip=%.3e", worst_formula,
                 min_distinct, max_coincident, worst_trip);
}

// 7. Arc families against products and pairs.
Outcome criterion7() {
  Rng rng(707);
  double worst_product = 0.0, worst_pair = 0.0;
  for (int s = 0; s < 40; ++s) {
    std::size_t dim = 1 + s % 8;
    int arcs = 2 + s % 3;
    std::vector<double> cuts;
    for (int j = 0; j < arcs; ++j) cuts.push_back(kTwoPi * (j + uni(rng, 0.1, 0.9)) / arcs);
    ArcPartition part(cuts);
    double p = kExponents[s % 6];
    std::vector<Weight> ws;
    std::vector<SpaceSpec> specs;
    for (int j = 0; j < arcs; ++j) {
      ws.emplace_back(random_weight(rng, dim));
      specs.push_back(SpaceSpec::weighted(exp_of(p), ws.back()));
    }
    auto fam = FamilySpec::arcs_weighted(SpaceSpec::lp(exp_of(p)), part, ws);
    cplx z = std::polar(uni(rng, 0.0, 0.8), uni(rng, -kPi, kPi));
    ComplexVector x = random_vector(rng, dim);
    std::vector<double> mu;
    ComplexVector wx = x;
    for (int j = 0; j < arcs; ++j) {
      mu.push_back(exact_measure(z, cuts[j], cuts[(j + 1) % arcs]));
      for (std::size_t i = 0; i < dim; ++i) wx[i] *= std::pow(ws[j][i], mu[j]);
    }
    double closed = lr_norm(1.0 / p, wx);
    double fam_norm = family_norm(FamilyPoint(fam, z), x);
    double opt = multi_product_norm(specs, mu, x);
    worst_product = std::max({worst_product, std::abs(fam_norm - opt) / opt, std::abs(closed - opt) / opt});
  }
  for (int s = 0; s < 40; ++s) {
    std::size_t dim = 1 + s % 8;
    double a = uni(rng, 0.5, 5.5);
    ArcPartition part({0.0, a});
    double p0 = kExponents[s % 6], p1 = kExponents[(s / 6) % 6];
    cplx z = std::polar(uni(rng, 0.0, 0.8), uni(rng, -kPi, kPi));
    ComplexVector x = random_vector(rng, dim);
    double theta = exact_measure(z, a, kTwoPi);
    auto fam = FamilySpec::arcs_lp(part, {exp_of(p0), exp_of(p1)});
    PairScale pair(SpaceSpec::lp(exp_of(p0)), SpaceSpec::lp(exp_of(p1)), dim);
    double pn = calderon_norm(pair, theta, x);
    worst_pair = std::max(worst_pair, std::abs(family_norm(FamilyPoint(fam, z), x) - pn) / pn);
  }
  return verdict(worst_product <= 1e-6 && worst_pair <= 1e-8, "product_rel_err=%.3e (tol 1e-6) pair_rel_err=%.3e (tol 1e-8)",
                 worst_product, worst_pair);
}

// 8. Indicator identities.
Outcome criterion8() {
  Rng rng(808);
  double worst_pair = 0.0;
  int sign = 0;
  bool sign_stable = true;
  for (double p0 : kExponents)
    for (double p1 : kExponents) {
      if (p0 == p1) continue;
      for (int s = 0; s < 8; ++s) {
        double theta = uni(rng, 0.1, 0.9);
        double inv_r = (1 - theta) / p0 + theta / p1;
        if (inv_r <= 0.0 || inv_r >= 1.0) continue;
        std::size_t dim = 2 + s % 10;
        PairScale pair(SpaceSpec::lp(exp_of(p0)), SpaceSpec::lp(exp_of(p1)), dim);
        DensityVector f = random_density(rng, dim);
        double lhs = phi_omega(CentralizerHandle::pair_induced(pair, theta), Exponent::finite(1.0 / inv_r), f).real();
        double rhs = indicator_oracle(p0, {}, f) - indicator_oracle(p1, {}, f);
        worst_pair = std::max(worst_pair, std::abs(std::abs(lhs) - std::abs(rhs)));
        if (std::abs(rhs) > 1e-6) {
          int sg = (lhs * rhs) < 0 ? -1 : 1;
          if (sign == 0) sign = sg;
          sign_stable = sign_stable && sg == sign;
        }
      }
    }
  double worst_family = 0.0;
  for (int s = 0; s < 40; ++s) {
    std::size_t dim = 1 + s % 8;
    int arcs = 2 + s % 3;
    std::vector<double> cuts;
    for (int j = 0; j < arcs; ++j) cuts.push_back(kTwoPi * (j + uni(rng, 0.1, 0.9)) / arcs);
    std::vector<Weight> ws;
    for (int j = 0; j < arcs; ++j) ws.emplace_back(random_weight(rng, dim));
    double p = kExponents[s % 6];
    auto fam = std::make_shared<const FamilySpec>(
        FamilySpec::arcs_weighted(SpaceSpec::lp(exp_of(p)), ArcPartition(cuts), ws));
    cplx z = std::polar(uni(rng, 0.0, 0.8), uni(rng, -kPi, kPi));
    DensityVector f = random_density(rng, dim);
    // Indicator of X_z against the Poisson average of the boundary indicators, both from the oracle.
    RealVector wz(dim, 1.0);
    double avg = 0.0;
    for (int j = 0; j < arcs; ++j) {
      double mu = exact_measure(z, cuts[j], cuts[(j + 1) % arcs]);
      for (std::size_t i = 0; i < dim; ++i) wz[i] *= std::pow(ws[j][i], mu);
      avg += mu * indicator_oracle(p, ws[j].entries(), f);
    }
    double lhs = indicator(*interpolated_space(FamilyPoint(fam, z), dim), f);
    worst_family = std::max({worst_family, std::abs(lhs - avg), std::abs(indicator_oracle(p, wz, f) - avg),
                             std::abs(poisson_indicator_average(FamilyPoint(fam, z), f) - avg)});
  }
  bool ok = worst_pair <= 1e-6 && sign_stable && sign != 0 && worst_family <= 1e-6;
  return verdict(ok, "pair_err=%.3e sign=%+d stable=%s family_poisson_err=%.3e (tol 1e-6)", worst_pair, sign,
                 sign_stable ? "yes" : "no", worst_family);
}

// 9. Variable exponent, flat diagonal and reiterated families.
Outcome criterion9() {
  Rng rng(909);
  auto var = std::make_shared<const FamilySpec>(FamilySpec::variable_exponent(RationalFunction::parse("z^2+2")));
  double worst_zero = 0.0;
  for (std::size_t dim : {1u, 4u, 64u, 1024u}) {
    for (int s = 0; s < 5; ++s) {
      ComplexVector x = random_vector(rng, dim);
      worst_zero = std::max(worst_zero, lr_norm(0.5, family_derivation(FamilyPoint(var, 0.0), x)) / lr_norm(0.5, x));
    }
  }
  std::vector<std::size_t> dims;
  for (int k = 4; k <= 14; ++k) dims.push_back(std::size_t{1} << k);
  ProbeOptions flat;
  flat.flat_only = true;
  ProbeReport zero = boundedness_probe(CentralizerHandle::family_induced(var, 0.0), SpaceSpec::lp(Exponent::finite(2)),
                                       {16, 256, 4096});
  for (const auto& r : zero.rows) worst_zero = std::max(worst_zero, r.max_ratio);

  const double p = 2.25, expected = (1.0 / 2.25) / p;
  ProbeReport half = boundedness_probe(CentralizerHandle::family_induced(var, 0.5),
                                       SpaceSpec::lp(Exponent::finite(p)), dims, flat);
  double slope_err = std::abs(half.flat_slope_vs_log_dim - expected) / expected;

  auto flatfam = std::make_shared<const FamilySpec>(FamilySpec::flat_diagonal(2, DiagonalRule{}));
  double worst_flat = 0.0;
  for (int s = 0; s < 10; ++s) {
    std::size_t dim = 1 + s * 7;
    cplx z = std::polar(uni(rng, 0.0, 0.9), uni(rng, -kPi, kPi));
    if (s == 0) z = 0.0;
    ComplexVector x = random_vector(rng, dim);
    ComplexVector d = family_derivation(FamilyPoint(flatfam, z), x);
    for (std::size_t i = 0; i < dim; ++i) {
      cplx want = 2.0 * z * std::log(static_cast<double>(i) + 2.0) * x[i];
      worst_flat = std::max(worst_flat, std::abs(d[i] - want));
    }
  }

  PiecewiseConstant b0(ArcPartition({0.0, kPi / 2, kPi, 3 * kPi / 2}), {1.0, 0.0, 1.0, 0.0});
  double worst_phi = 0.0;
  for (int s = 0; s < 10; ++s) {
    std::size_t dim = 1 + s * 3;
    PairScale pair(SpaceSpec::lp(Exponent::infinity()), SpaceSpec::lp(Exponent::finite(1)), dim);
    auto reit = std::make_shared<const FamilySpec>(FamilySpec::reiterated_pair(pair, b0));
    DensityVector f = random_density(rng, dim);
    worst_phi = std::max(worst_phi, std::abs(phi_omega(CentralizerHandle::family_induced(reit, 0.0),
                                                       Exponent::finite(2), f)));
  }
  bool ok = worst_zero <= 1e-10 && slope_err <= 0.05 && worst_flat <= 1e-12 && worst_phi <= 1e-8;
  return verdict(ok, "omega0=%.3e slope=%.6f expected=%.6f rel=%.3e (tol 0.05) flat_diag_err=%.3e reiterated_phi0=%.3e",
                 worst_zero, half.flat_slope_vs_log_dim, expected, slope_err, worst_flat, worst_phi);
}

// 10. The linear flow of a weighted pair and the null case.
Outcome criterion10() {
  Rng rng(1010);
  double worst_flow = 0.0, worst_null = 0.0;
  for (int s = 0; s < 100; ++s) {
    std::size_t dim = 1 + s % 16;
    double p = kExponents[s % 6];
    RealVector w0 = random_weight(rng, dim), w1 = random_weight(rng, dim);
    PairScale pair(SpaceSpec::weighted(exp_of(p), Weight(w0)), SpaceSpec::weighted(exp_of(p), Weight(w1)), dim);
    ComplexVector g(dim);
    for (std::size_t i = 0; i < dim; ++i) g[i] = std::log(w0[i] / w1[i]);
    ComplexVector x = random_vector(rng, dim);
    worst_flow = std::max(worst_flow, linear_flow_check(g, pair, uni(rng, 0.05, 0.95), x) / lr_norm(1.0 / p, x));
  }
  for (int s = 0; s < 30; ++s) {
    std::size_t dim = 1 + s % 10;
    double p = kExponents[s % 6];
    RealVector w = random_weight(rng, dim);
    PairScale pair(SpaceSpec::weighted(exp_of(p), Weight(w)), SpaceSpec::weighted(exp_of(p), Weight(w)), dim);
    ComplexVector x = random_vector(rng, dim);
    double n0 = calderon_norm(pair, 0.1, x);
    for (double t : {0.3, 0.5, 0.7, 0.9}) worst_null = std::max(worst_null, std::abs(calderon_norm(pair, t, x) - n0) / n0);
  }
  return verdict(worst_flow <= 1e-8 && worst_null <= 1e-8, "flow_residual=%.3e null_scale_variation=%.3e (tol 1e-8)",
                 worst_flow, worst_null);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 calderon oracle agreement", criterion1}, {"2 weighted-pair exactness", criterion2},
      {"3 log-convexity", criterion3},             {"4 derivative estimate", criterion4},
      {"5 mobius bound", criterion5},              {"6 three-arc system", criterion6},
      {"7 family product law", criterion7},        {"8 indicator identities", criterion8},
      {"9 counterexample families", criterion9},   {"10 linear-flow isometry", criterion10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
