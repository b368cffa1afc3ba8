#include "cilab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>

#include "cilab/errors.hpp"
#include "cilab/family_io.hpp"
#include "cilab/scale_harness.hpp"

namespace cilab {

bool VerifyReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

Table VerifyReport::to_table() const {
  Table t;
  t.columns = {"module", "property", "passed", "residual", "tolerance", "inputs"};
  for (const auto& r : results)
    t.add_row({r.module, r.property, std::string(r.passed ? "true" : "false"), r.residual, r.tolerance,
               "\"" + r.inputs + "\""});
  return t;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"complex_plane", "spaces",        "calderon", "derivations",
                                              "indicators",    "families",      "scale_harness", "lab_cli"};
  return names;
}

namespace {

using Rng = std::mt19937_64;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

/// Tracks the worst residual of one property and the inputs that produced it.
struct Worst {
  double residual = -INFINITY;
  std::string inputs;

  void update(double r, const std::string& in) {
    if (std::isnan(r)) r = INFINITY;
    if (r > residual) {
      residual = r;
      inputs = in;
    }
  }
};

class Runner {
 public:
  Runner(std::uint64_t seed, VerifyReport& report) : seed_(seed), report_(report) {}

  void property(const std::string& module, const std::string& name, double tol,
                const std::function<void(Rng&, Worst&)>& body) {
    // Per-property stream: seed mixed with a hash of the property name.
    std::uint64_t h = 1469598103934665603ull;
    for (char c : module + "/" + name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    Rng rng(seed_ ^ h);
    Worst w;
    PropertyResult r{module, name, "", 0.0, tol, false};
    try {
      body(rng, w);
      r.residual = std::isinf(w.residual) && w.residual < 0 ? 0.0 : w.residual;
      r.inputs = w.inputs;
      r.passed = w.residual <= tol;
    } catch (const std::exception& e) {
      r.residual = INFINITY;
      r.inputs = std::string("exception: ") + e.what() + (w.inputs.empty() ? "" : "; last worst: " + w.inputs);
    }
    report_.results.push_back(r);
  }

 private:
  std::uint64_t seed_;
  VerifyReport& report_;
};

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

ComplexVector random_vector(Rng& rng, std::size_t n) {
  ComplexVector x(n);
  for (auto& v : x) v = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
  return x;
}

RealVector random_weight(Rng& rng, std::size_t n, double lo = 0.25, double hi = 4.0) {
  RealVector w(n);
  for (auto& v : w) v = std::exp(uniform(rng, std::log(lo), std::log(hi)));
  return w;
}

cplx random_disk(Rng& rng, double rmax) {
  return std::polar(rmax * std::sqrt(uniform(rng, 0, 1)), uniform(rng, -kPi, kPi));
}

const std::vector<Exponent>& exponent_set() {
  static const std::vector<Exponent> ps{Exponent::finite(1.0), Exponent::finite(4.0 / 3.0), Exponent::finite(2.0),
                                        Exponent::finite(3.0), Exponent::infinity()};
  return ps;
}

Exponent random_exponent(Rng& rng) { return exponent_set()[static_cast<std::size_t>(uniform_int(rng, 0, 4))]; }

double dist(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double sup(std::span<const cplx> a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

DensityVector random_density(Rng& rng, std::size_t n) {
  RealVector f(n);
  for (auto& v : f) v = uniform(rng, 0.0, 1.0);
  if (n > 2 && uniform(rng, 0, 1) < 0.3) f[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1))] = 0.0;
  return DensityVector::normalize(f);
}

ArcPartition random_partition(Rng& rng, int arcs) {
  std::vector<double> cuts;
  for (;;) {
    cuts.clear();
    for (int k = 0; k < arcs; ++k) cuts.push_back(uniform(rng, 0.0, kTwoPi));
    std::sort(cuts.begin(), cuts.end());
    bool ok = true;
    for (int k = 0; k < arcs; ++k) {
      double next = k + 1 < arcs ? cuts[k + 1] : cuts[0] + kTwoPi;
      ok = ok && next - cuts[k] > 0.2;
    }
    if (ok) return ArcPartition(cuts);
  }
}

std::string pstr(Exponent p) { return format_exponent(p); }

// ---------------------------------------------------------------- complex_plane

void complex_plane_suite(Runner& run) {
  const std::string m = "complex_plane";
  run.property(m, "mobius_deviation <= 2|a|", 1e-12, [](Rng& rng, Worst& w) {
    for (int k = 0; k < 1000; ++k) {
      cplx a = random_disk(rng, 0.999);
      w.update(mobius_deviation(a, 10000) - 2 * std::abs(a), fmt("a=%.17g%+.17gi", a.real(), a.imag()));
    }
  });
  run.property(m, "pseudo-hyperbolic symmetry", 1e-12, [](Rng& rng, Worst& w) {
    for (int k = 0; k < 1000; ++k) {
      cplx s = random_disk(rng, 0.99), t = random_disk(rng, 0.99);
      auto ds = DomainPoint::disk(s), dt = DomainPoint::disk(t);
      w.update(std::abs(pseudo_hyperbolic_distance(ds, dt) - pseudo_hyperbolic_distance(dt, ds)), "disk");
      cplx u(uniform(rng, 0.01, 0.99), uniform(rng, -3, 3)), v(uniform(rng, 0.01, 0.99), uniform(rng, -3, 3));
      auto su = DomainPoint::strip(u), sv = DomainPoint::strip(v);
      w.update(std::abs(pseudo_hyperbolic_distance(su, sv) - pseudo_hyperbolic_distance(sv, su)),
               fmt("strip s=%.6g%+.6gi t=%.6g%+.6gi", u.real(), u.imag(), v.real(), v.imag()));
    }
  });
  run.property(m, "harmonic measure additivity", 1e-10, [](Rng& rng, Worst& w) {
    for (int k = 0; k < 200; ++k) {
      double a = uniform(rng, 0, kTwoPi), l1 = uniform(rng, 0.01, 3.0), l2 = uniform(rng, 0.01, 3.0);
      cplx z = random_disk(rng, 0.95);
      Arc A(a, wrap_angle(a + l1)), B(wrap_angle(a + l1), wrap_angle(a + l1 + l2)), AB(a, wrap_angle(a + l1 + l2));
      double r = std::abs(harmonic_measure(z, AB) - harmonic_measure(z, A) - harmonic_measure(z, B));
      w.update(r, fmt("start=%.6g len=(%.6g,%.6g) z=%.6g%+.6gi", a, l1, l2, z.real(), z.imag()));
    }
  });
  run.property(m, "Re herglotz = Poisson integral", 1e-9, [](Rng& rng, Worst& w) {
    for (int k = 0; k < 100; ++k) {
      ArcPartition part = random_partition(rng, 3);
      std::vector<double> vals{uniform(rng, 0, 1), uniform(rng, 0, 1), uniform(rng, 0, 1)};
      PiecewiseConstant alpha(part, vals);
      cplx z = random_disk(rng, 0.9);
      double direct = 0.0;
      // Exact harmonic measure: normalized length of the Moebius image of each arc.
      for (std::size_t j = 0; j < 3; ++j) {
        Arc arc = part.arc(j);
        double a0 = std::arg(disk_mobius(z, std::polar(1.0, arc.start())));
        double a1 = std::arg(disk_mobius(z, std::polar(1.0, arc.start() + arc.length())));
        direct += vals[j] * wrap_angle(a1 - a0) / kTwoPi;
      }
      double r = std::abs(herglotz_transform(alpha.as_function(), z).real() - direct);
      w.update(r, fmt("z=%.6g%+.6gi", z.real(), z.imag()));
    }
  });
  run.property(m, "herglotz derivative = central difference", 1e-6, [](Rng& rng, Worst& w) {
    const double h = 1e-5;
    for (int k = 0; k < 100; ++k) {
      ArcPartition part = random_partition(rng, 2);
      PiecewiseConstant alpha(part, {uniform(rng, 0, 1), uniform(rng, 0, 1)});
      BoundaryFunction f = alpha.as_function();
      cplx z = random_disk(rng, 0.8);
      cplx fd = (herglotz_transform(f, z + h) - herglotz_transform(f, z - h)) / (2 * h);
      w.update(std::abs(herglotz_derivative(f, z) - fd), fmt("z=%.6g%+.6gi", z.real(), z.imag()));
    }
  });
}

// ---------------------------------------------------------------- spaces

void spaces_suite(Runner& run) {
  const std::string m = "spaces";
  run.property(m, "triangle inequality", 1e-12, [](Rng& rng, Worst& w) {
    for (const Exponent& p : exponent_set()) {
      for (std::size_t dim : {1u, 4u, 32u}) {
        SpaceSpec s = SpaceSpec::lp(p);
        for (int k = 0; k < 1000; ++k) {
          ComplexVector x = random_vector(rng, dim), y = random_vector(rng, dim), xy(dim);
          for (std::size_t i = 0; i < dim; ++i) xy[i] = x[i] + y[i];
          double nx = norm(s, x), ny = norm(s, y);
          w.update((norm(s, xy) - nx - ny) / std::max(nx + ny, 1e-300), fmt("p=%s dim=%zu", pstr(p).c_str(), dim));
        }
      }
    }
  });
  run.property(m, "lattice monotonicity", 1e-12, [](Rng& rng, Worst& w) {
    for (const Exponent& p : exponent_set()) {
      SpaceSpec s = SpaceSpec::lp(p);
      for (int k = 0; k < 1000; ++k) {
        std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
        ComplexVector y = random_vector(rng, dim), x(dim);
        for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] * std::polar(uniform(rng, 0, 1), uniform(rng, -kPi, kPi));
        double ny = norm(s, y);
        w.update((norm(s, x) - ny) / std::max(ny, 1e-300), fmt("p=%s dim=%zu", pstr(p).c_str(), dim));
      }
    }
  });
  run.property(m, "weighted norm = norm of w*x", 0.0, [](Rng& rng, Worst& w) {
    for (int k = 0; k < 1000; ++k) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 2000));
      Exponent p = random_exponent(rng);
      RealVector wt = random_weight(rng, dim);
      ComplexVector x = random_vector(rng, dim), wx(dim);
      for (std::size_t i = 0; i < dim; ++i) wx[i] = wt[i] * x[i];
      double a = norm(SpaceSpec::weighted(p, Weight(wt)), x), b = norm(SpaceSpec::lp(p), wx);
      w.update(std::abs(a - b), fmt("p=%s dim=%zu", pstr(p).c_str(), dim));
    }
  });
}

// ---------------------------------------------------------------- calderon

PairScale random_weighted_pair(Rng& rng, std::size_t dim, RealVector& w0, RealVector& w1, Exponent& p) {
  p = random_exponent(rng);
  w0 = random_weight(rng, dim);
  w1 = random_weight(rng, dim);
  return PairScale(SpaceSpec::weighted(p, Weight(w0)), SpaceSpec::weighted(p, Weight(w1)), dim);
}

void calderon_suite(Runner& run) {
  const std::string m = "calderon";
  run.property(m, "optimizer = closed-form l_r norm", 1e-6, [](Rng& rng, Worst& w) {
    for (const Exponent& p0 : exponent_set())
      for (const Exponent& p1 : exponent_set())
        for (int k = 1; k <= 9; ++k) {
          double theta = k / 10.0;
          LpPairClosedForm cf(p0, p1, theta);
          for (int s = 0; s < 100; ++s) {
            std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
            ComplexVector x = random_vector(rng, dim);
            PairScale pair(SpaceSpec::lp(p0), SpaceSpec::lp(p1), dim);
            double exact = cf.norm(x);
            w.update(std::abs(calderon_norm(pair, theta, x) - exact) / exact,
                     fmt("p0=%s p1=%s theta=%.1f dim=%zu", pstr(p0).c_str(), pstr(p1).c_str(), theta, dim));
          }
        }
  });
  run.property(m, "interpolation inequality", 1e-10, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 500; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
      Exponent p0 = random_exponent(rng), p1 = random_exponent(rng);
      SpaceSpec x0 = SpaceSpec::weighted(p0, Weight(random_weight(rng, dim)));
      SpaceSpec x1 = SpaceSpec::weighted(p1, Weight(random_weight(rng, dim)));
      double theta = uniform(rng, 0.05, 0.95);
      ComplexVector x = random_vector(rng, dim);
      double bound = std::pow(norm(x0, x), 1 - theta) * std::pow(norm(x1, x), theta);
      w.update((calderon_norm(PairScale(x0, x1, dim), theta, x) - bound) / bound,
               fmt("p0=%s p1=%s theta=%.6g dim=%zu", pstr(p0).c_str(), pstr(p1).c_str(), theta, dim));
    }
  });
  run.property(m, "derivation homogeneity (real lambda)", 1e-12, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 200; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
      Exponent p0 = random_exponent(rng), p1 = random_exponent(rng);
      PairScale pair(SpaceSpec::lp(p0), SpaceSpec::lp(p1), dim);
      double theta = uniform(rng, 0.05, 0.95), lambda = std::exp(uniform(rng, -3, 3));
      ComplexVector x = random_vector(rng, dim), lx(dim);
      for (std::size_t i = 0; i < dim; ++i) lx[i] = lambda * x[i];
      ComplexVector a = pair_derivation(pair, theta, lx), b = pair_derivation(pair, theta, x);
      for (auto& v : b) v *= lambda;
      w.update(dist(a, b) / std::max(sup(b), lambda * sup(x)),
               fmt("p0=%s p1=%s theta=%.6g lambda=%.6g", pstr(p0).c_str(), pstr(p1).c_str(), theta, lambda));
    }
  });
  run.property(m, "derivation homogeneity (complex lambda)", 1e-9, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 200; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
      Exponent p0 = random_exponent(rng), p1 = random_exponent(rng);
      PairScale pair(SpaceSpec::lp(p0), SpaceSpec::lp(p1), dim);
      double theta = uniform(rng, 0.05, 0.95);
      cplx lambda = std::polar(std::exp(uniform(rng, -3, 3)), uniform(rng, -kPi, kPi));
      ComplexVector x = random_vector(rng, dim), lx(dim);
      for (std::size_t i = 0; i < dim; ++i) lx[i] = lambda * x[i];
      ComplexVector a = pair_derivation(pair, theta, lx), b = pair_derivation(pair, theta, x);
      for (auto& v : b) v *= lambda;
      w.update(dist(a, b) / std::max(sup(b), std::abs(lambda) * sup(x)),
               fmt("p0=%s p1=%s theta=%.6g", pstr(p0).c_str(), pstr(p1).c_str(), theta));
    }
  });
  run.property(m, "weighted derivation = log(w0/w1) x", 1e-8, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 200; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
      RealVector w0, w1;
      Exponent p = Exponent::finite(2.0);
      PairScale pair = random_weighted_pair(rng, dim, w0, w1, p);
      double theta = uniform(rng, 0.05, 0.95);
      ComplexVector x = random_vector(rng, dim), expect(dim);
      for (std::size_t i = 0; i < dim; ++i) expect[i] = std::log(w0[i] / w1[i]) * x[i];
      w.update(dist(pair_derivation(pair, theta, x), expect) / sup(x),
               fmt("p=%s theta=%.6g dim=%zu", pstr(p).c_str(), theta, dim));
    }
  });
  run.property(m, "two-block product = calderon norm", 1e-8, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 200; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
      SpaceSpec x0 = SpaceSpec::weighted(random_exponent(rng), Weight(random_weight(rng, dim)));
      SpaceSpec x1 = SpaceSpec::weighted(random_exponent(rng), Weight(random_weight(rng, dim)));
      double theta = uniform(rng, 0.05, 0.95);
      ComplexVector x = random_vector(rng, dim);
      double a = multi_product_norm({x0, x1}, {1 - theta, theta}, x);
      double b = calderon_norm(PairScale(x0, x1, dim), theta, x);
      w.update(std::abs(a - b) / b, fmt("p0=%s p1=%s theta=%.6g dim=%zu", pstr(x0.p).c_str(), pstr(x1.p).c_str(),
                                         theta, dim));
    }
  });
}

// ---------------------------------------------------------------- derivations

void derivations_suite(Runner& run) {
  const std::string m = "derivations";
  run.property(m, "centralizer homogeneity and eval(0) = 0", 1e-9, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 100; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 16));
      std::vector<CentralizerHandle> handles{
          CentralizerHandle::kalton_peck(uniform(rng, 1, 4), {uniform(rng, -2, 2), uniform(rng, -2, 2)}),
          CentralizerHandle::multiplication(random_vector(rng, dim)),
          CentralizerHandle::pair_induced(
              PairScale(SpaceSpec::lp(random_exponent(rng)), SpaceSpec::lp(random_exponent(rng)), dim),
              uniform(rng, 0.1, 0.9)),
          CentralizerHandle::zero()};
      cplx lambda = std::polar(std::exp(uniform(rng, -2, 2)), uniform(rng, -kPi, kPi));
      ComplexVector x = random_vector(rng, dim), lx(dim);
      for (std::size_t i = 0; i < dim; ++i) lx[i] = lambda * x[i];
      for (const auto& h : handles) {
        ComplexVector a = h(lx), b = h(x);
        for (auto& v : b) v *= lambda;
        w.update(dist(a, b) / (std::abs(lambda) * std::max(sup(x), sup(h(x)))), h.label());
        w.update(sup(h(ComplexVector(dim, 0.0))), h.label() + " at 0");
      }
    }
  });
  run.property(m, "Kalton-Peck centralizer constant stable in dim", 0.10, [](Rng& rng, Worst& w) {
    for (double r : {1.5, 2.0, 3.0}) {
      SpaceSpec s = SpaceSpec::lp(Exponent::finite(r));
      auto h = CentralizerHandle::kalton_peck(r);
      std::uint64_t seed = rng();
      double c8 = estimate_centralizer_constant(h, s, 8, 1000, seed).constant;
      for (std::size_t d : {16u, 32u, 64u}) {
        double c = estimate_centralizer_constant(h, s, d, 1000, seed).constant;
        w.update(std::abs(c / c8 - 1.0), fmt("r=%.6g dim=%zu c=%.6g c8=%.6g", r, d, c, c8));
      }
    }
  });
  run.property(m, "flat-vector growth (log n)/2", 1e-10, [](Rng&, Worst& w) {
    std::vector<std::size_t> dims;
    for (std::size_t n = 2; n <= (1u << 14); n *= 2) dims.push_back(n);
    ProbeOptions po;
    po.flat_only = true;
    ProbeReport rep = boundedness_probe(CentralizerHandle::kalton_peck(2.0), SpaceSpec::lp(Exponent::finite(2.0)), dims, po);
    for (const auto& row : rep.rows)
      w.update(std::abs(row.flat_ratio - std::log(static_cast<double>(row.dim)) / 2), fmt("n=%zu", row.dim));
  });
  run.property(m, "pair derivation (l_inf, l_1) = KP(1/theta, 1/theta)", 1e-6, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 100; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
      double theta = uniform(rng, 0.05, 0.95), r = 1.0 / theta;
      PairScale pair(SpaceSpec::lp(Exponent::infinity()), SpaceSpec::lp(Exponent::finite(1.0)), dim);
      ComplexVector x = random_vector(rng, dim);
      ComplexVector a = pair_derivation(pair, theta, x), b = kalton_peck(r, r, x);
      w.update(dist(a, b) / std::max(sup(b), sup(x)), fmt("theta=%.6g dim=%zu", theta, dim));
    }
  });
  run.property(m, "linear flow isometry", 1e-8, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 100; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
      RealVector w0, w1;
      Exponent p = Exponent::finite(2.0);
      PairScale pair = random_weighted_pair(rng, dim, w0, w1, p);
      ComplexVector g(dim);
      for (std::size_t i = 0; i < dim; ++i) g[i] = std::log(w0[i] / w1[i]);
      double t = uniform(rng, 0, 1);
      ComplexVector x = random_vector(rng, dim);
      w.update(linear_flow_check(g, pair, t, x) / norm(pair.x0, x),
               fmt("p=%s s=%.6g dim=%zu", pstr(p).c_str(), t, dim));
    }
  });
}

// ---------------------------------------------------------------- indicators

void indicators_suite(Runner& run) {
  const std::string m = "indicators";
  const IndicatorOrientation& orient = indicator_orientation();
  run.property(m, "numeric indicator = closed form", 1e-9, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 200; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
      Exponent p = random_exponent(rng);
      DensityVector f = random_density(rng, dim);
      w.update(std::abs(indicator_numeric(SpaceSpec::lp(p), f) - indicator_lp(p, f)),
               fmt("p=%s dim=%zu", pstr(p).c_str(), dim));
    }
  });
  run.property(m, "pair identity with pinned sign", 1e-6, [&orient](Rng& rng, Worst& w) {
    for (const Exponent& p0 : exponent_set())
      for (const Exponent& p1 : exponent_set()) {
        for (int s = 0; s < 20; ++s) {
          double theta = uniform(rng, 0.1, 0.9);
          Exponent r = LpPairClosedForm(p0, p1, theta).r();
          if (r.is_infinite() || r.value() <= 1.0) continue;
          std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
          DensityVector f = random_density(rng, dim);
          PairScale pair(SpaceSpec::lp(p0), SpaceSpec::lp(p1), dim);
          double lhs = phi_omega(CentralizerHandle::pair_induced(pair, theta), r, f).real();
          double rhs = indicator_numeric(pair.x0, f) - indicator_numeric(pair.x1, f);
          w.update(std::abs(lhs - orient.sigma * rhs),
                   fmt("p0=%s p1=%s theta=%.6g dim=%zu sigma=%d", pstr(p0).c_str(), pstr(p1).c_str(), theta, dim,
                       orient.sigma));
        }
      }
  });
  run.property(m, "family Poisson identity", 1e-6, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 60; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 12));
      int arcs = uniform_int(rng, 2, 4);
      ArcPartition part = random_partition(rng, arcs);
      std::shared_ptr<const FamilySpec> fam;
      if (s % 2 == 0) {
        std::vector<Weight> ws;
        for (int j = 0; j < arcs; ++j) ws.emplace_back(random_weight(rng, dim));
        fam = std::make_shared<const FamilySpec>(FamilySpec::arcs_weighted(SpaceSpec::lp(random_exponent(rng)), part, ws));
      } else {
        std::vector<Exponent> ex;
        for (int j = 0; j < arcs; ++j) ex.push_back(random_exponent(rng));
        fam = std::make_shared<const FamilySpec>(FamilySpec::arcs_lp(part, ex));
      }
      FamilyPoint pt(fam, random_disk(rng, 0.8));
      DensityVector f = random_density(rng, dim);
      double lhs = indicator_numeric(*interpolated_space(pt, dim), f);
      w.update(std::abs(lhs - poisson_indicator_average(pt, f)),
               fmt("%s arcs=%d dim=%zu z0=%.6g%+.6gi", fam->kind_name(), arcs, dim, pt.z0.real(), pt.z0.imag()));
    }
  });
  run.property(m, "family centralizer identity with pinned constant", 1e-6, [&orient](Rng& rng, Worst& w) {
    for (int s = 0; s < 50; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 12));
      int arcs = uniform_int(rng, 2, 4);
      std::vector<Weight> ws;
      for (int j = 0; j < arcs; ++j) ws.emplace_back(random_weight(rng, dim));
      Exponent p = uniform_int(rng, 0, 1) ? Exponent::finite(2.0) : Exponent::finite(3.0);
      auto fam = std::make_shared<const FamilySpec>(
          FamilySpec::arcs_weighted(SpaceSpec::lp(p), random_partition(rng, arcs), ws));
      DensityVector f = random_density(rng, dim);
      cplx lhs = phi_omega(CentralizerHandle::family_induced(fam, 0.0), p, f);
      cplx rhs = orient.kappa * boundary_indicator_moment(*fam, f);
      w.update(std::abs(lhs - rhs), fmt("arcs=%d dim=%zu p=%s kappa=%.6g", arcs, dim, pstr(p).c_str(), orient.kappa));
    }
  });
  run.property(m, "weighted shift rule", 1e-10, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 200; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 32));
      Exponent p = random_exponent(rng);
      RealVector wt = random_weight(rng, dim);
      DensityVector f = random_density(rng, dim);
      double shift = 0.0;
      for (std::size_t i = 0; i < dim; ++i) shift += f.entries()[i] * std::log(wt[i]);
      double a = indicator_numeric(SpaceSpec::weighted(p, Weight(wt)), f);
      double b = indicator_numeric(SpaceSpec::lp(p), f) - shift;
      w.update(std::abs(a - b), fmt("p=%s dim=%zu", pstr(p).c_str(), dim));
    }
  });
}

// ---------------------------------------------------------------- families

void families_suite(Runner& run) {
  const std::string m = "families";
  run.property(m, "two-arc family = weighted pair", 1e-8, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 100; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 16));
      double theta = uniform(rng, 0.05, 0.95);
      Exponent p = random_exponent(rng);
      RealVector w0 = random_weight(rng, dim), w1 = random_weight(rng, dim);
      double c = uniform(rng, 0, kTwoPi * theta);
      // arc 0 carries mass 1 - theta seen from 0
      ArcPartition part({c, c + kTwoPi * (1 - theta)});
      FamilyPoint pt(FamilySpec::arcs_weighted(SpaceSpec::lp(p), part, {Weight(w0), Weight(w1)}), 0.0);
      ComplexVector x = random_vector(rng, dim);
      PairScale pair(SpaceSpec::weighted(p, Weight(w0)), SpaceSpec::weighted(p, Weight(w1)), dim);
      double b = calderon_norm(pair, theta, x);
      w.update(std::abs(family_norm(pt, x) - b) / b, fmt("p=%s theta=%.6g dim=%zu", pstr(p).c_str(), theta, dim));
    }
  });
  run.property(m, "weighted family closed form = product optimizer", 1e-6, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 60; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 16));
      int arcs = uniform_int(rng, 2, 4);
      Exponent p = random_exponent(rng);
      ArcPartition part = random_partition(rng, arcs);
      std::vector<Weight> ws;
      std::vector<SpaceSpec> specs;
      for (int j = 0; j < arcs; ++j) {
        ws.emplace_back(random_weight(rng, dim));
        specs.push_back(SpaceSpec::weighted(p, ws.back()));
      }
      FamilyPoint pt(FamilySpec::arcs_weighted(SpaceSpec::lp(p), part, ws), random_disk(rng, 0.8));
      ComplexVector x = random_vector(rng, dim);
      double b = multi_product_norm(specs, arc_measures(part, pt.z0, pt.family->quadrature()), x);
      w.update(std::abs(family_norm(pt, x) - b) / b, fmt("p=%s arcs=%d dim=%zu", pstr(p).c_str(), arcs, dim));
    }
  });
  run.property(m, "sum of psi' vanishes; weights scale-invariant", 1e-8, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 50; ++s) {
      int arcs = uniform_int(rng, 2, 5);
      ArcPartition part = random_partition(rng, arcs);
      cplx z0 = random_disk(rng, 0.8);
      cplx sum = 0.0;
      for (std::size_t j = 0; j < part.size(); ++j) sum += psi_arc(part.arc(j), z0).derivative(z0);
      w.update(std::abs(sum), fmt("arcs=%d z0=%.6g%+.6gi", arcs, z0.real(), z0.imag()));
      std::size_t dim = 4;
      std::vector<Weight> ws, scaled;
      double c = std::exp(uniform(rng, -2, 2));
      for (int j = 0; j < arcs; ++j) {
        RealVector v = random_weight(rng, dim), cv = v;
        for (auto& e : cv) e *= c;
        ws.emplace_back(v);
        scaled.emplace_back(cv);
      }
      SpaceSpec base = SpaceSpec::lp(Exponent::finite(2.0));
      ComplexVector x = random_vector(rng, dim);
      ComplexVector a = family_derivation(FamilyPoint(FamilySpec::arcs_weighted(base, part, ws), z0), x);
      ComplexVector b = family_derivation(FamilyPoint(FamilySpec::arcs_weighted(base, part, scaled), z0), x);
      w.update(dist(a, b) / sup(x), fmt("arcs=%d c=%.6g", arcs, c));
    }
  });
  run.property(m, "variable exponent: Omega_0 = 0 exactly", 0.0, [](Rng& rng, Worst& w) {
    FamilyPoint pt(FamilySpec::variable_exponent(RationalFunction::parse("z^2+2")), 0.0);
    for (int s = 0; s < 100; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 1024));
      w.update(sup(family_derivation(pt, random_vector(rng, dim))), fmt("dim=%zu", dim));
    }
  });
  run.property(m, "variable exponent: flat growth slope at z0=0.5", 0.05, [](Rng&, Worst& w) {
    auto fam = std::make_shared<const FamilySpec>(FamilySpec::variable_exponent(RationalFunction::parse("z^2+2")));
    const double z0 = 0.5;
    const auto& v = std::get<family::VariableExponent>(fam->kind());
    double p = variable_exponent_at(v, z0).value();
    double theory = std::abs(v.alpha.derivative(z0) / v.alpha(z0)) / p;
    std::vector<std::size_t> dims;
    for (std::size_t n = 2; n <= (1u << 14); n *= 2) dims.push_back(n);
    ProbeOptions po;
    po.flat_only = true;
    FamilyPoint pt(fam, z0);
    ProbeReport rep = boundedness_probe(CentralizerHandle::family_induced(fam, z0),
                                        [&](std::size_t n) { return *interpolated_space(pt, n); }, dims, po);
    w.update(std::abs(rep.flat_slope_vs_log_dim / theory - 1.0),
             fmt("slope=%.12g theory=%.12g", rep.flat_slope_vs_log_dim, theory));
  });
  run.property(m, "flat diagonal k=1: Omega_z = D for every z", 0.0, [](Rng& rng, Worst& w) {
    auto fam = std::make_shared<const FamilySpec>(FamilySpec::flat_diagonal(1, DiagonalRule{}));
    for (int s = 0; s < 100; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 256));
      ComplexVector x = random_vector(rng, dim);
      ComplexVector a = family_derivation(FamilyPoint(fam, random_disk(rng, 0.95)), x);
      ComplexVector b = family_derivation(FamilyPoint(fam, 0.0), x);
      w.update(dist(a, b), fmt("dim=%zu", dim));
    }
  });
  run.property(m, "three-arc determinant = sine product / pi^2", 1e-10, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 200; ++s) {
      std::array<double, 3> c{uniform(rng, 0, kTwoPi), uniform(rng, 0, kTwoPi), uniform(rng, 0, kTwoPi)};
      std::sort(c.begin(), c.end());
      if (s % 4 == 0) c[2] = c[1];  // degenerate cases must give 0 as well
      double det = three_arc_determinant(c);
      w.update(std::abs(std::abs(det) - std::abs(three_arc_sine_product(c)) / (kPi * kPi)),
               fmt("cuts=(%.6g,%.6g,%.6g)", c[0], c[1], c[2]));
    }
  });
  run.property(m, "weights_from_multiplier round trip", 1e-6, [](Rng& rng, Worst& w) {
    for (int s = 0; s < 50; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 16));
      ArcPartition part = random_partition(rng, 3);
      ComplexVector f(dim);
      for (auto& v : f) v = uniform(rng, -2, 2);
      SpaceSpec base = SpaceSpec::lp(random_exponent(rng));
      FamilyPoint pt(FamilySpec::arcs_weighted(base, part, weights_from_multiplier(f, part)), 0.0);
      ComplexVector x = random_vector(rng, dim), fx(dim);
      for (std::size_t i = 0; i < dim; ++i) fx[i] = f[i] * x[i];
      w.update(std::abs(family_norm(pt, x) - norm(base, x)) / norm(base, x), fmt("norm clause dim=%zu", dim));
      w.update(dist(family_derivation(pt, x), fx) / sup(x), fmt("derivation clause dim=%zu", dim));
    }
  });
}

// ---------------------------------------------------------------- scale_harness

void scale_suite(Runner& run) {
  const std::string m = "scale_harness";
  std::vector<double> grid;
  for (int k = 1; k <= 19; ++k) grid.push_back(k / 20.0);
  run.property(m, "log-convexity", 1e-9, [&](Rng& rng, Worst& w) {
    for (int s = 0; s < 30; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 16));
      SpaceSpec x0 = SpaceSpec::weighted(random_exponent(rng), Weight(random_weight(rng, dim)));
      SpaceSpec x1 = SpaceSpec::weighted(random_exponent(rng), Weight(random_weight(rng, dim)));
      ComplexVector x = random_vector(rng, dim);
      for (const auto& smp : scale_sweep(PairScale(x0, x1, dim), x, grid))
        w.update(-smp.logconv_residual, fmt("p0=%s p1=%s t=%.6g dim=%zu", pstr(x0.p).c_str(), pstr(x1.p).c_str(),
                                             smp.t, dim));
    }
  });
  run.property(m, "derivative estimate on closed-form pairs", 1e-9, [&](Rng& rng, Worst& w) {
    for (int s = 0; s < 30; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 16));
      PairScale pair = s % 2 == 0
                           ? PairScale(SpaceSpec::lp(random_exponent(rng)), SpaceSpec::lp(random_exponent(rng)), dim)
                           : [&] {
                               RealVector w0, w1;
                               Exponent p = Exponent::finite(2.0);
                               return random_weighted_pair(rng, dim, w0, w1, p);
                             }();
      ComplexVector x = random_vector(rng, dim);
      SweepOptions so;
      for (const auto& smp : scale_sweep(pair, x, grid, so)) {
        double fd = std::max(std::abs(smp.fd_derivative_left), std::abs(smp.fd_derivative_right));
        w.update((fd - smp.omega_norm - smp.fd_error_constant * so.fd_step) / smp.norm,
                 fmt("p0=%s p1=%s t=%.6g", pstr(pair.x0.p).c_str(), pstr(pair.x1.p).c_str(), smp.t));
      }
    }
  });
  run.property(m, "derivative estimate on optimizer-only pairs", 1e-3, [&](Rng& rng, Worst& w) {
    for (int s = 0; s < 20; ++s) {
      std::size_t dim = static_cast<std::size_t>(uniform_int(rng, 1, 12));
      SpaceSpec x0 = SpaceSpec::weighted(random_exponent(rng), Weight(random_weight(rng, dim)));
      SpaceSpec x1 = SpaceSpec::weighted(random_exponent(rng), Weight(random_weight(rng, dim)));
      ComplexVector x = random_vector(rng, dim);
      SweepOptions so;
      for (const auto& smp : scale_sweep(PairScale(x0, x1, dim), x, grid, so)) {
        double fd = std::max(std::abs(smp.fd_derivative_left), std::abs(smp.fd_derivative_right));
        w.update((fd - smp.omega_norm - smp.fd_error_constant * so.fd_step) / smp.norm,
                 fmt("p0=%s p1=%s t=%.6g", pstr(x0.p).c_str(), pstr(x1.p).c_str(), smp.t));
      }
    }
  });
  run.property(m, "equality cases of the derivative estimate", 1e-4, [&](Rng&, Worst& w) {
    PairScale kp(SpaceSpec::lp(Exponent::infinity()), SpaceSpec::lp(Exponent::finite(1.0)), 2);
    ComplexVector ones{1.0, 1.0};
    PairScale wp(SpaceSpec::lp(Exponent::finite(2.0)), SpaceSpec::weighted(Exponent::finite(2.0), Weight({4.0, 1.0})), 2);
    ComplexVector e1{1.0, 0.0};
    for (auto [pair, x, label] : {std::tuple{kp, ones, "(l_inf,l_1) x=(1,1)"}, std::tuple{wp, e1, "w1=(4,1) x=e1"}}) {
      for (const auto& smp : scale_sweep(pair, x, grid)) {
        double fd = 0.5 * (std::abs(smp.fd_derivative_left) + std::abs(smp.fd_derivative_right));
        w.update(std::abs(fd - smp.omega_norm) / smp.omega_norm, fmt("%s t=%.6g", label, smp.t));
      }
    }
  });
  run.property(m, "sweep determinism", 0.0, [&](Rng& rng, Worst& w) {
    std::size_t dim = 8;
    PairScale pair(SpaceSpec::lp(Exponent::finite(1.5)), SpaceSpec::weighted(Exponent::finite(3.0), Weight(random_weight(rng, dim))), dim);
    ComplexVector x = random_vector(rng, dim);
    std::string a = sweep_table(scale_sweep(pair, x, grid)).to_csv();
    std::string b = sweep_table(scale_sweep(pair, x, grid)).to_csv();
    w.update(a == b ? 0.0 : 1.0, "repeated sweep bytes");
  });
}

// ---------------------------------------------------------------- lab_cli

void cli_suite(Runner& run) {
  const std::string m = "lab_cli";
  run.property(m, "family serialization round trip", 0.0, [](Rng& rng, Worst& w) {
    ArcPartition thirds({0.0, kTwoPi / 3, 2 * kTwoPi / 3});
    std::vector<FamilySpec> specs{
        FamilySpec::arcs_weighted(SpaceSpec::lp(Exponent::finite(2.0)), thirds,
                                  {Weight({std::exp(1.0), 1.0}), Weight({1.0, 1.0}), Weight({1.0, 1.0})}),
        FamilySpec::arcs_lp(random_partition(rng, 4), {Exponent::finite(1.0), Exponent::finite(4.0 / 3),
                                                       Exponent::finite(2.5), Exponent::infinity()}),
        FamilySpec::variable_exponent(RationalFunction::parse("z^2+2"), 3.0),
        FamilySpec::flat_diagonal(2, DiagonalRule{}),
        FamilySpec::reiterated_pair(
            PairScale(SpaceSpec::lp(Exponent::infinity()), SpaceSpec::lp(Exponent::finite(1.0)), 3),
            PiecewiseConstant(ArcPartition({0.0, kPi / 2, kPi, 3 * kPi / 2}), {1, 0, 1, 0}))};
    for (const auto& s : specs) {
      std::string a = serialize_family(s);
      std::string b = serialize_family(parse_family(a));
      w.update(a == b ? 0.0 : 1.0, s.kind_name());
    }
  });
  run.property(m, "sweep CSV header", 0.0, [](Rng&, Worst& w) {
    std::string head = sweep_table({}).to_csv();
    w.update(head == "t,norm,fd_left,fd_right,omega_norm,logconv_residual\n" ? 0.0 : 1.0, head);
  });
}

}  // namespace

VerifyReport run_verify(const std::string& suite, std::uint64_t seed) {
  const auto& names = verify_suites();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
    throw UsageError("verify: unknown suite '" + suite + "'");
  VerifyReport report;
  report.seed = seed;
  Runner run(seed, report);
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("complex_plane")) complex_plane_suite(run);
  if (want("spaces")) spaces_suite(run);
  if (want("calderon")) calderon_suite(run);
  if (want("derivations")) derivations_suite(run);
  if (want("indicators")) indicators_suite(run);
  if (want("families")) families_suite(run);
  if (want("scale_harness")) scale_suite(run);
  if (want("lab_cli")) cli_suite(run);
  return report;
}

}  // namespace cilab
