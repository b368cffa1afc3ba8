#include "cilab/derivations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "cilab/complex_plane.hpp"
#include "cilab/errors.hpp"
#include "parallel.hpp"

namespace cilab {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw UsageError(std::string(what) + ": dimension mismatch");
}

double sup_abs(std::span<const cplx> a) {
  double m = 0.0;
  for (const cplx& v : a) m = std::max(m, std::abs(v));
  return m;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

CentralizerHandle::CentralizerHandle(Eval eval, CentralizerKind kind, bool linear, std::string label)
    : eval_(std::move(eval)), kind_(std::move(kind)), linear_(linear), label_(std::move(label)) {
  if (!eval_) throw UsageError("centralizer: empty evaluator");
}

ComplexVector kalton_peck(double r, cplx scale, std::span<const cplx> x) {
  if (!(r >= 1.0) || std::isinf(r)) throw UsageError("kalton_peck: r must lie in [1, inf)");
  require_finite(x, "kalton_peck");
  RealVector moduli(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) moduli[i] = std::abs(x[i]);
  double n = lp_norm_of_moduli(Exponent::finite(r), moduli);
  ComplexVector out(x.size(), cplx(0.0));
  if (n == 0.0) return out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (moduli[i] == 0.0) continue;
    out[i] = scale * x[i] * std::log(moduli[i] / n);
  }
  return out;
}

CentralizerHandle CentralizerHandle::kalton_peck(double r, cplx scale) {
  if (!(r >= 1.0) || std::isinf(r)) throw UsageError("kalton_peck: r must lie in [1, inf)");
  std::string label = "kalton-peck(r=" + format_double(r) + ")";
  return CentralizerHandle([r, scale](std::span<const cplx> x) { return cilab::kalton_peck(r, scale, x); },
                           centralizer_kind::KaltonPeck{r, scale}, false, label);
}

CentralizerHandle CentralizerHandle::multiplication(ComplexVector g) {
  require_finite(g, "multiplication centralizer");
  auto eval = [g](std::span<const cplx> x) {
    require_same_dim(x.size(), g.size(), "multiplication centralizer");
    ComplexVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = g[i] * x[i];
    return out;
  };
  return CentralizerHandle(eval, centralizer_kind::Multiplication{std::move(g)}, true, "multiplication");
}

CentralizerHandle CentralizerHandle::pair_induced(PairScale pair, double theta, double tol) {
  if (!(theta > 0.0 && theta < 1.0)) throw UsageError("pair centralizer: theta must lie in (0, 1)");
  auto eval = [pair, theta, tol](std::span<const cplx> x) { return pair_derivation(pair, theta, x, tol); };
  return CentralizerHandle(eval, centralizer_kind::PairInduced{theta}, false,
                           "pair(theta=" + format_double(theta) + ")");
}

CentralizerHandle CentralizerHandle::zero() {
  return CentralizerHandle([](std::span<const cplx> x) { return ComplexVector(x.size(), cplx(0.0)); },
                           centralizer_kind::Zero{}, true, "zero");
}

double twisted_quasinorm(const CentralizerHandle& omega, const SpaceSpec& space, const TwistedVector& v) {
  require_same_dim(v.f.size(), v.x.size(), "twisted_quasinorm");
  ComplexVector ox = omega(v.x);
  ComplexVector diff(v.f.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = v.f[i] - ox[i];
  return norm(space, diff) + norm(space, v.x);
}

double centralizer_defect(const CentralizerHandle& omega, const SpaceSpec& space, std::span<const cplx> a,
                          std::span<const cplx> x) {
  require_same_dim(a.size(), x.size(), "centralizer_defect");
  ComplexVector ax(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) ax[i] = a[i] * x[i];
  ComplexVector lhs = omega(ax);
  ComplexVector ox = omega(x);
  for (std::size_t i = 0; i < x.size(); ++i) lhs[i] -= a[i] * ox[i];
  return norm(space, lhs);
}

CentralizerConstantEstimate estimate_centralizer_constant(const CentralizerHandle& omega, const SpaceSpec& space,
                                                          std::size_t dim, int samples, std::uint64_t seed) {
  if (dim == 0 || samples <= 0) throw UsageError("centralizer constant: need dim > 0 and samples > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_int_distribution<std::size_t> subset_size(1, dim);

  // Draw every sample up front so the values do not depend on evaluation order.
  std::vector<std::pair<ComplexVector, ComplexVector>> draws(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    ComplexVector a(dim), x(dim);
    switch (s % 3) {
      case 0:  // random complex multiplier and vector
        for (std::size_t i = 0; i < dim; ++i) {
          a[i] = std::polar(unit(rng), angle(rng));
          x[i] = std::polar(unit(rng), angle(rng));
        }
        break;
      case 1: {  // indicator multiplier on a flat vector
        std::size_t k = subset_size(rng);
        for (std::size_t i = 0; i < dim; ++i) {
          a[i] = i < k ? 1.0 : 0.0;
          x[i] = 1.0;
        }
        std::shuffle(a.begin(), a.end(), rng);
        break;
      }
      default: {  // indicator multiplier on a random vector
        std::size_t k = subset_size(rng);
        for (std::size_t i = 0; i < dim; ++i) {
          a[i] = i < k ? 1.0 : 0.0;
          x[i] = std::polar(0.05 + unit(rng), angle(rng));
        }
        std::shuffle(a.begin(), a.end(), rng);
        break;
      }
    }
    if (sup_abs(a) == 0.0) a[0] = 1.0;
    draws[static_cast<std::size_t>(s)] = {std::move(a), std::move(x)};
  }

  std::vector<double> ratios(draws.size(), 0.0);
  detail::parallel_for(draws.size(), [&](std::size_t s) {
    const auto& [a, x] = draws[s];
    double denom = sup_abs(a) * norm(space, x);
    if (denom > 0.0) ratios[s] = centralizer_defect(omega, space, a, x) / denom;
  });
  CentralizerConstantEstimate est;
  est.seed = seed;
  est.samples = samples;
  for (double r : ratios) est.constant = std::max(est.constant, r);
  return est;
}

const char* to_string(SampleKind k) {
  switch (k) {
    case SampleKind::Flat: return "flat";
    case SampleKind::Spike: return "spike";
    case SampleKind::Geometric: return "geometric";
    case SampleKind::Rademacher: return "rademacher";
  }
  return "unknown";
}

double fit_log_slope(const std::vector<std::size_t>& dims, const std::vector<double>& values) {
  if (dims.size() != values.size()) throw UsageError("fit_log_slope: size mismatch");
  if (dims.size() < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    mx += std::log(static_cast<double>(dims[i]));
    my += values[i];
  }
  mx /= static_cast<double>(dims.size());
  my /= static_cast<double>(dims.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    double dx = std::log(static_cast<double>(dims[i])) - mx;
    sxx += dx * dx;
    sxy += dx * (values[i] - my);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

namespace {

struct Sample {
  SampleKind kind;
  ComplexVector x;
};

std::vector<Sample> probe_samples(std::size_t n, const ProbeOptions& opts, std::mt19937_64& rng) {
  std::vector<Sample> out;
  out.push_back({SampleKind::Flat, ComplexVector(n, cplx(1.0))});
  if (opts.flat_only) return out;
  ComplexVector e(n, cplx(0.0));
  e[0] = 1.0;
  out.push_back({SampleKind::Spike, e});
  e[0] = 0.0;
  e[n - 1] = 1.0;
  out.push_back({SampleKind::Spike, e});
  for (double ratio : {0.5, 0.9}) {
    ComplexVector g(n);
    double v = 1.0;
    for (std::size_t i = 0; i < n; ++i, v *= ratio) g[i] = v;
    out.push_back({SampleKind::Geometric, g});
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (int s = 0; s < opts.random_samples; ++s) {
    ComplexVector r(n);
    bool plain = s % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      double sign = coin(rng) ? 1.0 : -1.0;
      r[i] = plain ? sign : sign * (0.05 + unit(rng));
    }
    out.push_back({SampleKind::Rademacher, r});
  }
  return out;
}

}  // namespace

ProbeReport boundedness_probe(const CentralizerHandle& omega, const std::function<SpaceSpec(std::size_t)>& space_at,
                              const std::vector<std::size_t>& dims, const ProbeOptions& opts) {
  if (dims.empty()) throw UsageError("boundedness_probe: empty dimension ladder");
  for (std::size_t d : dims)
    if (d == 0) throw UsageError("boundedness_probe: dimensions must be positive");
  ProbeReport report;
  report.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  for (std::size_t n : dims) {
    SpaceSpec space = space_at(n);
    std::vector<Sample> samples = probe_samples(n, opts, rng);
    std::vector<double> ratios(samples.size(), 0.0);
    detail::parallel_for(samples.size(), [&](std::size_t s) {
      double nx = norm(space, samples[s].x);
      if (nx > 0.0) ratios[s] = norm(space, omega(samples[s].x)) / nx;
    });
    ProbeRow row;
    row.dim = n;
    row.flat_ratio = ratios[0];
    for (std::size_t s = 0; s < samples.size(); ++s) {
      if (ratios[s] > row.max_ratio) {
        row.max_ratio = ratios[s];
        row.argmax = samples[s].kind;
      }
    }
    report.rows.push_back(row);
  }
  std::vector<double> maxes, flats;
  for (const auto& r : report.rows) {
    maxes.push_back(r.max_ratio);
    flats.push_back(r.flat_ratio);
  }
  report.slope_vs_log_dim = fit_log_slope(dims, maxes);
  report.flat_slope_vs_log_dim = fit_log_slope(dims, flats);
  return report;
}

ProbeReport boundedness_probe(const CentralizerHandle& omega, const SpaceSpec& space,
                              const std::vector<std::size_t>& dims, const ProbeOptions& opts) {
  if (space.weight) {
    for (std::size_t d : dims)
      if (d != space.weight->size()) throw UsageError("boundedness_probe: weight size differs from ladder dimension");
  }
  return boundedness_probe(omega, [space](std::size_t) { return space; }, dims, opts);
}

TrivialityProbe triviality_probe(const CentralizerHandle& omega, const SpaceSpec& space,
                                 const std::vector<std::size_t>& dims, const ProbeOptions& opts) {
  if (dims.empty()) throw UsageError("triviality_probe: empty dimension ladder");
  std::size_t nmax = *std::max_element(dims.begin(), dims.end());
  ComplexVector g(nmax);
  for (std::size_t i = 0; i < nmax; ++i) {
    ComplexVector e(nmax, cplx(0.0));
    e[i] = 1.0;
    g[i] = omega(e)[i];
  }
  // The candidate is fitted at the largest dimension; smaller rungs embed as initial segments.
  auto residual_eval = [omega, g](std::span<const cplx> x) {
    ComplexVector padded(g.size(), cplx(0.0));
    std::copy(x.begin(), x.end(), padded.begin());
    ComplexVector ox = omega(padded);
    ComplexVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = ox[i] - g[i] * x[i];
    return out;
  };
  CentralizerHandle residual(residual_eval, centralizer_kind::Zero{}, omega.linear(), omega.label() + " - multiplication");
  TrivialityProbe out;
  out.multiplier = g;
  auto space_at = [space](std::size_t n) {
    if (!space.weight) return space;
    RealVector w(space.weight->entries().begin(), space.weight->entries().begin() + static_cast<long>(n));
    return SpaceSpec::weighted(space.p, Weight(w));
  };
  if (space.weight && space.weight->size() < nmax)
    throw UsageError("triviality_probe: weight shorter than the largest dimension");
  out.residual = boundedness_probe(residual, space_at, dims, opts);
  return out;
}

double linear_flow_check(std::span<const cplx> g, const PairScale& pair, double s, std::span<const cplx> x,
                         double tol) {
  if (!(s >= 0.0 && s <= 1.0)) throw UsageError("linear_flow_check: s must lie in [0, 1]");
  require_same_dim(g.size(), pair.dim, "linear_flow_check");
  require_same_dim(x.size(), pair.dim, "linear_flow_check");
  double lhs;
  if (s == 0.0) {
    lhs = norm(pair.x0, x);
  } else if (s == 1.0) {
    lhs = norm(pair.x1, x);
  } else {
    lhs = calderon_norm(pair, s, x, tol);
  }
  ComplexVector flowed(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) flowed[i] = std::exp(-s * g[i]) * x[i];
  return std::abs(lhs - norm(pair.x0, flowed));
}

}  // namespace cilab
