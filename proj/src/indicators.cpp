#include "cilab/indicators.hpp"

#include <cmath>
#include <mutex>

#include "cilab/errors.hpp"
#include "cilab/families.hpp"

namespace cilab {

DensityVector::DensityVector(RealVector entries, bool normalized)
    : entries_(std::move(entries)), normalized_(normalized) {
  for (double v : entries_)
    if (!std::isfinite(v) || v < 0.0) throw UsageError("density: entries must be finite and nonnegative");
  if (normalized_ && std::abs(mass() - 1.0) > 1e-12) throw UsageError("density: normalized entries must sum to 1");
}

DensityVector DensityVector::normalize(RealVector entries) {
  DensityVector raw(entries);
  double m = raw.mass();
  if (!(m > 0.0)) throw UsageError("density: cannot normalize the zero vector");
  for (double& v : entries) v /= m;
  return DensityVector(std::move(entries), false);
}

double DensityVector::mass() const { return compensated_sum(entries_); }

double indicator_lp(Exponent p, const DensityVector& f) {
  double m = f.mass();
  if (!(m > 0.0)) throw UsageError("indicator: f must be nonzero");
  if (p.is_infinite()) return 0.0;
  double acc = 0.0;
  for (double v : f.entries())
    if (v > 0.0) acc += v * std::log(v / m);
  return acc / p.value();
}

double indicator(const SpaceSpec& space, const DensityVector& f) {
  double base = indicator_lp(space.p, f);
  if (!space.weight) return base;
  if (space.weight->size() != f.size()) throw UsageError("indicator: weight dimension mismatch");
  double shift = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.entries()[i] > 0.0) shift += f.entries()[i] * std::log((*space.weight)[i]);
  return base - shift;
}

double indicator_numeric(const SpaceSpec& space, const DensityVector& f, const IndicatorOptions& opts) {
  const std::size_t n = f.size();
  if (space.weight && space.weight->size() != n) throw UsageError("indicator: weight dimension mismatch");
  double m = f.mass();
  if (!(m > 0.0)) throw UsageError("indicator: f must be nonzero");
  std::vector<std::size_t> supp;
  for (std::size_t i = 0; i < n; ++i)
    if (f.entries()[i] > 0.0) supp.push_back(i);
  auto logw = [&](std::size_t i) { return space.weight ? std::log((*space.weight)[i]) : 0.0; };
  auto objective = [&](const RealVector& u) {
    double acc = 0.0;
    for (std::size_t k = 0; k < supp.size(); ++k) acc += f.entries()[supp[k]] * u[k];
    return acc;
  };

  // Coordinates off the support of f are set to 0: they only consume the ball.
  RealVector u(supp.size(), 0.0);
  if (space.p.is_infinite()) {
    for (std::size_t k = 0; k < supp.size(); ++k) u[k] = -logw(supp[k]);
    return objective(u);
  }
  const double p = space.p.value();
  // Project onto the sphere ||w e^u||_p = 1 in log coordinates.
  auto project = [&](RealVector& v) {
    double peak = -INFINITY;
    for (std::size_t k = 0; k < v.size(); ++k) peak = std::max(peak, p * (v[k] + logw(supp[k])));
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) s += std::exp(p * (v[k] + logw(supp[k])) - peak);
    double shift = (peak + std::log(s)) / p;
    for (double& x : v) x -= shift;
  };
  project(u);
  for (int it = 0; it < opts.max_iterations; ++it) {
    // d_k = (w_k x_k)^p is the mass each coordinate spends; the maximizer spends f_k / ||f||_1.
    double step = 0.0;
    for (std::size_t k = 0; k < supp.size(); ++k) {
      double d = std::exp(p * (u[k] + logw(supp[k])));
      double delta = (0.5 / p) * std::log(f.entries()[supp[k]] / m / d);
      u[k] += delta;
      step = std::max(step, std::abs(delta));
    }
    project(u);
    if (step <= opts.tol) return objective(u);
  }
  throw NumericError("indicator ascent did not converge", objective(u), 0.0);
}

namespace {

void require_open_exponent(Exponent p) {
  if (p.is_infinite() || !(p.value() > 1.0)) throw UsageError("omega lift: need 1 < p < inf");
}

}  // namespace

ComplexVector omega_lift_lp(const CentralizerHandle& omega, Exponent p, const DensityVector& f) {
  require_open_exponent(p);
  const double rp = 1.0 / p.value(), rq = 1.0 - rp;
  ComplexVector root(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) root[i] = std::pow(f.entries()[i], rp);
  ComplexVector out = omega(root);
  if (out.size() != f.size()) throw UsageError("omega lift: centralizer changed the dimension");
  for (std::size_t i = 0; i < f.size(); ++i) out[i] *= f.entries()[i] > 0.0 ? std::pow(f.entries()[i], rq) : 0.0;
  return out;
}

cplx phi_omega(const CentralizerHandle& omega, Exponent p, const DensityVector& f) {
  ComplexVector lift = omega_lift_lp(omega, p, f);
  RealVector re(lift.size()), im(lift.size());
  for (std::size_t i = 0; i < lift.size(); ++i) {
    re[i] = lift[i].real();
    im[i] = lift[i].imag();
  }
  return {compensated_sum(re), compensated_sum(im)};
}

const IndicatorOrientation& indicator_orientation() {
  static IndicatorOrientation record;
  static std::once_flag once;
  std::call_once(once, [] {
    IndicatorOrientation r;
    // Pair: (l_inf, l_1) at theta = 1/2, f = (1/2, 1/2), every side computed numerically.
    const Exponent two = Exponent::finite(2.0);
    PairScale pair(SpaceSpec::lp(Exponent::infinity()), SpaceSpec::lp(Exponent::finite(1.0)), 2);
    DensityVector f({0.5, 0.5}, true);
    r.pair_lhs = phi_omega(CentralizerHandle::pair_induced(pair, 0.5), two, f).real();
    r.pair_rhs = indicator_numeric(pair.x0, f) - indicator_numeric(pair.x1, f);
    r.sigma = (r.pair_lhs * r.pair_rhs) < 0.0 ? -1 : 1;

    // Family: equal thirds over weighted l_2 at z0 = 0.
    ArcPartition thirds({0.0, kTwoPi / 3.0, 2.0 * kTwoPi / 3.0});
    std::vector<Weight> w{Weight({std::exp(1.0), 1.0}), Weight({1.0, 2.0}), Weight({1.0, 1.0})};
    auto fam = std::make_shared<const FamilySpec>(
        FamilySpec::arcs_weighted(SpaceSpec::lp(two), thirds, w));
    DensityVector g({0.3, 0.7}, true);
    cplx lhs = phi_omega(CentralizerHandle::family_induced(fam, 0.0), two, g);
    cplx rhs = boundary_indicator_moment(*fam, g);
    cplx ratio = lhs / rhs;
    r.family_lhs = std::abs(lhs);
    r.family_rhs = std::abs(rhs);
    r.kappa = ratio.real();
    record = r;
  });
  return record;
}

}  // namespace cilab
