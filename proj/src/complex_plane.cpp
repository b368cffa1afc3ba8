#include "cilab/complex_plane.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cilab/errors.hpp"
#include "quadrature.hpp"

namespace cilab {

double wrap_angle(double t) noexcept {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

DomainPoint DomainPoint::disk(cplx value) {
  if (!(std::abs(value) < 1.0)) throw DomainError("disk point must satisfy |z| < 1");
  return DomainPoint(value, Domain::Disk);
}

DomainPoint DomainPoint::strip(cplx value) {
  if (!(value.real() > 0.0 && value.real() < 1.0)) {
    throw DomainError("strip point must satisfy 0 < Re z < 1");
  }
  return DomainPoint(value, Domain::Strip);
}

Arc::Arc(double start, double end) {
  if (!std::isfinite(start) || !std::isfinite(end)) throw UsageError("arc angles must be finite");
  start_ = wrap_angle(start);
  const double e = wrap_angle(end);
  if (start_ == e) throw UsageError("arc start and end coincide");
  length_ = wrap_angle(e - start_);
  if (length_ == 0.0) length_ = kTwoPi;
}

Arc Arc::full_circle(double start) {
  Arc a;
  a.start_ = wrap_angle(start);
  a.length_ = kTwoPi;
  return a;
}

bool Arc::contains(double t) const noexcept {
  const double rel = wrap_angle(t - start_);
  return rel < length_;
}

ArcPartition::ArcPartition(std::vector<double> cuts) : cuts_(std::move(cuts)) {
  if (cuts_.empty()) throw UsageError("arc partition needs at least one cut");
  for (std::size_t k = 0; k < cuts_.size(); ++k) {
    const double c = cuts_[k];
    if (!(c >= 0.0 && c < kTwoPi)) throw UsageError("partition cuts must lie in [0, 2pi)");
    if (k > 0 && !(c > cuts_[k - 1])) throw UsageError("partition cuts must be strictly increasing");
  }
}

Arc ArcPartition::arc(std::size_t k) const {
  if (k >= cuts_.size()) throw UsageError("arc index out of range");
  if (cuts_.size() == 1) return Arc::full_circle(cuts_[0]);
  return Arc(cuts_[k], cuts_[(k + 1) % cuts_.size()]);
}

std::vector<Arc> ArcPartition::arcs() const {
  std::vector<Arc> out;
  out.reserve(cuts_.size());
  for (std::size_t k = 0; k < cuts_.size(); ++k) out.push_back(arc(k));
  return out;
}

std::size_t ArcPartition::locate(double t) const {
  const double w = wrap_angle(t);
  // arc k holds [cut_k, cut_{k+1}); angles below cut_0 belong to the wrapping last arc
  auto it = std::upper_bound(cuts_.begin(), cuts_.end(), w);
  if (it == cuts_.begin()) return cuts_.size() - 1;
  return static_cast<std::size_t>(it - cuts_.begin()) - 1;
}

cplx strip_conformal(cplx s, cplx z) {
  if (!(s.real() > 0.0 && s.real() < 1.0)) throw DomainError("strip_conformal: need 0 < Re s < 1");
  if (!(z.real() >= 0.0 && z.real() <= 1.0)) {
    throw DomainError("strip_conformal: z must lie in the closed strip");
  }
  const double h = 0.5 * kPi;
  return std::sin(h * (z - s)) / std::sin(h * (z + std::conj(s)));
}

cplx strip_conformal_derivative(cplx s, cplx z) {
  if (!(s.real() > 0.0 && s.real() < 1.0)) throw DomainError("strip_conformal: need 0 < Re s < 1");
  const double h = 0.5 * kPi;
  const cplx den = std::sin(h * (z + std::conj(s)));
  return h * std::sin(kPi * s.real()) / (den * den);
}

cplx disk_mobius(cplx a, cplx z) {
  if (!(std::abs(a) < 1.0)) throw DomainError("disk_mobius: need |a| < 1");
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("disk_mobius: need |z| <= 1");
  return (z - a) / (1.0 - std::conj(a) * z);
}

double pseudo_hyperbolic_distance(const DomainPoint& s, const DomainPoint& t) {
  if (s.domain() != t.domain()) throw UsageError("pseudo_hyperbolic_distance: mixed domains");
  if (s.domain() == Domain::Disk) return std::abs(disk_mobius(s.value(), t.value()));
  return std::abs(strip_conformal(s.value(), t.value()));
}

double mobius_deviation(cplx a, int samples) {
  if (samples < 4) throw UsageError("mobius_deviation: need at least 4 samples");
  if (!(std::abs(a) < 1.0)) throw DomainError("mobius_deviation: need |a| < 1");
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = kTwoPi * k / samples;
    const cplx w(std::cos(t), std::sin(t));
    best = std::max(best, std::abs(w - (w - a) / (1.0 - std::conj(a) * w)));
  }
  return best;
}

double poisson_kernel(cplx z, double t) {
  const double r2 = std::norm(z);
  if (!(r2 < 1.0)) throw DomainError("poisson_kernel: need |z| < 1");
  return (1.0 - r2) / std::norm(cplx(std::cos(t), std::sin(t)) - z);
}

double harmonic_measure(cplx z, const Arc& arc, const QuadratureConfig& quad) {
  if (!(std::abs(z) < 1.0)) throw DomainError("harmonic_measure: need |z| < 1");
  double acc = 0.0;
  for (const auto& n : detail::span_nodes(arc.start(), arc.length(), quad, z)) {
    acc += n.weight * poisson_kernel(z, n.t);
  }
  return std::clamp(acc / kTwoPi, 0.0, 1.0);
}

BoundaryFunction BoundaryFunction::constant(double c) {
  return BoundaryFunction{[c](double) { return c; }, {}};
}

PiecewiseConstant::PiecewiseConstant(ArcPartition p, std::vector<double> v)
    : partition(std::move(p)), values(std::move(v)) {
  if (values.size() != partition.size()) {
    throw UsageError("piecewise-constant datum needs one value per arc");
  }
  require_finite(values, "piecewise-constant values");
}

BoundaryFunction PiecewiseConstant::as_function() const {
  return BoundaryFunction{[*this](double t) { return (*this)(t); }, partition.cuts()};
}

namespace {

template <class Kernel>
cplx boundary_integral(const BoundaryFunction& alpha, cplx z, const QuadratureConfig& quad,
                       Kernel kernel) {
  if (!(std::abs(z) < 1.0)) throw DomainError("herglotz: need |z| < 1");
  cplx acc = 0.0;
  for (const auto& [start, length] : detail::spans_from_breakpoints(alpha.breakpoints)) {
    for (const auto& n : detail::span_nodes(start, length, quad, z)) {
      const double a = alpha.value(n.t);
      if (!std::isfinite(a)) throw NumericError("herglotz: non-finite boundary sample");
      if (a == 0.0) continue;
      const cplx e(std::cos(n.t), std::sin(n.t));
      acc += n.weight * a * kernel(e, z);
    }
  }
  return acc / kTwoPi;
}

cplx herglotz_kernel(cplx e, cplx z) { return (e + z) / (e - z); }
cplx herglotz_kernel_derivative(cplx e, cplx z) {
  const cplx d = e - z;
  return 2.0 * e / (d * d);
}

template <class Kernel>
cplx arc_integral(const Arc& arc, cplx z, const QuadratureConfig& quad, Kernel kernel) {
  if (!(std::abs(z) < 1.0)) throw DomainError("psi_arc: need |z| < 1");
  cplx acc = 0.0;
  for (const auto& n : detail::span_nodes(arc.start(), arc.length(), quad, z)) {
    acc += n.weight * kernel(cplx(std::cos(n.t), std::sin(n.t)), z);
  }
  return acc / kTwoPi;
}

}  // namespace

cplx herglotz_transform(const BoundaryFunction& alpha, cplx z, const QuadratureConfig& quad) {
  return boundary_integral(alpha, z, quad, herglotz_kernel);
}

cplx herglotz_derivative(const BoundaryFunction& alpha, cplx z, const QuadratureConfig& quad) {
  return boundary_integral(alpha, z, quad, herglotz_kernel_derivative);
}

ArcAnalyticFunction::ArcAnalyticFunction(const Arc& arc, cplx z0, const QuadratureConfig& quad)
    : arc_(arc), quad_(quad) {
  quad_.validate();
  imag_offset_ = arc_integral(arc_, z0, quad_, herglotz_kernel).imag();
}

cplx ArcAnalyticFunction::operator()(cplx z) const {
  return arc_integral(arc_, z, quad_, herglotz_kernel) - cplx(0.0, imag_offset_);
}

cplx ArcAnalyticFunction::derivative(cplx z) const {
  return arc_integral(arc_, z, quad_, herglotz_kernel_derivative);
}

ArcAnalyticFunction psi_arc(const Arc& arc, cplx z0, const QuadratureConfig& quad) {
  return ArcAnalyticFunction(arc, z0, quad);
}

}  // namespace cilab
