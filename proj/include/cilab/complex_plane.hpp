#pragma once

#include <functional>
#include <vector>

#include "cilab/types.hpp"

namespace cilab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

/// Wraps an angle into [0, 2pi).
double wrap_angle(double t) noexcept;

enum class Domain { Disk, Strip };

/// Point of the open unit disk or the open unit strip 0 < Re z < 1.
class DomainPoint {
 public:
  static DomainPoint disk(cplx value);
  static DomainPoint strip(cplx value);

  cplx value() const noexcept { return value_; }
  Domain domain() const noexcept { return domain_; }

 private:
  DomainPoint(cplx v, Domain d) : value_(v), domain_(d) {}
  cplx value_;
  Domain domain_;
};

/// Half-open counterclockwise arc [start, end) of the unit circle.
class Arc {
 public:
  Arc(double start, double end);
  static Arc full_circle(double start = 0.0);

  double start() const noexcept { return start_; }
  double end() const noexcept { return wrap_angle(start_ + length_); }
  double length() const noexcept { return length_; }
  bool contains(double t) const noexcept;

 private:
  Arc() = default;
  double start_ = 0.0;
  double length_ = 0.0;
};

/// Ordered cut angles 0 <= t_0 < ... < t_{n-1} < 2pi; arc k is [t_k, t_{k+1}) and the last wraps to t_0.
class ArcPartition {
 public:
  explicit ArcPartition(std::vector<double> cuts);

  std::size_t size() const noexcept { return cuts_.size(); }
  const std::vector<double>& cuts() const noexcept { return cuts_; }
  Arc arc(std::size_t k) const;
  std::vector<Arc> arcs() const;
  /// Index of the arc containing angle t.
  std::size_t locate(double t) const;

 private:
  std::vector<double> cuts_;
};

enum class QuadratureScheme { Trapezoid, GaussLegendre };

struct QuadratureConfig {
  int nodes_per_arc = 256;
  QuadratureScheme scheme = QuadratureScheme::GaussLegendre;

  void validate() const;
};

/// phi_s(z) = sin(pi(z - s)/2) / sin(pi(z + conj(s))/2); maps the strip onto the disk, s to 0.
/// Accepts z on the closed strip.
cplx strip_conformal(cplx s, cplx z);
cplx strip_conformal_derivative(cplx s, cplx z);

/// (z - a) / (1 - conj(a) z).
cplx disk_mobius(cplx a, cplx z);

double pseudo_hyperbolic_distance(const DomainPoint& s, const DomainPoint& t);

/// max over `samples` equispaced points w of the circle of |w - disk_mobius(a, w)|.
double mobius_deviation(cplx a, int samples);

double poisson_kernel(cplx z, double t);

double harmonic_measure(cplx z, const Arc& arc, const QuadratureConfig& quad = {});

/// Real boundary datum on the circle with its discontinuity angles.
struct BoundaryFunction {
  std::function<double(double)> value;
  std::vector<double> breakpoints;

  static BoundaryFunction constant(double c);
};

/// Piecewise-constant boundary datum: `values[k]` on arc k of `partition`.
struct PiecewiseConstant {
  ArcPartition partition;
  std::vector<double> values;

  PiecewiseConstant(ArcPartition p, std::vector<double> v);
  double operator()(double t) const { return values[partition.locate(t)]; }
  BoundaryFunction as_function() const;
};

/// w(z) = (1/2pi) int (e^{it} + z)/(e^{it} - z) alpha(e^{it}) dt; Re w is the Poisson extension, Im w(0) = 0.
cplx herglotz_transform(const BoundaryFunction& alpha, cplx z, const QuadratureConfig& quad = {});
cplx herglotz_derivative(const BoundaryFunction& alpha, cplx z, const QuadratureConfig& quad = {});

/// Analytic function on the disk with Re psi = indicator of `arc` on the circle and
/// Im psi(z0) = 0, so psi(z0) is the harmonic measure of the arc seen from z0.
class ArcAnalyticFunction {
 public:
  ArcAnalyticFunction(const Arc& arc, cplx z0, const QuadratureConfig& quad);

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  const Arc& arc() const noexcept { return arc_; }

 private:
  Arc arc_;
  QuadratureConfig quad_;
  double imag_offset_;
};

ArcAnalyticFunction psi_arc(const Arc& arc, cplx z0, const QuadratureConfig& quad = {});

}  // namespace cilab
