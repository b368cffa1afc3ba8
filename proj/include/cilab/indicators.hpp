#pragma once

#include "cilab/derivations.hpp"

namespace cilab {

/// Nonnegative density on the coordinate set.
class DensityVector {
 public:
  /// `normalized` asserts that the entries sum to 1 within 1e-12.
  DensityVector(RealVector entries, bool normalized = false);
  /// Rescales to unit mass; throws UsageError for the zero vector.
  static DensityVector normalize(RealVector entries);

  const RealVector& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool normalized() const noexcept { return normalized_; }
  double mass() const;

 private:
  RealVector entries_;
  bool normalized_;
};

/// sup over the unit ball of l_p of sum f_i log|x_i|, in closed form.
double indicator_lp(Exponent p, const DensityVector& f);
/// Closed form for a possibly weighted space: indicator_lp(p, f) - sum f_i log w_i.
double indicator(const SpaceSpec& space, const DensityVector& f);

struct IndicatorOptions {
  double tol = 1e-13;
  int max_iterations = 100000;
};

/// Same supremum by multiplicative ascent over the positive part of the unit ball.
double indicator_numeric(const SpaceSpec& space, const DensityVector& f, const IndicatorOptions& opts = {});

/// f^{1/q} Omega(f^{1/p}) with 1/p + 1/q = 1, for 1 < p < inf.
ComplexVector omega_lift_lp(const CentralizerHandle& omega, Exponent p, const DensityVector& f);
/// Sum of the lift.
cplx phi_omega(const CentralizerHandle& omega, Exponent p, const DensityVector& f);

/// Orientation constants of the indicator identities, fixed once by brute force:
///   pair:   phi_omega(Omega_theta) = sigma * (Phi_{X0} - Phi_{X1})
///   family: phi_omega(Omega_0)     = kappa * (1/2pi) int e^{-it} Phi_{X_{e^{it}}} dt
struct IndicatorOrientation {
  int sigma = 0;
  double kappa = 0.0;
  /// Raw brute-force values the constants were read from.
  double pair_lhs = 0.0;
  double pair_rhs = 0.0;
  double family_lhs = 0.0;
  double family_rhs = 0.0;
};

/// Computed on first use and shared by every identity check.
const IndicatorOrientation& indicator_orientation();

}  // namespace cilab
