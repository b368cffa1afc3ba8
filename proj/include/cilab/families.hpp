#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cilab/calderon.hpp"
#include "cilab/complex_plane.hpp"
#include "cilab/derivations.hpp"
#include "cilab/indicators.hpp"

namespace cilab {

/// Polynomial with exact rational coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  cplx operator()(cplx z) const;
  Polynomial derivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// num/den with real rational coefficients; the derivative is exact.
class RationalFunction {
 public:
  RationalFunction(Polynomial num, Polynomial den);
  /// Expressions in z with + - * / ^ (integer powers), parentheses and decimal or p/q constants,
  /// e.g. "z^2+2", "(3*z+1)/(z-4)".
  static RationalFunction parse(const std::string& expr);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }
  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  std::string to_string() const;
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  Polynomial num_, den_;
};

/// Rule for the diagonal entries w_1, w_2, ... of D.
struct DiagonalRule {
  enum class Kind { Log1p, Linear, Constant, Explicit };
  Kind kind = Kind::Log1p;
  double constant = 1.0;
  RealVector explicit_entries;

  /// w_n for n = 1..dim; Explicit requires dim <= its length.
  RealVector entries(std::size_t dim) const;
  std::optional<std::size_t> fixed_dim() const;
  friend bool operator==(const DiagonalRule&, const DiagonalRule&) = default;
};

namespace family {

struct ArcsWeighted {
  SpaceSpec base;
  ArcPartition partition;
  std::vector<Weight> weights;
};

struct ArcsLp {
  ArcPartition partition;
  std::vector<Exponent> exponents;
};

/// X_z = l_{p(z)} with 1/p(z) = Re(1/alpha(z)), alpha(z) = f(z) + i * imag_shift.
struct VariableExponent {
  RationalFunction alpha;
  double imag_shift = 0.0;
  std::optional<double> p_max;
};

/// ||x||_z = ||exp(-z^k D) x||_2 with D = diag(w_n).
struct FlatDiagonal {
  int power = 1;
  DiagonalRule diag;
};

/// Disk family X_omega = (X0, X1)_{alpha(omega)} built from a pair and a boundary datum.
struct ReiteratedPair {
  PairScale pair;
  PiecewiseConstant boundary_alpha;
};

}  // namespace family

using FamilyKind = std::variant<family::ArcsWeighted, family::ArcsLp, family::VariableExponent,
                                family::FlatDiagonal, family::ReiteratedPair>;

/// Immutable family descriptor. Construct through the factories, which validate.
class FamilySpec {
 public:
  static FamilySpec arcs_weighted(SpaceSpec base, ArcPartition partition, std::vector<Weight> weights,
                                  QuadratureConfig quad = {});
  static FamilySpec arcs_lp(ArcPartition partition, std::vector<Exponent> exponents, QuadratureConfig quad = {});
  /// Validates Re(1/alpha) in [1/p_max, 1] on `samples` circle points and that alpha has no pole
  /// in the closed disk.
  static FamilySpec variable_exponent(RationalFunction alpha, std::optional<double> p_max = std::nullopt,
                                      double imag_shift = 0.0, int samples = 4096);
  static FamilySpec flat_diagonal(int power, DiagonalRule diag);
  static FamilySpec reiterated_pair(PairScale pair, PiecewiseConstant boundary_alpha, QuadratureConfig quad = {});

  /// Variable-exponent descriptor shifted by -i Im alpha(z0), so the new alpha is real at z0.
  FamilySpec recentered(cplx z0) const;

  const FamilyKind& kind() const noexcept { return kind_; }
  const QuadratureConfig& quadrature() const noexcept { return quad_; }
  const char* kind_name() const noexcept;
  /// Dimension fixed by the descriptor, if any.
  std::optional<std::size_t> fixed_dim() const;

 private:
  FamilySpec(FamilyKind k, QuadratureConfig q) : kind_(std::move(k)), quad_(q) {}
  FamilyKind kind_;
  QuadratureConfig quad_;
};

struct FamilyPoint {
  std::shared_ptr<const FamilySpec> family;
  cplx z0;

  FamilyPoint(FamilySpec f, cplx z);
  FamilyPoint(std::shared_ptr<const FamilySpec> f, cplx z);
};

/// Harmonic measures of the partition arcs seen from z0, rescaled to sum exactly 1.
std::vector<double> arc_measures(const ArcPartition& partition, cplx z0, const QuadratureConfig& quad);

double family_norm(const FamilyPoint& pt, std::span<const cplx> x, double tol = 1e-12);
ComplexVector family_derivation(const FamilyPoint& pt, std::span<const cplx> x, double tol = 1e-12);

/// Exponent r with r^{-1} = Re(1/alpha(z0)), for a variable-exponent family.
Exponent variable_exponent_at(const family::VariableExponent& v, cplx z0);

/// The interpolated space at z0 as a single weighted l_p space, when the family has one.
std::optional<SpaceSpec> interpolated_space(const FamilyPoint& pt, std::size_t dim);
/// Boundary space on the arc containing angle t (arc families only).
SpaceSpec boundary_space(const FamilySpec& family, double t, std::size_t dim);

/// (1/2pi) int Phi_{X_{e^{it}}}(f) P_{z0}(t) dt by quadrature (arc families only).
double poisson_indicator_average(const FamilyPoint& pt, const DensityVector& f);
/// (1/2pi) int e^{-it} Phi_{X_{e^{it}}}(f) dt by quadrature (arc families only).
cplx boundary_indicator_moment(const FamilySpec& family, const DensityVector& f);

struct ThreeArcSystem {
  std::array<double, 3> alpha{};
  std::array<cplx, 3> beta{};
  double det = 0.0;
  std::array<double, 3> a{};
  std::array<double, 3> b{};
};

/// (sin((t0-t1)/2) sin((t2-t1)/2) sin((t2-t0)/2)) for raw cut angles.
double three_arc_sine_product(const std::array<double, 3>& cuts);
/// Determinant of rows (alpha_j), (Re beta_j), (Im beta_j) for raw cuts, which may coincide.
double three_arc_determinant(const std::array<double, 3>& cuts, const QuadratureConfig& quad = {});
/// Throws SingularSystemError when the cuts are (numerically) degenerate.
ThreeArcSystem three_arc_coefficients(const std::array<double, 3>& cuts, const QuadratureConfig& quad = {});
ThreeArcSystem three_arc_coefficients(const ArcPartition& partition, const QuadratureConfig& quad = {});

/// Weights w_j such that the ArcsWeighted family on them has X_0 = X and Omega_0 = multiplication by f.
std::vector<Weight> weights_from_multiplier(std::span<const cplx> f, const ArcPartition& partition,
                                            const QuadratureConfig& quad = {});

/// w'(z) * pair_derivation(pair, alpha(z), x) with w the Herglotz transform of the boundary datum.
ComplexVector reiteration_derivation(const PairScale& pair, const PiecewiseConstant& boundary_alpha, cplx z,
                                     std::span<const cplx> x, const QuadratureConfig& quad = {},
                                     double tol = 1e-12);

}  // namespace cilab
