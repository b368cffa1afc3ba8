#pragma once

#include <vector>

#include "cilab/spaces.hpp"

namespace cilab {

/// Interpolation pair (X0, X1) of weighted sequence spaces over a common coordinate set.
struct PairScale {
  SpaceSpec x0;
  SpaceSpec x1;
  std::size_t dim = 0;

  PairScale(SpaceSpec a, SpaceSpec b, std::size_t d);
};

struct SolverOptions {
  double tol = 1e-12;
  int max_sweeps = 100000;
  double damping = 0.5;
};

/// Optimal |x| = |a0|^{1-theta} |a1|^theta. a0 carries the phase of x, a1 >= 0, and both are
/// rescaled so that ||a0||_0 = ||a1||_1 = achieved_value.
struct Factorization {
  ComplexVector a0;
  ComplexVector a1;
  double theta = 0.5;
  double achieved_value = 0.0;
};

/// Factorization of x into n blocks |x| = prod |f_j|^{a_j}; block 0 carries the phase, all
/// block norms equal `value`.
struct ProductFactorization {
  std::vector<ComplexVector> blocks;
  double value = 0.0;
  int sweeps = 0;
};

/// Norm of x in the product X_1^{a_1} ... X_n^{a_n} by log-domain coordinate descent.
double multi_product_norm(const std::vector<SpaceSpec>& specs, const std::vector<double>& exponents,
                          std::span<const cplx> x, double tol = 1e-12);
ProductFactorization product_factorization(const std::vector<SpaceSpec>& specs,
                                           const std::vector<double>& exponents,
                                           std::span<const cplx> x,
                                           const SolverOptions& opts = {});

double calderon_norm(const PairScale& pair, double theta, std::span<const cplx> x, double tol = 1e-12);
Factorization optimal_factorization(const PairScale& pair, double theta, std::span<const cplx> x,
                                    double tol = 1e-12);
/// Omega_theta(x) = x log(|a1|/|a0|) on supp x, zero elsewhere.
ComplexVector pair_derivation(const PairScale& pair, double theta, std::span<const cplx> x,
                              double tol = 1e-12);

/// (l_p0, l_p1)_theta = l_r with 1/r = (1 - theta)/p0 + theta/p1, and the explicit factors
/// |a_j| = (|x|/||x||_r)^{r/p_j} ||x||_r.
class LpPairClosedForm {
 public:
  LpPairClosedForm(Exponent p0, Exponent p1, double theta);

  Exponent r() const noexcept { return r_; }
  double norm(std::span<const cplx> x) const;
  Factorization factor(std::span<const cplx> x) const;

 private:
  Exponent p0_, p1_, r_;
  double theta_;
};

LpPairClosedForm closed_form_lp_pair(Exponent p0, Exponent p1, double theta);

}  // namespace cilab
