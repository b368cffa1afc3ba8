#include "cilab/calderon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cilab/errors.hpp"

namespace cilab {

PairScale::PairScale(SpaceSpec a, SpaceSpec b, std::size_t d)
    : x0(std::move(a)), x1(std::move(b)), dim(d) {
  if (dim == 0) throw UsageError("pair dimension must be positive");
  for (const auto* s : {&x0, &x1}) {
    if (s->weight && s->weight->size() != dim) throw UsageError("pair weight dimension mismatch");
  }
}

namespace {

struct Block {
  bool infinite = false;
  double p = 1.0;
  double a = 0.0;
  RealVector log_w;  // restricted to supp x
};

void check_problem(const std::vector<SpaceSpec>& specs, const std::vector<double>& exponents,
                   std::span<const cplx> x) {
  if (specs.empty() || specs.size() != exponents.size()) {
    throw UsageError("product: need one exponent per space");
  }
  double sum = 0.0;
  for (double a : exponents) {
    if (!(a > 0.0) || !std::isfinite(a)) throw UsageError("product: exponents must be positive");
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw UsageError("product: exponents must sum to 1");
  for (const auto& s : specs) {
    if (s.weight && s.weight->size() != x.size()) throw UsageError("product: dimension mismatch");
  }
  require_finite(x, "product input");
}

// Minimizes sum_j a_j log ||f_j||_{X_j} over |x| = prod |f_j|^{a_j}. In log coordinates
// q_ji = log(w_ji |f_ji|) the problem is convex with affine constraint sum_j a_j q_ji = c_i.
// Sup-norm blocks are held flat (q = 0): with at least one finite block that is optimal and the
// remaining gauge freedom does not change the objective. Each coordinate is minimized exactly
// (the equal-density condition has a closed form), then damped.
class ProductSolver {
 public:
  ProductSolver(const std::vector<SpaceSpec>& specs, const std::vector<double>& exponents,
                std::span<const cplx> x, const SolverOptions& opts)
      : opts_(opts) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != cplx(0.0)) support_.push_back(i);
    }
    const std::size_t n = support_.size();
    c_.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) c_[k] = std::log(std::abs(x[support_[k]]));
    for (std::size_t j = 0; j < specs.size(); ++j) {
      Block b;
      b.infinite = specs[j].p.is_infinite();
      b.p = b.infinite ? 0.0 : specs[j].p.value();
      b.a = exponents[j];
      b.log_w.assign(n, 0.0);
      if (specs[j].weight) {
        for (std::size_t k = 0; k < n; ++k) b.log_w[k] = std::log((*specs[j].weight)[support_[k]]);
      }
      for (std::size_t k = 0; k < n; ++k) c_[k] += b.a * b.log_w[k];
      if (!b.infinite) {
        finite_.push_back(j);
        inv_r_ += b.a / b.p;
        finite_mass_ += b.a;
      }
      blocks_.push_back(std::move(b));
    }
    q_.assign(blocks_.size(), RealVector(n, 0.0));
  }

  bool empty() const { return support_.empty(); }

  int run() {
    const std::size_t n = support_.size();
    if (finite_.empty() || n == 1) {
      // any feasible point is optimal: put W|x| into every block
      for (auto& qj : q_) qj = c_;
      return 0;
    }
    for (std::size_t j : finite_) {
      for (std::size_t k = 0; k < n; ++k) q_[j][k] = c_[k] / finite_mass_;
    }
    const double r = 1.0 / inv_r_;
    double prev = log_objective();
    for (int sweep = 1; sweep <= opts_.max_sweeps; ++sweep) {
      refresh_sums();
      double max_step = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        double weighted_rest = 0.0;
        for (std::size_t f = 0; f < finite_.size(); ++f) {
          const std::size_t j = finite_[f];
          double rest = sums_[f] - std::exp(blocks_[j].p * q_[j][k] - peaks_[f]);
          if (!(rest > 0.5 * sums_[f])) {  // dominant own term: subtracting it would cancel
            rest = 0.0;
            for (std::size_t m = 0; m < n; ++m) {
              if (m != k) rest += std::exp(blocks_[j].p * q_[j][m] - peaks_[f]);
            }
          }
          rest_[f] = rest;
          log_rest_[f] = std::log(rest) + peaks_[f];
          weighted_rest += blocks_[j].a / blocks_[j].p * log_rest_[f];
        }
        const double logit = r * (c_[k] - weighted_rest);
        for (std::size_t f = 0; f < finite_.size(); ++f) {
          const std::size_t j = finite_[f];
          const double target = (logit + log_rest_[f]) / blocks_[j].p;
          const double step = opts_.damping * (target - q_[j][k]);
          q_[j][k] += step;
          max_step = std::max(max_step, std::abs(step));
          const double e = blocks_[j].p * q_[j][k];
          if (e > peaks_[f]) {
            sums_[f] = rest_[f] * std::exp(peaks_[f] - e) + 1.0;
            peaks_[f] = e;
          } else {
            sums_[f] = rest_[f] + std::exp(e - peaks_[f]);
          }
        }
      }
      const double obj = log_objective();
      residual_ = max_step;
      if (!std::isfinite(obj)) throw NumericError("product solver diverged", std::exp(prev), max_step);
      const bool done = max_step <= opts_.tol && std::abs(obj - prev) <= opts_.tol;
      prev = obj;
      if (done && sweep > 1) return sweep;
    }
    throw NumericError("product solver did not converge within " + std::to_string(opts_.max_sweeps) +
                           " sweeps",
                       std::exp(prev), residual_);
  }

  double block_log_norm(std::size_t j) const {
    const Block& b = blocks_[j];
    const RealVector& qj = q_[j];
    if (b.infinite) return *std::max_element(qj.begin(), qj.end());
    double peak = -std::numeric_limits<double>::infinity();
    for (double v : qj) peak = std::max(peak, b.p * v);
    double s = 0.0;
    for (double v : qj) s += std::exp(b.p * v - peak);
    return (peak + std::log(s)) / b.p;
  }

  double log_objective() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < blocks_.size(); ++j) acc += blocks_[j].a * block_log_norm(j);
    return acc;
  }

  ProductFactorization extract(std::span<const cplx> x, int sweeps) const {
    ProductFactorization out;
    out.sweeps = sweeps;
    const double log_value = log_objective();
    out.value = std::exp(log_value);
    out.blocks.assign(blocks_.size(), ComplexVector(x.size(), cplx(0.0)));
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      const double shift = log_value - block_log_norm(j);
      for (std::size_t k = 0; k < support_.size(); ++k) {
        const double mod = std::exp(q_[j][k] - blocks_[j].log_w[k] + shift);
        const std::size_t i = support_[k];
        out.blocks[j][i] = (j == 0) ? mod * (x[i] / std::abs(x[i])) : cplx(mod);
      }
    }
    return out;
  }

 private:
  void refresh_sums() {
    const std::size_t nf = finite_.size();
    sums_.assign(nf, 0.0);
    peaks_.assign(nf, -std::numeric_limits<double>::infinity());
    rest_.assign(nf, 0.0);
    log_rest_.assign(nf, 0.0);
    for (std::size_t f = 0; f < nf; ++f) {
      const Block& b = blocks_[finite_[f]];
      for (double v : q_[finite_[f]]) peaks_[f] = std::max(peaks_[f], b.p * v);
      for (double v : q_[finite_[f]]) sums_[f] += std::exp(b.p * v - peaks_[f]);
    }
  }

  SolverOptions opts_;
  std::vector<std::size_t> support_;
  RealVector c_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> finite_;
  double inv_r_ = 0.0;
  double finite_mass_ = 0.0;
  std::vector<RealVector> q_;
  RealVector sums_, peaks_, rest_, log_rest_;
  double residual_ = 0.0;
};

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw UsageError("theta must lie in (0, 1)");
}

void check_pair_input(const PairScale& pair, std::span<const cplx> x) {
  if (x.size() != pair.dim) throw UsageError("vector dimension does not match the pair");
}

}  // namespace

ProductFactorization product_factorization(const std::vector<SpaceSpec>& specs,
                                           const std::vector<double>& exponents,
                                           std::span<const cplx> x, const SolverOptions& opts) {
  check_problem(specs, exponents, x);
  if (!(opts.tol > 0.0)) throw UsageError("tolerance must be positive");
  ProductSolver solver(specs, exponents, x, opts);
  if (solver.empty()) throw UsageError("cannot factor the zero vector");
  const int sweeps = solver.run();
  return solver.extract(x, sweeps);
}

double multi_product_norm(const std::vector<SpaceSpec>& specs, const std::vector<double>& exponents,
                          std::span<const cplx> x, double tol) {
  check_problem(specs, exponents, x);
  if (specs.size() == 1) return norm(specs[0], x);
  if (std::all_of(x.begin(), x.end(), [](cplx v) { return v == cplx(0.0); })) return 0.0;
  SolverOptions opts;
  opts.tol = tol;
  return product_factorization(specs, exponents, x, opts).value;
}

double calderon_norm(const PairScale& pair, double theta, std::span<const cplx> x, double tol) {
  check_theta(theta);
  check_pair_input(pair, x);
  return multi_product_norm({pair.x0, pair.x1}, {1.0 - theta, theta}, x, tol);
}

Factorization optimal_factorization(const PairScale& pair, double theta, std::span<const cplx> x,
                                    double tol) {
  check_theta(theta);
  check_pair_input(pair, x);
  SolverOptions opts;
  opts.tol = tol;
  auto pf = product_factorization({pair.x0, pair.x1}, {1.0 - theta, theta}, x, opts);
  return Factorization{std::move(pf.blocks[0]), std::move(pf.blocks[1]), theta, pf.value};
}

ComplexVector pair_derivation(const PairScale& pair, double theta, std::span<const cplx> x,
                              double tol) {
  check_theta(theta);
  check_pair_input(pair, x);
  ComplexVector out(x.size(), cplx(0.0));
  if (std::all_of(x.begin(), x.end(), [](cplx v) { return v == cplx(0.0); })) return out;
  const Factorization f = optimal_factorization(pair, theta, x, tol);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == cplx(0.0)) continue;
    out[i] = x[i] * std::log(std::abs(f.a1[i]) / std::abs(f.a0[i]));
  }
  return out;
}

LpPairClosedForm::LpPairClosedForm(Exponent p0, Exponent p1, double theta)
    : p0_(p0), p1_(p1), r_(Exponent::infinity()), theta_(theta) {
  check_theta(theta);
  const double inv = (1.0 - theta) * p0.reciprocal() + theta * p1.reciprocal();
  if (inv > 0.0) r_ = Exponent::finite(std::max(1.0, 1.0 / inv));
}

double LpPairClosedForm::norm(std::span<const cplx> x) const {
  return cilab::norm(SpaceSpec::lp(r_), x);
}

Factorization LpPairClosedForm::factor(std::span<const cplx> x) const {
  Factorization f;
  f.theta = theta_;
  f.a0.assign(x.size(), cplx(0.0));
  f.a1.assign(x.size(), cplx(0.0));
  const double nr = norm(x);
  f.achieved_value = nr;
  if (nr == 0.0) return f;
  const auto power = [&](Exponent p) { return r_.is_infinite() ? 1.0 : r_.value() * p.reciprocal(); };
  const double e0 = power(p0_), e1 = power(p1_);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = std::abs(x[i]);
    if (m == 0.0) continue;
    const double rel = m / nr;
    f.a0[i] = (x[i] / m) * (std::pow(rel, e0) * nr);
    f.a1[i] = std::pow(rel, e1) * nr;
  }
  return f;
}

LpPairClosedForm closed_form_lp_pair(Exponent p0, Exponent p1, double theta) {
  return LpPairClosedForm(p0, p1, theta);
}

}  // namespace cilab
