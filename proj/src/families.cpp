#include "cilab/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cilab/errors.hpp"
#include "quadrature.hpp"

namespace cilab {

// ---------------------------------------------------------------- polynomials

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->to_double();
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * Rational(static_cast<std::int64_t>(k)));
  return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k < a.coeffs_.size()) c[k] = c[k] + a.coeffs_[k];
    if (k < b.coeffs_.size()) c[k] = c[k] + b.coeffs_[k];
  }
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> neg;
  for (const auto& c : b.coeffs_) neg.push_back(-c);
  return a + Polynomial(std::move(neg));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

namespace {

Polynomial constant_poly(Rational c) { return Polynomial({c}); }

bool is_constant(const Polynomial& p) { return p.degree() <= 0; }

Rational constant_value(const Polynomial& p) { return p.is_zero() ? Rational(0) : p.coeffs()[0]; }

Polynomial scale(const Polynomial& p, Rational c) { return p * constant_poly(c); }

std::string poly_to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    bool negative = c.num() < 0;
    Rational mag = negative ? -c : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? "-" : "+";
    }
    bool unit = mag == Rational(1);
    if (k == 0 || !unit) out += mag.to_string();
    if (k > 0) {
      if (!unit) out += "*";
      out += "z";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

// Recursive-descent parser over rational functions with exact coefficients.
class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : s_(text) {}

  RationalFunction parse() {
    Value v = expr();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return RationalFunction(v.num, v.den);
  }

 private:
  struct Value {
    Polynomial num;
    Polynomial den;
  };

  static Value normalize(Value v) {
    if (v.den.is_zero()) throw ParseError("alpha", "division by zero");
    if (is_constant(v.den)) {
      v.num = scale(v.num, Rational(1) / constant_value(v.den));
      v.den = constant_poly(Rational(1));
    }
    return v;
  }

  static Value add(const Value& a, const Value& b, bool subtract) {
    Polynomial lhs = a.num * b.den, rhs = b.num * a.den;
    return normalize({subtract ? lhs - rhs : lhs + rhs, a.den * b.den});
  }
  static Value mul(const Value& a, const Value& b) { return normalize({a.num * b.num, a.den * b.den}); }
  static Value div(const Value& a, const Value& b) {
    if (b.num.is_zero()) throw ParseError("alpha", "division by zero");
    return normalize({a.num * b.den, a.den * b.num});
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("alpha", what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+')) {
        v = add(v, term(), false);
      } else if (accept('-')) {
        v = add(v, term(), true);
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        v = mul(v, unary());
      } else if (c == '/') {
        ++pos_;
        v = div(v, unary());
      } else if (c == 'z' || c == '(') {
        v = mul(v, unary());  // implicit product, as in "2z"
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept('-')) {
      Value v = unary();
      v.num = scale(v.num, Rational(-1));
      return v;
    }
    if (accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = primary();
    if (!accept('^')) return base;
    skip_space();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    int n = std::stoi(s_.substr(start, pos_ - start));
    if (n > 64) fail("exponent too large");
    Value out{constant_poly(Rational(1)), constant_poly(Rational(1))};
    for (int k = 0; k < n; ++k) out = mul(out, base);
    return out;
  }

  Value primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (c == 'z') {
      ++pos_;
      return {Polynomial({Rational(0), Rational(1)}), constant_poly(Rational(1))};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      Rational r = Rational::parse(s_.substr(start, pos_ - start));
      return {constant_poly(r), constant_poly(Rational(1))};
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw UsageError("rational function with zero denominator");
}

RationalFunction RationalFunction::parse(const std::string& expr) { return ExprParser(expr).parse(); }

cplx RationalFunction::operator()(cplx z) const { return num_(z) / den_(z); }

cplx RationalFunction::derivative(cplx z) const {
  cplx d = den_(z);
  return (num_.derivative()(z) * d - num_(z) * den_.derivative()(z)) / (d * d);
}

std::string RationalFunction::to_string() const {
  if (den_ == constant_poly(Rational(1))) return poly_to_string(num_);
  return "(" + poly_to_string(num_) + ")/(" + poly_to_string(den_) + ")";
}

// ---------------------------------------------------------------- diagonal rule

RealVector DiagonalRule::entries(std::size_t dim) const {
  RealVector w(dim);
  switch (kind) {
    case Kind::Log1p:
      for (std::size_t n = 1; n <= dim; ++n) w[n - 1] = std::log(static_cast<double>(n) + 1.0);
      break;
    case Kind::Linear:
      for (std::size_t n = 1; n <= dim; ++n) w[n - 1] = static_cast<double>(n);
      break;
    case Kind::Constant:
      std::fill(w.begin(), w.end(), constant);
      break;
    case Kind::Explicit:
      if (dim > explicit_entries.size()) throw UsageError("flat diagonal: vector longer than the explicit diagonal");
      std::copy_n(explicit_entries.begin(), dim, w.begin());
      break;
  }
  return w;
}

std::optional<std::size_t> DiagonalRule::fixed_dim() const {
  if (kind == Kind::Explicit) return explicit_entries.size();
  return std::nullopt;
}

// ---------------------------------------------------------------- descriptors

namespace {

void require_disk(cplx z0) {
  if (!(std::abs(z0) < 1.0) || !std::isfinite(z0.real()) || !std::isfinite(z0.imag()))
    throw DomainError("family point must satisfy |z0| < 1");
}

cplx effective_alpha(const family::VariableExponent& v, cplx z) { return v.alpha(z) + cplx(0.0, v.imag_shift); }

double winding_number(const Polynomial& p, int samples) {
  double total = 0.0;
  cplx prev = p(cplx(1.0, 0.0));
  for (int k = 1; k <= samples; ++k) {
    double t = kTwoPi * k / samples;
    cplx cur = p(std::polar(1.0, t));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return total / kTwoPi;
}

void validate_variable_exponent(const family::VariableExponent& v, int samples) {
  if (samples < 16) throw UsageError("variable exponent: need at least 16 validation samples");
  if (v.p_max && !(*v.p_max >= 1.0)) throw UsageError("variable exponent: p_max must be >= 1");
  if (!std::isfinite(v.imag_shift)) throw UsageError("variable exponent: imag_shift must be finite");
  double lower = v.p_max ? 1.0 / *v.p_max : 0.0;
  for (int k = 0; k < samples; ++k) {
    cplx w = std::polar(1.0, kTwoPi * k / samples);
    cplx d = v.alpha.denominator()(w);
    if (std::abs(d) < 1e-12) throw DomainError("variable exponent: alpha has a pole on the circle");
    cplx a = effective_alpha(v, w);
    double r = (1.0 / a).real();
    if (!std::isfinite(r) || r < lower - 1e-12 || r > 1.0 + 1e-12) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "variable exponent: Re(1/alpha) = %.6g at angle %.6g lies outside [%.6g, 1]", r,
                    kTwoPi * k / samples, lower);
      throw DomainError(buf);
    }
  }
  // Both 1/alpha and alpha must be analytic in the disk: no zeros of either polynomial inside.
  if (std::lround(winding_number(v.alpha.denominator(), samples)) != 0)
    throw DomainError("variable exponent: alpha has a pole inside the disk");
  Polynomial shifted = v.alpha.numerator();
  if (v.imag_shift != 0.0) {
    // zeros of num + i*shift*den: count via the winding of the full effective numerator
    double total = 0.0;
    cplx prev = effective_alpha(v, 1.0) * v.alpha.denominator()(1.0);
    for (int k = 1; k <= samples; ++k) {
      cplx w = std::polar(1.0, kTwoPi * k / samples);
      cplx cur = effective_alpha(v, w) * v.alpha.denominator()(w);
      total += std::arg(cur / prev);
      prev = cur;
    }
    if (std::lround(total / kTwoPi) != 0) throw DomainError("variable exponent: alpha vanishes inside the disk");
  } else if (std::lround(winding_number(shifted, samples)) != 0) {
    throw DomainError("variable exponent: alpha vanishes inside the disk");
  }
}

std::size_t require_dims(const FamilySpec& f, std::size_t n) {
  if (auto d = f.fixed_dim(); d && *d != n) throw UsageError("family: vector dimension does not match the family");
  if (n == 0) throw UsageError("family: empty vector");
  return n;
}

}  // namespace

FamilySpec FamilySpec::arcs_weighted(SpaceSpec base, ArcPartition partition, std::vector<Weight> weights,
                                     QuadratureConfig quad) {
  quad.validate();
  if (weights.size() != partition.size()) throw UsageError("arcs-weighted: need one weight per arc");
  std::size_t dim = weights.front().size();
  for (const auto& w : weights)
    if (w.size() != dim) throw UsageError("arcs-weighted: weights must share one dimension");
  if (base.weight && base.weight->size() != dim) throw UsageError("arcs-weighted: base weight dimension");
  return FamilySpec(family::ArcsWeighted{std::move(base), std::move(partition), std::move(weights)}, quad);
}

FamilySpec FamilySpec::arcs_lp(ArcPartition partition, std::vector<Exponent> exponents, QuadratureConfig quad) {
  quad.validate();
  if (exponents.size() != partition.size()) throw UsageError("arcs-lp: need one exponent per arc");
  return FamilySpec(family::ArcsLp{std::move(partition), std::move(exponents)}, quad);
}

FamilySpec FamilySpec::variable_exponent(RationalFunction alpha, std::optional<double> p_max, double imag_shift,
                                         int samples) {
  family::VariableExponent v{std::move(alpha), imag_shift, p_max};
  validate_variable_exponent(v, samples);
  return FamilySpec(std::move(v), QuadratureConfig{});
}

FamilySpec FamilySpec::flat_diagonal(int power, DiagonalRule diag) {
  if (power < 1) throw UsageError("flat-diagonal: power must be a positive integer");
  if (diag.kind == DiagonalRule::Kind::Explicit) {
    if (diag.explicit_entries.empty()) throw UsageError("flat-diagonal: empty explicit diagonal");
    require_finite(diag.explicit_entries, "flat-diagonal");
  }
  if (diag.kind == DiagonalRule::Kind::Constant && !std::isfinite(diag.constant))
    throw UsageError("flat-diagonal: constant must be finite");
  return FamilySpec(family::FlatDiagonal{power, std::move(diag)}, QuadratureConfig{});
}

FamilySpec FamilySpec::reiterated_pair(PairScale pair, PiecewiseConstant boundary_alpha, QuadratureConfig quad) {
  quad.validate();
  for (double v : boundary_alpha.values)
    if (!(v >= 0.0 && v <= 1.0)) throw UsageError("reiterated-pair: boundary values must lie in [0, 1]");
  return FamilySpec(family::ReiteratedPair{std::move(pair), std::move(boundary_alpha)}, quad);
}

FamilySpec FamilySpec::recentered(cplx z0) const {
  const auto* v = std::get_if<family::VariableExponent>(&kind_);
  if (!v) throw UsageError("recentering applies to variable-exponent families only");
  require_disk(z0);
  double shift = v->imag_shift - effective_alpha(*v, z0).imag();
  return variable_exponent(v->alpha, v->p_max, shift);
}

const char* FamilySpec::kind_name() const noexcept {
  switch (kind_.index()) {
    case 0: return "arcs-weighted";
    case 1: return "arcs-lp";
    case 2: return "variable-exponent";
    case 3: return "flat-diagonal";
    default: return "reiterated-pair";
  }
}

std::optional<std::size_t> FamilySpec::fixed_dim() const {
  if (const auto* a = std::get_if<family::ArcsWeighted>(&kind_)) return a->weights.front().size();
  if (const auto* f = std::get_if<family::FlatDiagonal>(&kind_)) return f->diag.fixed_dim();
  if (const auto* r = std::get_if<family::ReiteratedPair>(&kind_)) return r->pair.dim;
  return std::nullopt;
}

FamilyPoint::FamilyPoint(FamilySpec f, cplx z) : FamilyPoint(std::make_shared<const FamilySpec>(std::move(f)), z) {}

FamilyPoint::FamilyPoint(std::shared_ptr<const FamilySpec> f, cplx z) : family(std::move(f)), z0(z) {
  if (!family) throw UsageError("family point without a family");
  require_disk(z0);
}

// ---------------------------------------------------------------- evaluation

std::vector<double> arc_measures(const ArcPartition& partition, cplx z0, const QuadratureConfig& quad) {
  require_disk(z0);
  std::vector<double> mu;
  double total = 0.0;
  for (const Arc& a : partition.arcs()) {
    mu.push_back(harmonic_measure(z0, a, quad));
    total += mu.back();
  }
  if (!(total > 0.0)) throw NumericError("arc measures vanish");
  for (double& m : mu) m /= total;
  return mu;
}

namespace {

RealVector combined_weight(const family::ArcsWeighted& f, const std::vector<double>& mu) {
  std::size_t dim = f.weights.front().size();
  RealVector u(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double log_u = f.base.weight ? std::log((*f.base.weight)[i]) : 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) log_u += mu[j] * std::log(f.weights[j][i]);
    u[i] = std::exp(log_u);
  }
  return u;
}

cplx int_power(cplx z, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

double reiterated_theta(const family::ReiteratedPair& r, cplx z, const QuadratureConfig& quad) {
  return std::clamp(herglotz_transform(r.boundary_alpha.as_function(), z, quad).real(), 0.0, 1.0);
}

void require_real_alpha(const family::VariableExponent& v, cplx z0) {
  cplx a = effective_alpha(v, z0);
  if (std::abs(a.imag()) > 1e-12 * std::max(1.0, std::abs(a)))
    throw UnsupportedPointError("variable exponent: alpha(z0) is not real; recenter the family at z0");
}

}  // namespace

Exponent variable_exponent_at(const family::VariableExponent& v, cplx z0) {
  require_disk(z0);
  require_real_alpha(v, z0);
  double recip = (1.0 / effective_alpha(v, z0)).real();
  if (!(recip > 0.0)) throw UnsupportedPointError("variable exponent: p(z0) is infinite");
  return Exponent::finite(std::min(1.0 / recip, std::numeric_limits<double>::max()));
}

double family_norm(const FamilyPoint& pt, std::span<const cplx> x, double tol) {
  const FamilySpec& fam = *pt.family;
  require_dims(fam, x.size());
  require_finite(x, "family_norm");
  const cplx z0 = pt.z0;
  const QuadratureConfig& quad = fam.quadrature();
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, family::ArcsWeighted>) {
          return norm(SpaceSpec::weighted(f.base.p, Weight(combined_weight(f, arc_measures(f.partition, z0, quad)))),
                      x);
        } else if constexpr (std::is_same_v<T, family::ArcsLp>) {
          std::vector<double> mu = arc_measures(f.partition, z0, quad);
          std::vector<SpaceSpec> specs;
          std::vector<double> ex;
          for (std::size_t j = 0; j < mu.size(); ++j) {
            if (mu[j] <= 0.0) continue;
            specs.push_back(SpaceSpec::lp(f.exponents[j]));
            ex.push_back(mu[j]);
          }
          double s = 0.0;
          for (double e : ex) s += e;
          for (double& e : ex) e /= s;
          return multi_product_norm(specs, ex, x, tol);
        } else if constexpr (std::is_same_v<T, family::VariableExponent>) {
          return norm(SpaceSpec::lp(variable_exponent_at(f, z0)), x);
        } else if constexpr (std::is_same_v<T, family::FlatDiagonal>) {
          RealVector w = f.diag.entries(x.size());
          cplx zk = int_power(z0, f.power);
          ComplexVector y(x.size());
          for (std::size_t n = 0; n < x.size(); ++n) y[n] = std::exp(-zk * w[n]) * x[n];
          return norm(SpaceSpec::lp(Exponent::finite(2.0)), y);
        } else {
          double theta = reiterated_theta(f, z0, quad);
          if (theta <= 0.0) return norm(f.pair.x0, x);
          if (theta >= 1.0) return norm(f.pair.x1, x);
          return calderon_norm(f.pair, theta, x, tol);
        }
      },
      fam.kind());
}

ComplexVector family_derivation(const FamilyPoint& pt, std::span<const cplx> x, double tol) {
  const FamilySpec& fam = *pt.family;
  require_dims(fam, x.size());
  require_finite(x, "family_derivation");
  const cplx z0 = pt.z0;
  const QuadratureConfig& quad = fam.quadrature();
  return std::visit(
      [&](const auto& f) -> ComplexVector {
        using T = std::decay_t<decltype(f)>;
        ComplexVector out(x.size(), cplx(0.0));
        if constexpr (std::is_same_v<T, family::ArcsWeighted>) {
          ComplexVector g(x.size(), cplx(0.0));
          for (std::size_t j = 0; j < f.partition.size(); ++j) {
            cplx d = psi_arc(f.partition.arc(j), z0, quad).derivative(z0);
            for (std::size_t i = 0; i < x.size(); ++i) g[i] -= d * std::log(f.weights[j][i]);
          }
          for (std::size_t i = 0; i < x.size(); ++i) out[i] = g[i] * x[i];
        } else if constexpr (std::is_same_v<T, family::ArcsLp>) {
          std::vector<double> mu = arc_measures(f.partition, z0, quad);
          for (double m : mu)
            if (m <= 0.0) throw NumericError("arcs-lp: harmonic measure underflow at z0");
          std::vector<SpaceSpec> specs;
          for (const auto& p : f.exponents) specs.push_back(SpaceSpec::lp(p));
          bool any = false;
          for (const cplx& v : x) any = any || v != 0.0;
          if (!any) return out;
          SolverOptions opts;
          opts.tol = tol;
          ProductFactorization pf = product_factorization(specs, mu, x, opts);
          std::vector<cplx> dpsi;
          for (std::size_t j = 0; j < f.partition.size(); ++j)
            dpsi.push_back(psi_arc(f.partition.arc(j), z0, quad).derivative(z0));
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0) continue;
            cplx s = 0.0;
            for (std::size_t j = 0; j < dpsi.size(); ++j) s += dpsi[j] * std::log(std::abs(pf.blocks[j][i]));
            out[i] = s * x[i];
          }
        } else if constexpr (std::is_same_v<T, family::VariableExponent>) {
          Exponent p = variable_exponent_at(f, z0);
          cplx scale = -f.alpha.derivative(z0) / effective_alpha(f, z0);
          out = kalton_peck(p.value(), scale, x);
        } else if constexpr (std::is_same_v<T, family::FlatDiagonal>) {
          RealVector w = f.diag.entries(x.size());
          cplx factor = static_cast<double>(f.power) * int_power(z0, f.power - 1);
          for (std::size_t n = 0; n < x.size(); ++n) out[n] = factor * w[n] * x[n];
        } else {
          out = reiteration_derivation(f.pair, f.boundary_alpha, z0, x, quad, tol);
        }
        return out;
      },
      fam.kind());
}

ComplexVector reiteration_derivation(const PairScale& pair, const PiecewiseConstant& boundary_alpha, cplx z,
                                     std::span<const cplx> x, const QuadratureConfig& quad, double tol) {
  require_disk(z);
  BoundaryFunction alpha = boundary_alpha.as_function();
  double theta = herglotz_transform(alpha, z, quad).real();
  if (!(theta > 1e-14 && theta < 1.0 - 1e-14))
    throw EndpointError("reiteration: alpha(z) is an endpoint of [0, 1]");
  cplx dw = herglotz_derivative(alpha, z, quad);
  ComplexVector out = pair_derivation(pair, theta, x, tol);
  for (auto& v : out) v *= dw;
  return out;
}

CentralizerHandle CentralizerHandle::family_induced(std::shared_ptr<const FamilySpec> fam, cplx z0) {
  FamilyPoint pt(std::move(fam), z0);
  bool linear = std::holds_alternative<family::ArcsWeighted>(pt.family->kind()) ||
                std::holds_alternative<family::FlatDiagonal>(pt.family->kind());
  char buf[96];
  std::snprintf(buf, sizeof buf, "family(%s, z0=%.6g%+.6gi)", pt.family->kind_name(), z0.real(), z0.imag());
  auto eval = [pt](std::span<const cplx> x) { return family_derivation(pt, x); };
  return CentralizerHandle(eval, centralizer_kind::FamilyInduced{z0}, linear, buf);
}

// ---------------------------------------------------------------- indicator support

std::optional<SpaceSpec> interpolated_space(const FamilyPoint& pt, std::size_t dim) {
  const FamilySpec& fam = *pt.family;
  require_dims(fam, dim);
  const QuadratureConfig& quad = fam.quadrature();
  if (const auto* f = std::get_if<family::ArcsWeighted>(&fam.kind()))
    return SpaceSpec::weighted(f->base.p, Weight(combined_weight(*f, arc_measures(f->partition, pt.z0, quad))));
  if (const auto* f = std::get_if<family::ArcsLp>(&fam.kind())) {
    std::vector<double> mu = arc_measures(f->partition, pt.z0, quad);
    double recip = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) recip += mu[j] * f->exponents[j].reciprocal();
    return SpaceSpec::lp(recip > 0.0 ? Exponent::finite(std::max(1.0, 1.0 / recip)) : Exponent::infinity());
  }
  if (const auto* f = std::get_if<family::VariableExponent>(&fam.kind()))
    return SpaceSpec::lp(variable_exponent_at(*f, pt.z0));
  if (const auto* f = std::get_if<family::FlatDiagonal>(&fam.kind())) {
    RealVector w = f->diag.entries(dim);
    cplx zk = int_power(pt.z0, f->power);
    for (double& v : w) v = std::exp(-(zk * v).real());
    return SpaceSpec::weighted(Exponent::finite(2.0), Weight(w));
  }
  return std::nullopt;
}

SpaceSpec boundary_space(const FamilySpec& fam, double t, std::size_t dim) {
  require_dims(fam, dim);
  if (const auto* f = std::get_if<family::ArcsWeighted>(&fam.kind())) {
    const Weight& w = f->weights[f->partition.locate(t)];
    RealVector u = w.entries();
    if (f->base.weight)
      for (std::size_t i = 0; i < u.size(); ++i) u[i] *= (*f->base.weight)[i];
    return SpaceSpec::weighted(f->base.p, Weight(u));
  }
  if (const auto* f = std::get_if<family::ArcsLp>(&fam.kind())) return SpaceSpec::lp(f->exponents[f->partition.locate(t)]);
  throw UsageError("boundary_space: only arc families have piecewise-constant boundary spaces");
}

namespace {

const ArcPartition& arc_partition(const FamilySpec& fam) {
  if (const auto* f = std::get_if<family::ArcsWeighted>(&fam.kind())) return f->partition;
  if (const auto* f = std::get_if<family::ArcsLp>(&fam.kind())) return f->partition;
  throw UsageError("boundary indicator integrals need an arc family");
}

}  // namespace

double poisson_indicator_average(const FamilyPoint& pt, const DensityVector& f) {
  const FamilySpec& fam = *pt.family;
  const ArcPartition& part = arc_partition(fam);
  double acc = 0.0;
  for (std::size_t j = 0; j < part.size(); ++j) {
    Arc a = part.arc(j);
    double phi = indicator(boundary_space(fam, a.start(), f.size()), f);
    double mass = 0.0;
    for (const auto& n : detail::span_nodes(a.start(), a.length(), fam.quadrature(), pt.z0))
      mass += n.weight * poisson_kernel(pt.z0, n.t);
    acc += phi * mass / kTwoPi;
  }
  return acc;
}

cplx boundary_indicator_moment(const FamilySpec& fam, const DensityVector& f) {
  const ArcPartition& part = arc_partition(fam);
  cplx acc = 0.0;
  for (std::size_t j = 0; j < part.size(); ++j) {
    Arc a = part.arc(j);
    double phi = indicator(boundary_space(fam, a.start(), f.size()), f);
    cplx moment = 0.0;
    for (const auto& n : detail::span_nodes(a.start(), a.length(), fam.quadrature()))
      moment += n.weight * std::polar(1.0, -n.t);
    acc += phi * moment / kTwoPi;
  }
  return acc;
}

// ---------------------------------------------------------------- three arcs

double three_arc_sine_product(const std::array<double, 3>& c) {
  return std::sin((c[0] - c[1]) / 2) * std::sin((c[2] - c[1]) / 2) * std::sin((c[2] - c[0]) / 2);
}

namespace {

struct RawThreeArc {
  std::array<double, 3> alpha{};
  std::array<cplx, 3> beta{};
};

RawThreeArc raw_three_arc(const std::array<double, 3>& c, const QuadratureConfig& quad) {
  for (double t : c)
    if (!std::isfinite(t)) throw UsageError("three arcs: cut angles must be finite");
  if (!(c[0] <= c[1] && c[1] <= c[2] && c[2] <= c[0] + kTwoPi))
    throw UsageError("three arcs: cuts must be nondecreasing within one turn");
  RawThreeArc r;
  const std::array<double, 4> ends{c[0], c[1], c[2], c[0] + kTwoPi};
  for (int j = 0; j < 3; ++j) {
    double len = ends[j + 1] - ends[j];
    if (len > 0.0 && len < kTwoPi) {
      r.alpha[j] = harmonic_measure(0.0, Arc(wrap_angle(ends[j]), wrap_angle(ends[j + 1])), quad);
    } else {
      r.alpha[j] = len >= kTwoPi ? 1.0 : 0.0;
    }
    r.beta[j] = cplx(0.0, 1.0 / kTwoPi) * (std::polar(1.0, -ends[j + 1]) - std::polar(1.0, -ends[j]));
  }
  return r;
}

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::array<std::array<double, 3>, 3> system_matrix(const RawThreeArc& r) {
  std::array<std::array<double, 3>, 3> m{};
  for (int j = 0; j < 3; ++j) {
    m[0][j] = r.alpha[j];
    m[1][j] = r.beta[j].real();
    m[2][j] = r.beta[j].imag();
  }
  return m;
}

std::array<double, 3> cramer(const std::array<std::array<double, 3>, 3>& m, double det,
                             const std::array<double, 3>& rhs) {
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) {
    auto mk = m;
    for (int row = 0; row < 3; ++row) mk[row][k] = rhs[row];
    out[k] = det3(mk) / det;
  }
  return out;
}

}  // namespace

double three_arc_determinant(const std::array<double, 3>& cuts, const QuadratureConfig& quad) {
  return det3(system_matrix(raw_three_arc(cuts, quad)));
}

ThreeArcSystem three_arc_coefficients(const std::array<double, 3>& cuts, const QuadratureConfig& quad) {
  RawThreeArc r = raw_three_arc(cuts, quad);
  auto m = system_matrix(r);
  double det = det3(m);
  if (std::abs(det) < 1e-12) throw SingularSystemError("three arcs: degenerate partition (coinciding cut angles)");
  ThreeArcSystem s;
  s.alpha = r.alpha;
  s.beta = r.beta;
  s.det = det;
  s.a = cramer(m, det, {0.0, -1.0, 0.0});
  s.b = cramer(m, det, {0.0, 0.0, -1.0});
  return s;
}

ThreeArcSystem three_arc_coefficients(const ArcPartition& partition, const QuadratureConfig& quad) {
  if (partition.size() != 3) throw UsageError("three arcs: partition must have exactly 3 arcs");
  const auto& c = partition.cuts();
  return three_arc_coefficients(std::array<double, 3>{c[0], c[1], c[2]}, quad);
}

std::vector<Weight> weights_from_multiplier(std::span<const cplx> f, const ArcPartition& partition,
                                            const QuadratureConfig& quad) {
  require_finite(f, "weights_from_multiplier");
  ThreeArcSystem s = three_arc_coefficients(partition, quad);
  std::vector<Weight> out;
  for (int j = 0; j < 3; ++j) {
    RealVector w(f.size());
    // psi_j'(0) = 2 beta_j, so the exponent is halved to make Omega_0 = f.
    for (std::size_t i = 0; i < f.size(); ++i) w[i] = std::exp(0.5 * (s.a[j] * f[i].real() + s.b[j] * f[i].imag()));
    out.emplace_back(std::move(w));
  }
  return out;
}

}  // namespace cilab
