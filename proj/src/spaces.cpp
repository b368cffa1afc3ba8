#include "cilab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "cilab/errors.hpp"

namespace cilab {

namespace {
constexpr std::size_t kCompensatedFrom = 1000;
}

Exponent Exponent::finite(double p) {
  if (!std::isfinite(p)) {
    if (p > 0.0) return infinity();
    throw UsageError("exponent must be a number >= 1");
  }
  if (!(p >= 1.0)) throw UsageError("exponent must satisfy p >= 1");
  return Exponent(p);
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "oo") return infinity();
  const Rational r = Rational::parse(text);
  return finite(r.to_double());
}

Exponent Exponent::dual() const {
  if (infinite_) return Exponent(1.0);
  if (value_ == 1.0) return infinity();
  return Exponent(value_ / (value_ - 1.0));
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  // prefer the shortest representation that still round-trips
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, value_);
    if (std::strtod(shorter, nullptr) == value_) return shorter;
  }
  return buf;
}

Exponent dual_exponent(Exponent p) { return p.dual(); }

Weight::Weight(RealVector entries) : entries_(std::move(entries)) {
  for (double w : entries_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw UsageError("weights must be strictly positive and finite");
  }
}

double compensated_sum(std::span<const double> v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double lp_norm_of_moduli(Exponent p, std::span<const double> m) {
  double peak = 0.0;
  for (double v : m) peak = std::max(peak, v);
  if (peak == 0.0) return 0.0;
  if (p.is_infinite()) return peak;
  const double q = p.value();
  if (q == 1.0) {
    if (m.size() >= kCompensatedFrom) return compensated_sum(m);
    double s = 0.0;
    for (double v : m) s += v;
    return s;
  }
  // scale by the peak so large exponents cannot overflow
  RealVector terms(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) terms[i] = std::pow(m[i] / peak, q);
  double s = 0.0;
  if (m.size() >= kCompensatedFrom) {
    s = compensated_sum(terms);
  } else {
    for (double t : terms) s += t;
  }
  return peak * std::pow(s, 1.0 / q);
}

double norm(const SpaceSpec& space, std::span<const cplx> x) {
  RealVector m(x.size());
  if (space.weight) {
    if (space.weight->size() != x.size()) throw UsageError("norm: weight and vector dimensions differ");
    for (std::size_t i = 0; i < x.size(); ++i) m[i] = std::abs((*space.weight)[i] * x[i]);
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) m[i] = std::abs(x[i]);
  }
  return lp_norm_of_moduli(space.p, m);
}

}  // namespace cilab
