#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cilab {

using cplx = std::complex<double>;

/// Finite complex sequence; the element type of every space in the lab.
using ComplexVector = std::vector<cplx>;
using RealVector = std::vector<double>;

/// Throws UsageError if any entry is NaN or infinite.
void require_finite(std::span<const cplx> x, const char* what);
void require_finite(std::span<const double> x, const char* what);

/// Exact rational with a positive denominator, always reduced.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "3", "-1/2", "0.25", "1e-3" (decimal forms are converted exactly).
  static Rational parse(const std::string& text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  /// Arithmetic is exact; results that overflow int64 throw UsageError.
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }
  bool is_zero() const noexcept { return num_ == 0; }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace cilab
