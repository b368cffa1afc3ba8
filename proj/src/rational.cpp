#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "cilab/errors.hpp"
#include "cilab/types.hpp"

namespace cilab {

void require_finite(std::span<const cplx> x, const char* what) {
  for (const auto& v : x) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw UsageError(std::string(what) + ": entries must be finite");
    }
  }
}

void require_finite(std::span<const double> x, const char* what) {
  for (double v : x) {
    if (!std::isfinite(v)) throw UsageError(std::string(what) + ": entries must be finite");
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

namespace {

std::int64_t parse_int(const std::string& s, const std::string& whole) {
  if (s.empty()) throw ParseError("", "malformed rational '" + whole + "'");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError("", "malformed rational '" + whole + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') throw ParseError("", "malformed rational '" + whole + "'");
  }
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno == ERANGE) throw ParseError("", "rational out of range '" + whole + "'");
  return v;
}

std::int64_t pow10_checked(int e, const std::string& whole) {
  std::int64_t r = 1;
  for (int k = 0; k < e; ++k) {
    if (r > std::numeric_limits<std::int64_t>::max() / 10) {
      throw ParseError("", "too many digits in '" + whole + "'");
    }
    r *= 10;
  }
  return r;
}

}  // namespace

Rational Rational::parse(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ' && c != '\t') text.push_back(c);
  }
  if (text.empty()) throw ParseError("", "empty rational");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    return Rational(parse_int(text.substr(0, slash), raw), parse_int(text.substr(slash + 1), raw));
  }
  // decimal with optional exponent, converted exactly
  std::string mant = text;
  int exp10 = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    mant = text.substr(0, e);
    exp10 = static_cast<int>(parse_int(text.substr(e + 1), raw));
  }
  std::string digits = mant;
  if (const auto dot = mant.find('.'); dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<int>(mant.size() - dot - 1);
    if (digits == "-" || digits == "+" || digits.empty()) {
      throw ParseError("", "malformed rational '" + raw + "'");
    }
  }
  const std::int64_t n = parse_int(digits, raw);
  if (exp10 >= 0) {
    const std::int64_t scale = pow10_checked(exp10, raw);
    if (n != 0 && std::llabs(n) > std::numeric_limits<std::int64_t>::max() / scale) {
      throw ParseError("", "rational out of range '" + raw + "'");
    }
    return Rational(n * scale, 1);
  }
  return Rational(n, pow10_checked(-exp10, raw));
}

namespace {

__extension__ typedef __int128 i128;

Rational make_checked(i128 num, i128 den) {
  if (den == 0) throw UsageError("rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr i128 lim = std::numeric_limits<std::int64_t>::max();
  if (num > lim || num < -lim || den > lim) throw UsageError("rational arithmetic overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational operator+(const Rational& a, const Rational& b) {
  return make_checked(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make_checked(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw UsageError("rational division by zero");
  return make_checked(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace cilab
