#pragma once

#include <optional>
#include <string>

#include "cilab/types.hpp"

namespace cilab {

/// Exponent p in [1, inf]; infinity is a distinguished value, not a large float.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinity() noexcept { return Exponent(); }
  /// Parses "2", "4/3", "1.5", "inf".
  static Exponent parse(const std::string& text);

  bool is_infinite() const noexcept { return infinite_; }
  /// Only meaningful when finite.
  double value() const noexcept { return value_; }
  /// 1/p, with 1/inf = 0.
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }
  Exponent dual() const;
  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent() = default;
  explicit Exponent(double p) : value_(p), infinite_(false) {}
  double value_ = 0.0;
  bool infinite_ = true;
};

/// 1/p + 1/q = 1.
Exponent dual_exponent(Exponent p);

/// Strictly positive finite weight.
class Weight {
 public:
  explicit Weight(RealVector entries);
  static Weight ones(std::size_t dim) { return Weight(RealVector(dim, 1.0)); }

  std::size_t size() const noexcept { return entries_.size(); }
  const RealVector& entries() const noexcept { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }

  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  RealVector entries_;
};

/// l_p, or the weighted space X(w) with ||x||_w = ||w x||_X.
struct SpaceSpec {
  Exponent p = Exponent::finite(2.0);
  std::optional<Weight> weight{};

  static SpaceSpec lp(Exponent p) { return SpaceSpec{p, std::nullopt}; }
  static SpaceSpec weighted(Exponent p, Weight w) { return SpaceSpec{p, std::move(w)}; }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

/// Weighted l_p norm of a complex vector. Sums use compensated accumulation from 1000 entries on.
double norm(const SpaceSpec& space, std::span<const cplx> x);
/// Unweighted l_p norm of nonnegative moduli.
double lp_norm_of_moduli(Exponent p, std::span<const double> moduli);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> v);

}  // namespace cilab
