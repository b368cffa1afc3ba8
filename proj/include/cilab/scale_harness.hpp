#pragma once

#include <vector>

#include "cilab/families.hpp"
#include "cilab/table.hpp"

namespace cilab {

struct ScaleSample {
  double t = 0.0;
  double norm = 0.0;
  /// One-sided differences (N(t) - N(t-h))/h and (N(t+h) - N(t))/h.
  double fd_derivative_left = 0.0;
  double fd_derivative_right = 0.0;
  double omega_norm = 0.0;
  /// log N(t-h) + log N(t+h) - 2 log N(t).
  double logconv_residual = 0.0;
  /// Richardson pass with step h/2: 2 D(h/2) - D(h) for each side.
  double fd_left_extrapolated = 0.0;
  double fd_right_extrapolated = 0.0;
  /// max over both sides of |D(h) - D(h/2)| / (h/2), the constant C in |D(h) - N'| <= C h.
  double fd_error_constant = 0.0;
};

struct SweepOptions {
  double fd_step = 1e-4;
  double tol = 1e-12;
};

/// Samples t -> ||x||_t of a pair over a grid inside (0, 1).
std::vector<ScaleSample> scale_sweep(const PairScale& pair, std::span<const cplx> x, const std::vector<double>& grid,
                                     const SweepOptions& opts = {});
Table sweep_table(const std::vector<ScaleSample>& samples);

struct FamilySweepOptions {
  double tol = 1e-12;
  /// Dimensions for the flat-vector boundedness columns ratio_<dim>.
  std::vector<std::size_t> ladder;
  std::uint64_t seed = 7;
  /// Keep |z| < 1 - margin.
  double margin = 1e-6;
};

/// Columns: z_re, z_im, norm, omega_norm, then ratio_<dim> per ladder entry.
Table family_sweep(const FamilySpec& family, std::span<const cplx> x, const std::vector<cplx>& z_grid,
                   const FamilySweepOptions& opts = {});

}  // namespace cilab
