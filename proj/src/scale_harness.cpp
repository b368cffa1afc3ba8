#include "cilab/scale_harness.hpp"

#include <algorithm>
#include <cmath>

#include "cilab/errors.hpp"
#include "parallel.hpp"

namespace cilab {

std::vector<ScaleSample> scale_sweep(const PairScale& pair, std::span<const cplx> x, const std::vector<double>& grid,
                                     const SweepOptions& opts) {
  const double h = opts.fd_step;
  if (!(h > 0.0 && h < 0.25)) throw UsageError("scale_sweep: fd_step must lie in (0, 0.25)");
  if (grid.empty()) throw UsageError("scale_sweep: empty grid");
  for (double t : grid)
    if (!(t - 2 * h > 0.0 && t + 2 * h < 1.0)) throw UsageError("scale_sweep: grid point too close to {0, 1}");
  if (x.size() != pair.dim) throw UsageError("scale_sweep: dimension mismatch");

  std::vector<ScaleSample> out(grid.size());
  detail::parallel_for(grid.size(), [&](std::size_t k) {
    const double t = grid[k];
    auto n = [&](double s) { return calderon_norm(pair, s, x, opts.tol); };
    const double n0 = n(t), nl = n(t - h), nr = n(t + h), nl2 = n(t - h / 2), nr2 = n(t + h / 2);
    ScaleSample s;
    s.t = t;
    s.norm = n0;
    s.fd_derivative_left = (n0 - nl) / h;
    s.fd_derivative_right = (nr - n0) / h;
    const double dl2 = (n0 - nl2) / (h / 2), dr2 = (nr2 - n0) / (h / 2);
    s.fd_left_extrapolated = 2 * dl2 - s.fd_derivative_left;
    s.fd_right_extrapolated = 2 * dr2 - s.fd_derivative_right;
    s.fd_error_constant =
        std::max(std::abs(s.fd_derivative_left - dl2), std::abs(s.fd_derivative_right - dr2)) / (h / 2);
    s.omega_norm = calderon_norm(pair, t, pair_derivation(pair, t, x, opts.tol), opts.tol);
    s.logconv_residual = n0 > 0.0 ? std::log(nl) + std::log(nr) - 2 * std::log(n0) : 0.0;
    out[k] = s;
  });
  return out;
}

Table sweep_table(const std::vector<ScaleSample>& samples) {
  Table t;
  t.columns = {"t", "norm", "fd_left", "fd_right", "omega_norm", "logconv_residual"};
  for (const auto& s : samples)
    t.add_row({s.t, s.norm, s.fd_derivative_left, s.fd_derivative_right, s.omega_norm, s.logconv_residual});
  return t;
}

Table family_sweep(const FamilySpec& family, std::span<const cplx> x, const std::vector<cplx>& z_grid,
                   const FamilySweepOptions& opts) {
  if (z_grid.empty()) throw UsageError("family_sweep: empty z grid");
  for (cplx z : z_grid)
    if (!(std::abs(z) < 1.0 - opts.margin)) throw UsageError("family_sweep: grid point too close to the circle");
  auto shared = std::make_shared<const FamilySpec>(family);

  Table table;
  table.columns = {"z_re", "z_im", "norm", "omega_norm"};
  for (std::size_t d : opts.ladder) table.columns.push_back("ratio_" + std::to_string(d));

  std::vector<std::vector<Cell>> rows(z_grid.size());
  detail::parallel_for(z_grid.size(), [&](std::size_t k) {
    FamilyPoint pt(shared, z_grid[k]);
    std::vector<Cell> row{z_grid[k].real(), z_grid[k].imag(), family_norm(pt, x, opts.tol),
                          family_norm(pt, family_derivation(pt, x, opts.tol), opts.tol)};
    if (!opts.ladder.empty()) {
      ProbeOptions po;
      po.seed = opts.seed;
      po.flat_only = true;
      auto space_at = [&](std::size_t n) {
        auto s = interpolated_space(pt, n);
        if (!s) throw UsageError("family_sweep: boundedness columns need a family with a closed-form space");
        return *s;
      };
      ProbeReport rep = boundedness_probe(CentralizerHandle::family_induced(shared, z_grid[k]), space_at, opts.ladder, po);
      for (const auto& r : rep.rows) row.push_back(r.max_ratio);
    }
    rows[k] = std::move(row);
  });
  for (auto& r : rows) table.add_row(std::move(r));
  return table;
}

}  // namespace cilab
