#pragma once

#include <optional>
#include <vector>

#include "cilab/complex_plane.hpp"

namespace cilab::detail {

struct QuadNode {
  double t;
  double weight;
};

/// Nodes over the angular span [start, start + length). Panels are 16-point rules; when `focus`
/// lies close to the circle the panels are graded geometrically toward its angle so the
/// peaked Poisson-type kernels stay resolved.
std::vector<QuadNode> span_nodes(double start, double length, const QuadratureConfig& quad,
                                 std::optional<cplx> focus = std::nullopt);

/// Splits [0, 2pi) at the given breakpoints into (start, length) spans.
std::vector<std::pair<double, double>> spans_from_breakpoints(std::vector<double> breakpoints);

}  // namespace cilab::detail
