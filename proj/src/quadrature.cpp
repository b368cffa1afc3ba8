#include "quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cilab/errors.hpp"

namespace cilab {

void QuadratureConfig::validate() const {
  if (nodes_per_arc < 16) throw UsageError("quadrature needs at least 16 nodes per arc");
}

namespace detail {
namespace {

constexpr int kPanelOrder = 16;

struct GaussRule {
  std::array<double, kPanelOrder> x{};
  std::array<double, kPanelOrder> w{};
};

GaussRule make_gauss_rule() {
  GaussRule rule;
  const int n = kPanelOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.x[i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

}  // namespace

std::vector<QuadNode> span_nodes(double start, double length, const QuadratureConfig& quad,
                                 std::optional<cplx> focus) {
  quad.validate();
  const int panels = (quad.nodes_per_arc + kPanelOrder - 1) / kPanelOrder;
  std::vector<double> edges;
  edges.reserve(panels + 64);
  for (int k = 0; k <= panels; ++k) edges.push_back(length * k / panels);

  if (focus) {
    const double r = std::abs(*focus);
    const double gap = 1.0 - r;
    if (r > 0.5 && gap > 0.0) {
      const double rel = std::fmod(std::arg(*focus) - start + 2.0 * kTwoPi, kTwoPi);
      for (double c : {rel - kTwoPi, rel, rel + kTwoPi}) {
        for (double h = 0.25 * gap; h < length + kTwoPi; h *= 2.0) {
          for (double e : {c - h, c + h}) {
            if (e > 0.0 && e < length) edges.push_back(e);
          }
        }
        if (c > 0.0 && c < length) edges.push_back(c);
      }
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end(),
                              [&](double a, double b) { return b - a < 1e-15 * length; }),
                  edges.end());
    }
  }

  std::vector<QuadNode> nodes;
  nodes.reserve((edges.size() - 1) * (kPanelOrder + 1));
  const auto& g = gauss_rule();
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k], b = edges[k + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    if (quad.scheme == QuadratureScheme::GaussLegendre) {
      for (int i = 0; i < kPanelOrder; ++i) {
        nodes.push_back({start + mid + half * g.x[i], half * g.w[i]});
      }
    } else {
      const double h = (b - a) / kPanelOrder;
      for (int i = 0; i <= kPanelOrder; ++i) {
        const double w = (i == 0 || i == kPanelOrder) ? 0.5 * h : h;
        nodes.push_back({start + a + i * h, w});
      }
    }
  }
  return nodes;
}

std::vector<std::pair<double, double>> spans_from_breakpoints(std::vector<double> breakpoints) {
  for (double& b : breakpoints) b = wrap_angle(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  std::vector<std::pair<double, double>> spans;
  if (breakpoints.empty()) {
    spans.emplace_back(0.0, kTwoPi);
    return spans;
  }
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    const double a = breakpoints[k];
    const double b = (k + 1 < breakpoints.size()) ? breakpoints[k + 1] : breakpoints[0] + kTwoPi;
    spans.emplace_back(a, b - a);
  }
  return spans;
}

}  // namespace detail
}  // namespace cilab
