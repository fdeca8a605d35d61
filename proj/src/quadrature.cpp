#include "weyl/quadrature.hpp"

#include "weyl/error.hpp"
#include "weyl/types.hpp"

#include <cmath>

namespace weyl::quadrature {

GaussRule gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    rule.nodes[lo] = -z;
    rule.nodes[hi] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

const GaussRule& gauss16() {
  static const GaussRule rule = gauss_legendre(16);
  return rule;
}

void append_composite(NodeSet& out, double a, double b, int panels, const GaussRule& rule) {
  if (panels < 1) throw DomainError("composite_nodes: need at least one panel");
  const double h = (b - a) / panels;
  const std::size_t q = rule.nodes.size();
  out.x.reserve(out.x.size() + q * static_cast<std::size_t>(panels));
  out.w.reserve(out.w.size() + q * static_cast<std::size_t>(panels));
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < q; ++i) {
      out.x.push_back(mid + 0.5 * h * rule.nodes[i]);
      out.w.push_back(0.5 * h * rule.weights[i]);
    }
  }
}

NodeSet composite_nodes(double a, double b, int panels, const GaussRule& rule) {
  NodeSet out;
  append_composite(out, a, b, panels, rule);
  return out;
}

double apply(std::span<const double> weights, std::span<const double> values) {
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * values[i];
  return s;
}

}  // namespace weyl::quadrature
