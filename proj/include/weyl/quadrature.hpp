#pragma once

#include <span>
#include <vector>

namespace weyl::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule with `order` points, computed by Newton iteration on P_order.
GaussRule gauss_legendre(int order);

/// Shared 16-point rule.
const GaussRule& gauss16();

/// Composite Gauss-Legendre nodes/weights on [a, b] split into `panels`
/// equal panels.
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
};

NodeSet composite_nodes(double a, double b, int panels, const GaussRule& rule = gauss16());

/// Appends the panels of [a, b] to `out`.
void append_composite(NodeSet& out, double a, double b, int panels, const GaussRule& rule = gauss16());

/// Sum of w_i f(x_i) with f pre-evaluated.
double apply(std::span<const double> weights, std::span<const double> values);

}  // namespace weyl::quadrature
