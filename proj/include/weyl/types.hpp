#pragma once

#include <Eigen/Dense>

#include <array>
#include <numbers>

namespace weyl {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Dimensions are 2 or 3 throughout; fixed max sizes keep these off the heap.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;
using IVec = Eigen::Matrix<long, Eigen::Dynamic, 1, 0, 3, 1>;

/// A point on a model manifold. Torus: Cartesian coordinates in the universal
/// cover. Sphere: (colatitude, longitude).
using Point = Vec;

struct PointPair {
  Point x;
  Point y;
};

/// Multi-indices for d_x^alpha d_y^beta, total order at most 2.
struct DerivIndex {
  std::array<int, 3> alpha{0, 0, 0};
  std::array<int, 3> beta{0, 0, 0};

  [[nodiscard]] int order_x() const { return alpha[0] + alpha[1] + alpha[2]; }
  [[nodiscard]] int order_y() const { return beta[0] + beta[1] + beta[2]; }
  [[nodiscard]] int total() const { return order_x() + order_y(); }
  [[nodiscard]] bool is_zero() const { return total() == 0; }

  static DerivIndex none() { return {}; }
  /// |alpha| = ax and |beta| = ay, both along coordinate `axis`.
  static DerivIndex along(int axis, int ax, int ay) {
    DerivIndex d;
    d.alpha[static_cast<std::size_t>(axis)] = ax;
    d.beta[static_cast<std::size_t>(axis)] = ay;
    return d;
  }

  /// Throws PreconditionError when negative, above order 2, or using an axis >= dim.
  void validate(int dim) const;
};

}  // namespace weyl
