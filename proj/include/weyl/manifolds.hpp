#pragma once

#include "weyl/lattice.hpp"
#include "weyl/types.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace weyl {

/// Distance below which lambda counts as sitting on a sqrt-eigenvalue.
inline constexpr double kSpectrumTolerance = 1e-9;

struct FlatTorus {
  Lattice lattice;
};

struct RoundSphere2 {
  double radius = 1.0;
};

/// A flat torus or the round 2-sphere: the two geometries with exact spectra.
/// Sphere points are (colatitude, longitude).
class ModelManifold {
 public:
  static ModelManifold torus(Lattice lattice);
  /// Throws DomainError for a nonpositive radius.
  static ModelManifold sphere2(double radius = 1.0);

  [[nodiscard]] bool is_torus() const { return std::holds_alternative<FlatTorus>(kind_); }
  [[nodiscard]] int dim() const;
  [[nodiscard]] double volume() const;
  /// Throws UnsupportedError on the sphere.
  [[nodiscard]] const Lattice& lattice() const;
  [[nodiscard]] double sphere_radius() const;
  [[nodiscard]] double injectivity_radius() const;
  [[nodiscard]] double distance(const Point& x, const Point& y) const;
  /// Point reached from x after `dist` along a unit-speed geodesic. On the
  /// torus `direction` is a vector in R^n; on the sphere its first entry is
  /// the initial bearing (0 heads south along the meridian).
  [[nodiscard]] Point geodesic_point(const Point& x, const Vec& direction, double dist) const;
  void validate_point(const Point& p) const;
  [[nodiscard]] std::string describe() const;

 private:
  explicit ModelManifold(std::variant<FlatTorus, RoundSphere2> kind) : kind_(std::move(kind)) {}
  std::variant<FlatTorus, RoundSphere2> kind_;
};

struct EigenLevel {
  double sqrt_eigenvalue = 0.0;
  std::size_t multiplicity = 0;
  /// Torus: dual points k with |k| = sqrt_eigenvalue.
  std::vector<DualPoint> modes;
  /// Sphere: degree l; -1 on the torus.
  int degree = -1;
};

/// All levels with sqrt_eigenvalue <= lambda_max, ascending.
std::vector<EigenLevel> eigenlevels(const ModelManifold& m, double lambda_max,
                                    std::size_t cap = kDefaultEnumerationCap);

/// Eigendata materialized once up to lambda_max; spectral-function and
/// cluster evaluations read prefixes of it.
class Spectrum {
 public:
  Spectrum(ModelManifold m, double lambda_max, std::size_t cap = kDefaultEnumerationCap);

  [[nodiscard]] const ModelManifold& manifold() const { return manifold_; }
  [[nodiscard]] double lambda_max() const { return lambda_max_; }
  /// Torus modes sorted by norm (empty on the sphere).
  [[nodiscard]] std::span<const DualPoint> modes() const { return modes_; }
  /// Torus modes with lo < |k| <= hi.
  [[nodiscard]] std::span<const DualPoint> modes_in(double lo, double hi) const;
  /// Index one past the last mode with |k| <= lambda.
  [[nodiscard]] std::size_t mode_end(double lambda) const;
  /// #{j : lambda_j <= lambda}, with multiplicity.
  [[nodiscard]] std::size_t count(double lambda) const;

  /// Throws SpectrumError when lambda is within kSpectrumTolerance of a level.
  void require_off_spectrum(double lambda) const;

  /// d_x^alpha d_y^beta E_lambda(x, y).
  [[nodiscard]] double spectral_function(double lambda, const Point& x, const Point& y,
                                         const DerivIndex& d = {}) const;
  /// d_x^alpha d_y^beta E_(lambda, lambda + width](x, y).
  [[nodiscard]] double cluster_kernel(double lambda, double width, const Point& x, const Point& y,
                                      const DerivIndex& d = {}) const;

 private:
  double sphere_sum(double lo, double hi, const Point& x, const Point& y) const;
  void require_covered(double lambda) const;

  ModelManifold manifold_;
  double lambda_max_;
  std::vector<DualPoint> modes_;
  std::vector<double> norms_;
};

double spectral_function(const ModelManifold& m, double lambda, const Point& x, const Point& y,
                         const DerivIndex& d = {});

double cluster_kernel(const ModelManifold& m, double lambda, double width, const Point& x,
                      const Point& y, const DerivIndex& d = {});

/// Sphere helper: sqrt(l (l + 1)) / R.
double sphere_level(int l, double radius = 1.0);

}  // namespace weyl
