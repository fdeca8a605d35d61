#pragma once

#include "weyl/analysis.hpp"
#include "weyl/manifolds.hpp"
#include "weyl/types.hpp"

#include <span>
#include <vector>

namespace weyl {

struct RemainderSample {
  double lambda = 0.0;
  Point x;
  Point y;
  double dist = 0.0;
  double leading = 0.0;
  double exact = 0.0;
  double remainder = 0.0;
  DerivIndex deriv;
};

/// d_x^alpha d_y^beta of (lambda^n / (2 pi)^n) B_n(lambda |w|), w = exp_x^{-1}(y).
/// Torus: any d of order <= 2. Sphere: d = 0 only, with w the geodesic distance.
double leading_term(const ModelManifold& m, double lambda, const Point& x, const Point& y,
                    const DerivIndex& d = {});

/// lambda-derivative of leading_term: d_x^alpha d_y^beta of
/// lambda^{n-1} (2 pi)^{-n/2} J_{(n-2)/2}(lambda |w|) / (lambda |w|)^{(n-2)/2}.
double leading_term_rate(const ModelManifold& m, double lambda, const Point& x, const Point& y,
                         const DerivIndex& d = {});

RemainderSample remainder(const Spectrum& spectrum, double lambda, const Point& x, const Point& y,
                          const DerivIndex& d = {});
RemainderSample remainder(const ModelManifold& m, double lambda, const Point& x, const Point& y,
                          const DerivIndex& d = {});

/// How a scan samples lambda. `grid`: the grid points only. `window_sup`: entry i
/// is the sup over [grid[i-1], grid[i]] (one-sided limits at every level inside),
/// entry 0 the value at grid[0].
enum class LambdaSampling { grid, window_sup };

/// sup over pairs of |remainder| for each lambda in the (increasing) grid.
/// Pairs must lie within half the injectivity radius.
ScanReport remainder_scan(const ModelManifold& m, std::span<const double> lambda_grid,
                          std::span<const PointPair> pairs, const DerivIndex& d = {},
                          LambdaSampling sampling = LambdaSampling::window_sup);

/// sup over pairs of |E_lambda(x, y)|; every pair must be at distance >= eps.
ScanReport offdiagonal_scan(const ModelManifold& m, std::span<const double> lambda_grid, double eps,
                            std::span<const PointPair> pairs, const DerivIndex& d = {},
                            LambdaSampling sampling = LambdaSampling::window_sup);

struct ClusterBesselRow {
  double dist = 0.0;
  double cluster = 0.0;
  double prediction = 0.0;
  double abs_error = 0.0;
  /// abs_error / cluster(x0, x0).
  double rel_error = 0.0;
};

struct ClusterBesselTable {
  double lambda = 0.0;
  double width = 1.0;
  int windows = 1;
  double diagonal = 0.0;
  std::vector<ClusterBesselRow> rows;
};

/// width * (leading_term_rate at the mean sqrt-eigenvalue of the window).
/// Throws SpectrumError if the window is empty.
double bessel_cluster_prediction(const Spectrum& spectrum, double lambda, double width, const Point& x,
                                 const Point& y, const DerivIndex& d = {});

/// Cluster kernel along a geodesic from x0 against its Bessel prediction.
/// Values are averaged over `windows` consecutive windows (lambda + j width, lambda + (j+1) width].
/// `direction` as in ModelManifold::geodesic_point.
ClusterBesselTable cluster_vs_bessel(const ModelManifold& m, double lambda, double width, const Point& x0,
                                     const Vec& direction, std::span<const double> dist_grid,
                                     const DerivIndex& d = {}, int windows = 1);

}  // namespace weyl
