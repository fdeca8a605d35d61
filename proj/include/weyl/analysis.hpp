#pragma once

#include "weyl/manifolds.hpp"
#include "weyl/types.hpp"

#include <span>
#include <variant>
#include <vector>

namespace weyl {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  std::size_t grid_size = 0;
};

/// Least squares of log y on log x. Needs >= 3 points, all positive, xs increasing.
FitResult loglog_fit(std::span<const double> xs, std::span<const double> ys);

/// Per-lambda sup values of a scan plus their log-log fit. `normalized` holds
/// a scan-specific rescaling of sup_values (empty when not applicable).
struct ScanReport {
  std::vector<double> lambda_grid;
  std::vector<double> sup_values;
  std::vector<double> normalized;
  FitResult fit;
  double fitted_exponent = 0.0;
  double fit_residual = 0.0;

  /// max / min of `normalized`.
  [[nodiscard]] double normalized_spread() const;
};

/// Builds a report from values on a grid and fits the exponent.
ScanReport make_scan_report(std::vector<double> grid, std::vector<double> values,
                            std::vector<double> normalized = {});

/// Evenly or log-evenly spaced grid, endpoints included.
std::vector<double> make_grid(double lo, double hi, std::size_t count, bool log_spaced);

/// sum_{k >= 0} (1 + |lambda - k|)^{-N} k^p. Terms beyond a cutoff are
/// replaced by their Euler-Maclaurin tail. Needs N > p + 1.
double localized_sum(double lambda, int N, double p);

/// Integral over [1, inf) of (1 + |lambda - r|)^{-N} (1 + r)^p; needs N >= p + 2.
double localized_integral(double lambda, int N, double p);

/// localized_sum(lambda, N, p) / lambda^p over the grid (in `normalized`).
ScanReport localized_sum_ratio_scan(std::span<const double> lambda_grid, int N, double p);

struct FixedWidth {
  double A = 1.0;
};
/// A = 1 / log(lambda).
struct OneOverLog {};
using WidthRule = std::variant<FixedWidth, OneOverLog>;

double window_width(const WidthRule& rule, double lambda);

/// Sup over `points` of the diagonal window sum sum_{lambda_j in (lambda, lambda + A]}
/// |d^alpha phi_j(x)|^2, with alpha = d.alpha. `normalized` holds
/// value / lambda^{n - 1 + 2|alpha|}, times log(lambda) for the one-over-log rule.
ScanReport cluster_sup_scan(const ModelManifold& m, std::span<const double> lambda_grid,
                            const WidthRule& rule, const DerivIndex& d, std::span<const Point> points);

}  // namespace weyl
