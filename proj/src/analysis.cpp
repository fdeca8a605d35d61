#include "weyl/analysis.hpp"

#include "weyl/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace weyl {

FitResult loglog_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw PreconditionError("loglog_fit: xs and ys differ in length");
  if (xs.size() < 3) throw PreconditionError("loglog_fit: need at least 3 points");
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw DomainError("loglog_fit: inputs must be positive (index " + std::to_string(i) + ")");
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) throw PreconditionError("loglog_fit: xs must be strictly increasing");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  FitResult f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.grid_size = n;
  for (std::size_t i = 0; i < n; ++i) {
    f.max_abs_residual = std::max(f.max_abs_residual, std::abs(ly[i] - f.intercept - f.slope * lx[i]));
  }
  return f;
}

double ScanReport::normalized_spread() const {
  if (normalized.empty()) throw PreconditionError("scan report has no normalized values");
  const auto [lo, hi] = std::minmax_element(normalized.begin(), normalized.end());
  return *hi / *lo;
}

ScanReport make_scan_report(std::vector<double> grid, std::vector<double> values,
                            std::vector<double> normalized) {
  ScanReport r;
  r.fit = loglog_fit(grid, values);
  r.fitted_exponent = r.fit.slope;
  r.fit_residual = r.fit.max_abs_residual;
  r.lambda_grid = std::move(grid);
  r.sup_values = std::move(values);
  r.normalized = std::move(normalized);
  return r;
}

std::vector<double> make_grid(double lo, double hi, std::size_t count, bool log_spaced) {
  if (count == 0) throw PreconditionError("grid count must be positive");
  if (count == 1) return {lo};
  if (!(hi > lo)) throw PreconditionError("grid requires lo < hi");
  if (log_spaced && !(lo > 0.0)) throw PreconditionError("log grid requires lo > 0");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    g[i] = log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

namespace {

void require_localized_args(double lambda, int N, double p, const char* what) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
    throw DomainError(std::string(what) + ": lambda must be >= 1");
  }
  if (!(p >= 0.0)) throw DomainError(std::string(what) + ": p must be >= 0");
  if (N < 2) throw DomainError(std::string(what) + ": N must be >= 2");
}

constexpr double kDirectTerms = 4000.0;

}  // namespace

double localized_sum(double lambda, int N, double p) {
  require_localized_args(lambda, N, p, "localized_sum");
  if (!(N > p + 1.0)) {
    throw DomainError("localized_sum: diverges unless N > p + 1 (N = " + std::to_string(N) +
                      ", p = " + std::to_string(p) + ")");
  }
  const auto term = [&](double k) { return std::pow(1.0 + std::abs(lambda - k), -N) * std::pow(k, p); };
  const double cutoff = std::ceil(lambda) + kDirectTerms;
  double sum = 0.0;
  for (double k = 0.0; k < cutoff; k += 1.0) sum += term(k);
  // sum_{k >= K} f(k) = int_K^inf f + f(K)/2 - f'(K)/12 + O(f'''(K)).
  const double fk = term(cutoff);
  const double dfk = fk * (-N / (1.0 + cutoff - lambda) + p / cutoff);
  boost::math::quadrature::exp_sinh<double> integrator;
  const double tail = integrator.integrate(
      [&](double u) { return std::pow(1.0 + cutoff - lambda + u, -N) * std::pow(cutoff + u, p); }, 0.0,
      std::numeric_limits<double>::infinity());
  return sum + tail + 0.5 * fk - dfk / 12.0;
}

double localized_integral(double lambda, int N, double p) {
  require_localized_args(lambda, N, p, "localized_integral");
  if (!(N >= p + 2.0)) throw DomainError("localized_integral: requires N >= p + 2");
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const auto f = [&](double r) { return std::pow(1.0 + std::abs(lambda - r), -N) * std::pow(1.0 + r, p); };
  double err = 0.0;
  double total = 0.0;
  if (lambda > 1.0) {
    total += GK::integrate(f, 1.0, lambda, 20, 1e-12, &err);
    if (err > 1e-10 * std::max(1.0, std::abs(total))) {
      throw NumericError("localized_integral: quadrature error estimate " + std::to_string(err));
    }
  }
  const double tail = GK::integrate(f, lambda, std::numeric_limits<double>::infinity(), 20, 1e-12, &err);
  if (err > 1e-10 * std::max(1.0, std::abs(tail))) {
    throw NumericError("localized_integral: quadrature error estimate " + std::to_string(err));
  }
  return total + tail;
}

ScanReport localized_sum_ratio_scan(std::span<const double> lambda_grid, int N, double p) {
  std::vector<double> grid(lambda_grid.begin(), lambda_grid.end());
  std::vector<double> sums(grid.size()), ratios(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sums[i] = localized_sum(grid[i], N, p);
    ratios[i] = sums[i] / std::pow(grid[i], p);
  }
  return make_scan_report(std::move(grid), std::move(sums), std::move(ratios));
}

double window_width(const WidthRule& rule, double lambda) {
  if (const auto* f = std::get_if<FixedWidth>(&rule)) {
    if (!(f->A > 0.0)) throw DomainError("window width must be positive");
    return f->A;
  }
  if (!(lambda > 1.0)) throw DomainError("one-over-log width needs lambda > 1");
  return 1.0 / std::log(lambda);
}

ScanReport cluster_sup_scan(const ModelManifold& m, std::span<const double> lambda_grid,
                            const WidthRule& rule, const DerivIndex& d, std::span<const Point> points) {
  if (lambda_grid.empty()) throw PreconditionError("cluster_sup_scan: empty lambda grid");
  if (points.empty()) throw PreconditionError("cluster_sup_scan: empty point grid");
  DerivIndex dd;
  dd.alpha = d.alpha;
  dd.beta = d.alpha;
  dd.validate(m.dim());
  if (!m.is_torus() && !dd.is_zero()) {
    throw UnsupportedError("cluster_sup_scan: derivatives need a torus");
  }
  double top = 0.0;
  for (double l : lambda_grid) top = std::max(top, l + window_width(rule, l));
  const Spectrum spec(m, top + 2.0 * kSpectrumTolerance);
  const bool log_rule = std::holds_alternative<OneOverLog>(rule);
  const double power = m.dim() - 1 + 2 * d.order_x();
  std::vector<double> values(lambda_grid.size()), normalized(lambda_grid.size());
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    const double l = lambda_grid[i];
    const double a = window_width(rule, l);
    double sup = 0.0;
    for (const auto& x : points) sup = std::max(sup, spec.cluster_kernel(l, a, x, x, dd));
    values[i] = sup;
    normalized[i] = sup / std::pow(l, power) * (log_rule ? std::log(l) : 1.0);
  }
  return make_scan_report(std::vector<double>(lambda_grid.begin(), lambda_grid.end()), std::move(values),
                          std::move(normalized));
}

}  // namespace weyl
