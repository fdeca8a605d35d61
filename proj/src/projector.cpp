#include "weyl/projector.hpp"

#include "weyl/error.hpp"
#include "weyl/kernels.hpp"
#include "weyl/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace weyl {

namespace {

using specfun::BesselOrder;
using specfun::bessel_ratio;

// d_w^gamma of c F_nu(s |w|), F_nu(r) = J_nu(r) / r^nu, |gamma| <= 2.
// Uses F_nu'(r) = -r F_{nu+1}(r).
double radial_jet(double c, int twice_nu, double s, const Vec& w, const std::array<int, 3>& gamma) {
  const double r = s * w.norm();
  int order = 0;
  int i = -1, j = -1;
  for (int a = 0; a < 3; ++a) {
    for (int k = 0; k < gamma[static_cast<std::size_t>(a)]; ++k) {
      (i < 0 ? i : j) = a;
      ++order;
    }
  }
  if (order == 0) return c * bessel_ratio(BesselOrder::half(twice_nu), r);
  const double f1 = bessel_ratio(BesselOrder::half(twice_nu + 2), r);
  if (order == 1) return -c * s * s * w(i) * f1;
  const double f2 = bessel_ratio(BesselOrder::half(twice_nu + 4), r);
  return -c * s * s * ((i == j ? f1 : 0.0) - s * s * w(i) * w(j) * f2);
}

struct Separation {
  Vec w;
  int dim = 2;
};

// Torus: shortest lift of y - x. Sphere: a 1-vector holding the geodesic distance.
Separation separation(const ModelManifold& m, const Point& x, const Point& y, const DerivIndex& d) {
  d.validate(m.dim());
  if (m.is_torus()) return {torus_log(m.lattice(), x, y), m.dim()};
  if (!d.is_zero()) throw UnsupportedError("sphere leading term is available for zero order only");
  Vec w(1);
  w(0) = m.distance(x, y);
  return {w, 2};
}

double jet(const ModelManifold& m, double c, int twice_nu, double lambda, const Point& x, const Point& y,
           const DerivIndex& d) {
  const Separation sep = separation(m, x, y, d);
  std::array<int, 3> gamma{};
  for (std::size_t a = 0; a < 3; ++a) gamma[a] = d.alpha[a] + d.beta[a];
  const double sign = d.order_x() % 2 == 0 ? 1.0 : -1.0;
  return sign * radial_jet(c, twice_nu, lambda, sep.w, gamma);
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive and finite");
}

void require_increasing(std::span<const double> grid) {
  if (grid.empty()) throw PreconditionError("lambda grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_lambda(grid[i]);
    if (i > 0 && !(grid[i] > grid[i - 1])) throw PreconditionError("lambda grid must be strictly increasing");
  }
}

// A lambda at which E is sampled: `end` modes on the torus, or `eval` on the sphere.
// `mu` is where the subtracted term is evaluated.
struct LadderPoint {
  double mu = 0.0;
  double eval = 0.0;
  std::size_t end = 0;
  std::size_t window = 0;
};

// E jumps only at levels, so the one-sided limits at every level in
// (grid[i-1], grid[i]] plus both endpoints see the sup over the window.
std::vector<LadderPoint> ladder_points(const Spectrum& spec, std::span<const double> grid, LambdaSampling sampling) {
  for (double l : grid) spec.require_off_spectrum(l);
  const ModelManifold& m = spec.manifold();
  const auto modes = spec.modes();
  std::vector<LadderPoint> pts;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (sampling == LambdaSampling::window_sup && i > 0) {
      const double lo = grid[i - 1];
      pts.push_back({lo, lo, spec.mode_end(lo), i});
      if (m.is_torus()) {
        std::size_t k = spec.mode_end(lo);
        const std::size_t stop = spec.mode_end(grid[i]);
        while (k < stop) {
          const double t = modes[k].norm;
          const std::size_t k0 = k;
          while (k < stop && modes[k].norm <= t * (1.0 + 1e-12)) ++k;
          pts.push_back({t, t, k0, i});
          pts.push_back({t, t, k, i});
        }
      } else {
        const double r = m.sphere_radius();
        for (int l = 0; sphere_level(l, r) <= grid[i]; ++l) {
          const double t = sphere_level(l, r);
          if (t <= lo) continue;
          pts.push_back({t, t - 1e-7, 0, i});
          pts.push_back({t, std::min(t + 1e-7, grid[i]), 0, i});
        }
      }
    }
    pts.push_back({grid[i], grid[i], spec.mode_end(grid[i]), i});
  }
  return pts;
}

// Per window, sup over ladder points of |E(x, y) - subtract(mu)|; one pass over the modes on the torus.
std::vector<double> window_sups(const Spectrum& spec, std::span<const double> grid, const Point& x, const Point& y,
                                const DerivIndex& d, LambdaSampling sampling,
                                const std::function<double(double)>& subtract) {
  const ModelManifold& m = spec.manifold();
  m.validate_point(x);
  m.validate_point(y);
  d.validate(m.dim());
  const auto pts = ladder_points(spec, grid, sampling);
  std::vector<double> exact(pts.size());
  if (m.is_torus()) {
    std::vector<std::size_t> ends(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) ends[j] = pts[j].end;
    exact = kernels::omp::prefix_mode_sums(spec.modes(), y - x, d, ends);
    for (auto& v : exact) v /= m.volume();
  } else {
    for (std::size_t j = 0; j < pts.size(); ++j) exact[j] = spec.spectral_function(pts[j].eval, x, y, d);
  }
  std::vector<double> sup(grid.size(), 0.0);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const double v = std::abs(exact[j] - subtract(pts[j].mu));
    sup[pts[j].window] = std::max(sup[pts[j].window], v);
  }
  return sup;
}

}  // namespace

double leading_term(const ModelManifold& m, double lambda, const Point& x, const Point& y,
                    const DerivIndex& d) {
  require_lambda(lambda);
  const int n = m.dim();
  const double c = std::pow(lambda, n) * std::pow(kTwoPi, 0.5 * n) / std::pow(kTwoPi, n);
  return jet(m, c, n, lambda, x, y, d);
}

double leading_term_rate(const ModelManifold& m, double lambda, const Point& x, const Point& y,
                         const DerivIndex& d) {
  require_lambda(lambda);
  const int n = m.dim();
  const double c = std::pow(lambda, n - 1) * std::pow(kTwoPi, -0.5 * n);
  return jet(m, c, n - 2, lambda, x, y, d);
}

RemainderSample remainder(const Spectrum& spectrum, double lambda, const Point& x, const Point& y,
                          const DerivIndex& d) {
  RemainderSample s;
  s.lambda = lambda;
  s.x = x;
  s.y = y;
  s.deriv = d;
  s.dist = spectrum.manifold().distance(x, y);
  s.leading = leading_term(spectrum.manifold(), lambda, x, y, d);
  s.exact = spectrum.spectral_function(lambda, x, y, d);
  s.remainder = s.exact - s.leading;
  return s;
}

RemainderSample remainder(const ModelManifold& m, double lambda, const Point& x, const Point& y,
                          const DerivIndex& d) {
  require_lambda(lambda);
  return remainder(Spectrum(m, lambda + 2.0 * kSpectrumTolerance), lambda, x, y, d);
}

ScanReport remainder_scan(const ModelManifold& m, std::span<const double> lambda_grid,
                          std::span<const PointPair> pairs, const DerivIndex& d, LambdaSampling sampling) {
  require_increasing(lambda_grid);
  if (pairs.empty()) throw PreconditionError("remainder_scan: no point pairs");
  const double half_inj = 0.5 * m.injectivity_radius();
  for (const auto& p : pairs) {
    if (m.distance(p.x, p.y) > half_inj * (1.0 + 1e-12)) {
      throw PreconditionError("remainder_scan: pair farther apart than half the injectivity radius");
    }
  }
  const Spectrum spec(m, lambda_grid.back() + 2.0 * kSpectrumTolerance);
  std::vector<double> sup(lambda_grid.size(), 0.0);
  for (const auto& p : pairs) {
    const auto v = window_sups(spec, lambda_grid, p.x, p.y, d, sampling,
                               [&](double mu) { return leading_term(m, mu, p.x, p.y, d); });
    for (std::size_t i = 0; i < sup.size(); ++i) sup[i] = std::max(sup[i], v[i]);
  }
  return make_scan_report(std::vector<double>(lambda_grid.begin(), lambda_grid.end()), std::move(sup));
}

ScanReport offdiagonal_scan(const ModelManifold& m, std::span<const double> lambda_grid, double eps,
                            std::span<const PointPair> pairs, const DerivIndex& d, LambdaSampling sampling) {
  require_increasing(lambda_grid);
  if (!(eps > 0.0)) throw DomainError("offdiagonal_scan: eps must be positive");
  if (pairs.empty()) throw PreconditionError("offdiagonal_scan: no point pairs");
  for (const auto& p : pairs) {
    if (m.distance(p.x, p.y) < eps) {
      throw PreconditionError("offdiagonal_scan: pair closer than eps");
    }
  }
  const Spectrum spec(m, lambda_grid.back() + 2.0 * kSpectrumTolerance);
  std::vector<double> sup(lambda_grid.size(), 0.0);
  for (const auto& p : pairs) {
    const auto v = window_sups(spec, lambda_grid, p.x, p.y, d, sampling, [](double) { return 0.0; });
    for (std::size_t i = 0; i < sup.size(); ++i) sup[i] = std::max(sup[i], v[i]);
  }
  return make_scan_report(std::vector<double>(lambda_grid.begin(), lambda_grid.end()), std::move(sup));
}

double bessel_cluster_prediction(const Spectrum& spectrum, double lambda, double width, const Point& x,
                                 const Point& y, const DerivIndex& d) {
  require_lambda(lambda);
  if (!(width > 0.0)) throw DomainError("cluster width must be positive");
  const ModelManifold& m = spectrum.manifold();
  double total = 0.0;
  double count = 0.0;
  if (m.is_torus()) {
    for (const auto& k : spectrum.modes_in(lambda, lambda + width)) {
      total += k.norm;
      count += 1.0;
    }
  } else {
    const double r = m.sphere_radius();
    for (int l = 0; sphere_level(l, r) <= lambda + width; ++l) {
      if (sphere_level(l, r) > lambda) {
        total += (2.0 * l + 1.0) * sphere_level(l, r);
        count += 2.0 * l + 1.0;
      }
    }
  }
  if (count == 0.0) {
    std::ostringstream msg;
    msg << "window (" << lambda << ", " << lambda + width << "] contains no eigenvalues";
    throw SpectrumError(msg.str());
  }
  return width * leading_term_rate(m, total / count, x, y, d);
}

ClusterBesselTable cluster_vs_bessel(const ModelManifold& m, double lambda, double width, const Point& x0,
                                     const Vec& direction, std::span<const double> dist_grid,
                                     const DerivIndex& d, int windows) {
  require_lambda(lambda);
  if (!(width > 0.0)) throw DomainError("cluster width must be positive");
  if (windows < 1) throw PreconditionError("cluster_vs_bessel: windows must be >= 1");
  const double half_inj = 0.5 * m.injectivity_radius();
  for (double r : dist_grid) {
    if (!(r >= 0.0) || r > half_inj * (1.0 + 1e-12)) {
      throw PreconditionError("cluster_vs_bessel: distances must lie in [0, inj / 2]");
    }
  }
  const Spectrum spec(m, lambda + windows * width + 2.0 * kSpectrumTolerance);
  ClusterBesselTable t;
  t.lambda = lambda;
  t.width = width;
  t.windows = windows;
  for (int j = 0; j < windows; ++j) t.diagonal += spec.cluster_kernel(lambda + j * width, width, x0, x0, d);
  t.diagonal = std::abs(t.diagonal) / windows;
  for (double r : dist_grid) {
    const Point y = m.geodesic_point(x0, direction, r);
    ClusterBesselRow row;
    row.dist = r;
    for (int j = 0; j < windows; ++j) {
      const double l = lambda + j * width;
      row.cluster += spec.cluster_kernel(l, width, x0, y, d);
      row.prediction += bessel_cluster_prediction(spec, l, width, x0, y, d);
    }
    row.cluster /= windows;
    row.prediction /= windows;
    row.abs_error = std::abs(row.cluster - row.prediction);
    row.rel_error = t.diagonal > 0.0 ? row.abs_error / t.diagonal : std::numeric_limits<double>::quiet_NaN();
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace weyl
