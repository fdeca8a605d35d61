#include "weyl/smoothing.hpp"

#include "weyl/error.hpp"
#include "weyl/kernels.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace weyl {

namespace {

constexpr int kBridgePanels = 24;
constexpr double kImageMargin = 1.1;

double bridge_f(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

void require_params(double lambda, double A) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive and finite");
  if (!(A > 0.0 && A <= 1.0)) throw DomainError("A must lie in (0, 1]");
}

int panels_for(double s, double length, int minimum, int refine) {
  // Two panels (32 nodes) per oscillation period of sin(s u).
  const double periods = std::abs(s) * length / kTwoPi;
  return refine * std::max(minimum, static_cast<int>(std::ceil(2.0 * periods)));
}

double kernel_with(const MollifierSpec& spec, double s, int refine) {
  if (s == 0.0) return 0.0;
  const double sign = s < 0.0 ? -1.0 : 1.0;
  s = std::abs(s);
  const auto& rule = quadrature::gauss16();
  double total = 0.0;
  const auto integrate = [&](double a, double b, int panels, bool bridge) {
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      double part = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = lo + 0.5 * h * (rule.nodes[i] + 1.0);
        double v = std::sin(s * u) / u;
        if (bridge) v *= rho_hat(spec, u);
        part += rule.weights[i] * v;
      }
      total += 0.5 * h * part;
    }
  };
  integrate(0.0, spec.plateau, panels_for(s, spec.plateau, 2, refine), false);
  integrate(spec.plateau, spec.support, panels_for(s, spec.support - spec.plateau, kBridgePanels, refine), true);
  return sign * total;
}

double multiplier_with(const MollifierSpec& spec, double lambda, double A, double tau, int refine) {
  return (kernel_with(spec, (lambda + tau) / A, refine) + kernel_with(spec, (lambda - tau) / A, refine)) / kPi;
}

}  // namespace

MollifierSpec MollifierSpec::for_manifold(const ModelManifold& m) {
  const double inj = m.injectivity_radius();
  return MollifierSpec{0.5 * inj, 0.9 * inj};
}

void MollifierSpec::validate() const {
  if (!(plateau > 0.0) || !(support > plateau) || !std::isfinite(support)) {
    throw DomainError("mollifier needs 0 < plateau < support");
  }
}

double rho_hat(const MollifierSpec& spec, double t) {
  t = std::abs(t);
  if (t <= spec.plateau) return 1.0;
  if (t >= spec.support) return 0.0;
  const double s = (t - spec.plateau) / (spec.support - spec.plateau);
  const double a = bridge_f(1.0 - s);
  return a / (a + bridge_f(s));
}

double multiplier_kernel(const MollifierSpec& spec, double s) {
  spec.validate();
  return kernel_with(spec, s, 1);
}

double multiplier(const MollifierSpec& spec, double lambda, double A, double tau) {
  spec.validate();
  require_params(lambda, A);
  return multiplier_with(spec, lambda, A, tau, 1);
}

double h_error(const MollifierSpec& spec, double lambda, double A, double tau) {
  const double ind = std::abs(tau) <= lambda ? 1.0 : 0.0;
  return ind - multiplier(spec, lambda, A, tau);
}

double TailFit::cutoff(double tol) const {
  if (!(tol > 0.0)) throw DomainError("tail tolerance must be positive");
  if (C <= tol) return s_min;
  const double r = std::log(C / tol) / rate;
  return std::max(s_min, r * r);
}

TailFit fit_multiplier_tail(const MollifierSpec& spec) {
  spec.validate();
  static std::mutex mutex;
  static std::map<std::pair<double, double>, TailFit> cache;
  const auto key = std::make_pair(spec.plateau, spec.support);
  {
    const std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  // Sample on s in [s_min, s_max] (s in units of 1/support); keep block maxima above roundoff.
  const double scale = 1.0 / spec.support;
  const double s_min = 4.0 * scale;
  const double block = 8.0 * scale;
  const double step = 0.25 * scale;
  const int blocks = 160;
  std::vector<double> centers, logs, lows;
  std::vector<double> samples(static_cast<std::size_t>(blocks * block / step));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double s = s_min + static_cast<double>(i) * step;
    samples[i] = std::abs(0.5 - kernel_with(spec, s, 1) / kPi);
  }
  const std::size_t per_block = samples.size() / blocks;
  for (int b = 0; b < blocks; ++b) {
    double mx = 0.0;
    for (std::size_t i = 0; i < per_block; ++i) mx = std::max(mx, samples[b * per_block + i]);
    if (mx < 1e-13) break;
    const double lo = s_min + b * block;
    lows.push_back(lo);
    centers.push_back(std::sqrt(lo + 0.5 * block));
    logs.push_back(std::log(mx));
  }
  if (centers.size() < 4) throw NumericError("multiplier tail fit: too few samples above roundoff");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    mx += centers[i];
    my += logs[i];
  }
  mx /= static_cast<double>(centers.size());
  my /= static_cast<double>(centers.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    sxx += (centers[i] - mx) * (centers[i] - mx);
    sxy += (centers[i] - mx) * (logs[i] - my);
  }
  TailFit fit;
  fit.rate = -sxy / sxx;
  if (!(fit.rate > 0.0)) throw NumericError("multiplier tail fit: envelope does not decay");
  double log_c = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.size(); ++i) log_c = std::max(log_c, logs[i] + fit.rate * std::sqrt(lows[i]));
  fit.C = 2.0 * std::exp(log_c);
  fit.s_min = s_min;
  const std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, fit);
  return fit;
}

MultiplierTable make_multiplier_table(const MollifierSpec& spec, double lambda, double A, double radius,
                                      double panel_width) {
  spec.validate();
  require_params(lambda, A);
  if (!(radius > 0.0) || !(panel_width > 0.0)) throw DomainError("multiplier table needs positive radius and panel width");
  const int panels = static_cast<int>(std::ceil(radius / panel_width));
  const auto nodes = quadrature::composite_nodes(0.0, radius, panels);
  MultiplierTable t;
  t.lambda = lambda;
  t.A = A;
  t.tau_grid = nodes.x;
  t.weights = nodes.w;
  t.values.assign(nodes.x.size(), 0.0);
  t.quadrature_tol = 1e-11;
#pragma omp parallel for schedule(dynamic, 32)
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    t.values[i] = multiplier_with(spec, lambda, A, t.tau_grid[i], 1);
  }
  // Spot-check the inner quadrature by doubling its panels.
  const std::size_t n = t.values.size();
  for (std::size_t i : {std::size_t{0}, n / 7, n / 3, n / 2, n - 1}) {
    const double fine = multiplier_with(spec, lambda, A, t.tau_grid[i], 2);
    if (std::abs(fine - t.values[i]) > t.quadrature_tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "multiplier quadrature did not converge at tau = " << t.tau_grid[i] << ": " << t.values[i]
          << " vs refined " << fine;
      throw NumericError(msg.str());
    }
  }
  return t;
}

double FlatHadamardData::u0_from_theta() const { return 1.0 / std::sqrt(theta); }

SmoothedProjector::SmoothedProjector(ModelManifold torus, MollifierSpec spec, double lambda, double A,
                                     double tail_tol, double tail_scale)
    : manifold_(std::move(torus)), spec_(spec), lambda_(lambda), A_(A) {
  if (!manifold_.is_torus()) throw UnsupportedError("smoothed projector is implemented for flat tori");
  spec_.validate();
  require_params(lambda, A);
  if (!(tail_scale >= 1.0)) throw DomainError("tail_scale must be >= 1");
  tail_ = fit_multiplier_tail(spec_);
  radius_ = lambda_ + tail_scale * tail_.cutoff(tail_tol) * A_;
  image_radius_ = tail_scale * kImageMargin * spec_.support / A_;

  modes_ = enumerate_dual(manifold_.lattice(), radius_);
  // One multiplier evaluation per distinct norm.
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (i == 0 || modes_[i].norm - modes_[starts.back()].norm > 1e-12 * std::max(1.0, modes_[i].norm)) {
      starts.push_back(i);
    }
  }
  std::vector<double> level_m(starts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t j = 0; j < starts.size(); ++j) {
    level_m[j] = multiplier_with(spec_, lambda_, A_, modes_[starts[j]].norm, 1);
  }
  mode_weights_.resize(modes_.size());
  for (std::size_t j = 0; j < starts.size(); ++j) {
    const std::size_t end = j + 1 < starts.size() ? starts[j + 1] : modes_.size();
    for (std::size_t i = starts[j]; i < end; ++i) mode_weights_[i] = level_m[j];
  }

  // Panels resolve both the width-A transition of m and S_n(r |w|) for |w| up to image_radius.
  const double width = std::min(0.5 * A_, kPi / image_radius_);
  table_ = make_multiplier_table(spec_, lambda_, A_, radius_, width);
}

double SmoothedProjector::spectral(const Point& x, const Point& y) const {
  manifold_.validate_point(x);
  manifold_.validate_point(y);
  const Vec w = y - x;
  return kernels::omp::weighted_cos_sum(modes_, mode_weights_, w) / manifold_.volume();
}

std::vector<double> SmoothedProjector::spectral(std::span<const PointPair> pairs) const {
  std::vector<Vec> ws;
  ws.reserve(pairs.size());
  for (const auto& p : pairs) {
    manifold_.validate_point(p.x);
    manifold_.validate_point(p.y);
    ws.push_back(p.y - p.x);
  }
  auto out = kernels::omp::weighted_cos_sums(modes_, mode_weights_, ws);
  for (auto& v : out) v /= manifold_.volume();
  return out;
}

double SmoothedProjector::image_term(double w_norm) const {
  const int n = manifold_.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < table_.tau_grid.size(); ++i) {
    const double r = table_.tau_grid[i];
    s += table_.weights[i] * table_.values[i] * std::pow(r, n - 1) * specfun::sphere_fourier(n, r * w_norm);
  }
  return s / std::pow(kTwoPi, n);
}

double SmoothedProjector::images(const Point& x, const Point& y) const {
  const auto imgs = deck_images(manifold_.lattice(), x, y, image_radius_);
  double total = 0.0;
  for (const auto& w : imgs) total += image_term(w.norm());
  return total;
}

double smoothed_projector_spectral(const ModelManifold& m, const MollifierSpec& spec, double lambda, double A,
                                   const Point& x, const Point& y) {
  return SmoothedProjector(m, spec, lambda, A).spectral(x, y);
}

double smoothed_projector_images(const ModelManifold& m, const MollifierSpec& spec, double lambda, double A,
                                 const Point& x, const Point& y) {
  return SmoothedProjector(m, spec, lambda, A).images(x, y);
}

HBound fit_h_bound(const MollifierSpec& spec, double lambda, double A, int N, std::span<const double> fit_grid,
                   std::span<const double> check_grid) {
  if (N < 0) throw DomainError("h bound exponent must be >= 0");
  if (fit_grid.empty() || check_grid.empty()) throw PreconditionError("h bound grids must be nonempty");
  const auto weighted = [&](std::span<const double> grid) {
    std::vector<double> v(grid.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double tau = grid[i];
      v[i] = std::abs(h_error(spec, lambda, A, tau)) * std::pow(1.0 + std::abs(std::abs(tau) - lambda) / A, N);
    }
    return v;
  };
  const auto fv = weighted(fit_grid);
  const auto cv = weighted(check_grid);
  HBound b;
  b.N = N;
  b.C = *std::max_element(fv.begin(), fv.end());
  b.worst_ratio = *std::max_element(cv.begin(), cv.end()) / b.C;
  return b;
}

}  // namespace weyl
