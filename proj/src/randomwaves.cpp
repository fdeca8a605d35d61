#include "weyl/randomwaves.hpp"

#include "weyl/error.hpp"
#include "weyl/specfun.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace weyl {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr int kCoeffBits = 21;
constexpr long kCoeffOffset = 1L << (kCoeffBits - 1);

std::uint64_t torus_key(const IVec& c, int flavour) {
  std::uint64_t key = 0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const long v = c(i) + kCoeffOffset;
    if (v < 0 || v >= (1L << kCoeffBits)) throw ResourceError("random wave: dual coefficient too large to key");
    key = (key << kCoeffBits) | static_cast<std::uint64_t>(v);
  }
  return (key << 1) | static_cast<std::uint64_t>(flavour);
}

std::uint64_t sphere_key(int l, int m) {
  return (1ULL << 63) | (static_cast<std::uint64_t>(l) << 32) | static_cast<std::uint64_t>(m + l);
}

// First nonzero coefficient positive: one representative of each {k, -k}.
bool canonical(const IVec& c) {
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c(i) != 0) return c(i) > 0;
  }
  return false;
}

}  // namespace

double keyed_normal(std::uint64_t seed, std::uint64_t sample, std::uint64_t mode_key) {
  std::uint64_t state = splitmix64(seed);
  state = splitmix64(state ^ sample);
  state = splitmix64(state ^ mode_key);
  const std::uint64_t b1 = splitmix64(state ^ 0x1ULL);
  const std::uint64_t b2 = splitmix64(state ^ 0x2ULL);
  const double u1 = (static_cast<double>(b1 >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(b2 >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

RandomWaveEnsemble::RandomWaveEnsemble(ModelManifold m, double lambda, double width, std::uint64_t seed,
                                       std::size_t num_samples)
    : manifold_(std::move(m)), lambda_(lambda), width_(width), seed_(seed), num_samples_(num_samples) {
  if (!(lambda > 0.0) || !(width > 0.0)) throw DomainError("random wave: lambda and width must be positive");
  if (num_samples == 0) throw PreconditionError("random wave: num_samples must be positive");
  const int n = manifold_.dim();
  norm_ = std::pow(lambda_, 0.5 * (1 - n));
  const double hi = lambda_ + width_;
  if (manifold_.is_torus()) {
    const auto shell = enumerate_dual_shell(manifold_.lattice(), std::max(0.0, lambda_ - 2.0 * kSpectrumTolerance),
                                            hi + 2.0 * kSpectrumTolerance);
    for (const auto& p : shell) {
      if (std::abs(p.norm - lambda_) <= kSpectrumTolerance || std::abs(p.norm - hi) <= kSpectrumTolerance) {
        throw SpectrumError("random wave: window endpoint lies on the spectrum; shift lambda");
      }
      if (p.norm <= lambda_ || p.norm > hi || !canonical(p.coeffs)) continue;
      for (int f = 0; f < 2; ++f) {
        RealMode rm;
        rm.key = torus_key(p.coeffs, f);
        rm.sqrt_eigenvalue = p.norm;
        rm.k = p.vector;
        rm.flavour = f;
        modes_.push_back(rm);
      }
    }
  } else {
    const double r = manifold_.sphere_radius();
    for (int l = 0; sphere_level(l, r) <= hi + kSpectrumTolerance; ++l) {
      const double level = sphere_level(l, r);
      if (std::abs(level - lambda_) <= kSpectrumTolerance || std::abs(level - hi) <= kSpectrumTolerance) {
        throw SpectrumError("random wave: window endpoint lies on the spectrum; shift lambda");
      }
      if (level <= lambda_) continue;
      for (int mm = -l; mm <= l; ++mm) {
        RealMode rm;
        rm.key = sphere_key(l, mm);
        rm.sqrt_eigenvalue = level;
        rm.degree = l;
        rm.order = mm;
        modes_.push_back(rm);
      }
    }
  }
  if (modes_.empty()) {
    std::ostringstream msg;
    msg << "random wave: window (" << lambda_ << ", " << hi << "] contains no eigenvalues";
    throw PreconditionError(msg.str());
  }
}

std::vector<double> RandomWaveEnsemble::basis_values(const Point& x) const {
  manifold_.validate_point(x);
  std::vector<double> out(modes_.size());
  if (manifold_.is_torus()) {
    const double amp = std::sqrt(2.0 / manifold_.volume());
    for (std::size_t j = 0; j < modes_.size(); ++j) {
      const double t = modes_[j].k.dot(x);
      out[j] = amp * (modes_[j].flavour == 0 ? std::cos(t) : std::sin(t));
    }
    return out;
  }
  const double inv_r = 1.0 / manifold_.sphere_radius();
  std::size_t j = 0;
  while (j < modes_.size()) {
    const int l = modes_[j].degree;
    const auto y = specfun::real_spherical_harmonics(l, x(0), x(1));
    for (int mm = -l; mm <= l; ++mm, ++j) out[j] = inv_r * y[static_cast<std::size_t>(mm + l)];
  }
  return out;
}

std::vector<double> RandomWaveEnsemble::coefficients(std::size_t sample) const {
  if (sample >= num_samples_) throw PreconditionError("random wave: sample index out of range");
  std::vector<double> a(modes_.size());
  for (std::size_t j = 0; j < modes_.size(); ++j) a[j] = keyed_normal(seed_, sample, modes_[j].key);
  return a;
}

double RandomWaveEnsemble::basis_covariance(const Point& x, const Point& y) const {
  const auto px = basis_values(x);
  const auto py = basis_values(y);
  double s = 0.0;
  for (std::size_t j = 0; j < px.size(); ++j) s += px[j] * py[j];
  return norm_ * norm_ * s;
}

double RandomWaveEnsemble::exact_covariance(const Point& x, const Point& y) const {
  return norm_ * norm_ * cluster_kernel(manifold_, lambda_, width_, x, y);
}

double sample_wave(const RandomWaveEnsemble& ens, std::size_t sample, const Point& x) {
  const auto a = ens.coefficients(sample);
  const auto phi = ens.basis_values(x);
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * phi[j];
  return ens.normalization() * s;
}

CovarianceReport covariance_report(const RandomWaveEnsemble& ens, std::span<const PointPair> pairs,
                                   bool parallel) {
  if (ens.num_samples() < 2) throw PreconditionError("covariance needs at least 2 samples");
  if (pairs.empty()) throw PreconditionError("covariance needs at least one pair");
  const std::size_t np = pairs.size();
  const std::size_t nm = ens.modes().size();
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(2 * np), static_cast<Eigen::Index>(nm));
  for (std::size_t i = 0; i < np; ++i) {
    const auto bx = ens.basis_values(pairs[i].x);
    const auto by = ens.basis_values(pairs[i].y);
    for (std::size_t j = 0; j < nm; ++j) {
      phi(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(j)) = bx[j];
      phi(static_cast<Eigen::Index>(2 * i + 1), static_cast<Eigen::Index>(j)) = by[j];
    }
  }
  const std::size_t ns = ens.num_samples();
  // products(s, i) = psi_s(x_i) psi_s(y_i); rows are filled independently.
  Eigen::MatrixXd products(static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(np));
  const double c = ens.normalization();
  const auto fill = [&](std::size_t s) {
    const auto a = ens.coefficients(s);
    const Eigen::VectorXd psi = c * (phi * Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(nm)));
    for (std::size_t i = 0; i < np; ++i) {
      products(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) =
          psi(static_cast<Eigen::Index>(2 * i)) * psi(static_cast<Eigen::Index>(2 * i + 1));
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t s = 0; s < ns; ++s) fill(s);
  } else {
    for (std::size_t s = 0; s < ns; ++s) fill(s);
  }
  CovarianceReport r;
  r.point_pairs.assign(pairs.begin(), pairs.end());
  const int n = ens.manifold().dim();
  for (std::size_t i = 0; i < np; ++i) {
    double mean = 0.0;
    for (std::size_t s = 0; s < ns; ++s) mean += products(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i));
    mean /= static_cast<double>(ns);
    double var = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
      const double dlt = products(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) - mean;
      var += dlt * dlt;
    }
    var /= static_cast<double>(ns - 1);
    r.empirical.push_back(mean);
    r.std_errors.push_back(std::sqrt(var / static_cast<double>(ns)));
    r.exact.push_back(ens.exact_covariance(pairs[i].x, pairs[i].y));
    const double dist = ens.manifold().distance(pairs[i].x, pairs[i].y);
    r.universal_limit.push_back(specfun::universal_covariance(n, ens.lambda() * dist));
  }
  return r;
}

CovarianceEstimate empirical_covariance(const RandomWaveEnsemble& ens, const Point& x, const Point& y) {
  const PointPair p{x, y};
  const auto r = covariance_report(ens, std::span<const PointPair>(&p, 1));
  return {r.empirical[0], r.std_errors[0]};
}

double default_rescale_radius(double lambda) {
  if (!(lambda > 1.0)) throw DomainError("rescale radius needs lambda > 1");
  return std::sqrt(lambda / std::log(lambda));
}

RescaledError rescaled_covariance_error(const RandomWaveEnsemble& ens, const Point& x0, const Vec& u,
                                        const Vec& v, double radius) {
  const ModelManifold& m = ens.manifold();
  const int n = m.dim();
  if (u.size() != n || v.size() != n) throw PreconditionError("rescaled covariance: u and v must have manifold dimension");
  const double lambda = ens.lambda();
  const double r = radius > 0.0 ? radius : default_rescale_radius(lambda);
  if (u.norm() > r || v.norm() > r) {
    std::ostringstream msg;
    msg << "rescaled covariance: |u|, |v| must not exceed r_lambda = sqrt(lambda / log lambda) = " << r;
    throw PreconditionError(msg.str());
  }
  const auto exp_at = [&](const Vec& t) -> Point {
    if (m.is_torus()) return x0 + t / lambda;
    if (t.norm() == 0.0) return x0;
    Vec bearing(1);
    bearing(0) = std::atan2(t(1), t(0));
    return m.geodesic_point(x0, bearing, t.norm() / lambda);
  };
  RescaledError e;
  e.exact_rescaled = ens.exact_covariance(exp_at(u), exp_at(v));
  e.universal = specfun::universal_covariance(n, (u - v).norm());
  e.abs_error = std::abs(e.exact_rescaled - e.universal);
  return e;
}

}  // namespace weyl
