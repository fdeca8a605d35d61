#pragma once

#include "weyl/manifolds.hpp"
#include "weyl/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace weyl {

/// Counter-based normal draw keyed by (seed, sample, mode key):
/// SplitMix64 mixing into two uniforms, then Box-Muller.
double keyed_normal(std::uint64_t seed, std::uint64_t sample, std::uint64_t mode_key);

/// One real orthonormal eigenfunction of the window.
struct RealMode {
  std::uint64_t key = 0;
  double sqrt_eigenvalue = 0.0;
  /// Torus: dual vector k and cos (0) / sin (1) flavour. Sphere: degree l and order m.
  Vec k;
  int flavour = 0;
  int degree = 0;
  int order = 0;
};

/// psi(x) = lambda^{(1-n)/2} sum_j a_j phi_j(x) over the window (lambda, lambda + width].
class RandomWaveEnsemble {
 public:
  /// Throws PreconditionError if the window holds no modes.
  RandomWaveEnsemble(ModelManifold m, double lambda, double width, std::uint64_t seed, std::size_t num_samples);

  [[nodiscard]] const ModelManifold& manifold() const { return manifold_; }
  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] double width() const { return width_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::size_t num_samples() const { return num_samples_; }
  [[nodiscard]] const std::vector<RealMode>& modes() const { return modes_; }
  /// lambda^{(1-n)/2}.
  [[nodiscard]] double normalization() const { return norm_; }

  /// phi_j(x) for every mode, in mode order.
  [[nodiscard]] std::vector<double> basis_values(const Point& x) const;
  /// a_j for one sample, in mode order.
  [[nodiscard]] std::vector<double> coefficients(std::size_t sample) const;
  /// lambda^{1-n} sum_j phi_j(x) phi_j(y) computed from the real basis.
  [[nodiscard]] double basis_covariance(const Point& x, const Point& y) const;
  /// lambda^{1-n} E_(lambda, lambda + width](x, y).
  [[nodiscard]] double exact_covariance(const Point& x, const Point& y) const;

 private:
  ModelManifold manifold_;
  double lambda_;
  double width_;
  std::uint64_t seed_;
  std::size_t num_samples_;
  double norm_;
  std::vector<RealMode> modes_;
};

/// psi_sample(x); deterministic in (seed, sample).
double sample_wave(const RandomWaveEnsemble& ens, std::size_t sample, const Point& x);

struct CovarianceEstimate {
  double mean_product = 0.0;
  double std_error = 0.0;
};

CovarianceEstimate empirical_covariance(const RandomWaveEnsemble& ens, const Point& x, const Point& y);

struct CovarianceReport {
  std::vector<PointPair> point_pairs;
  std::vector<double> empirical;
  std::vector<double> exact;
  std::vector<double> std_errors;
  std::vector<double> universal_limit;
};

/// Empirical and exact covariance at every pair; samples are shared across pairs.
/// `parallel` picks the OpenMP sampler over the serial loop; results are identical.
CovarianceReport covariance_report(const RandomWaveEnsemble& ens, std::span<const PointPair> pairs,
                                   bool parallel = true);

struct RescaledError {
  double exact_rescaled = 0.0;
  double universal = 0.0;
  double abs_error = 0.0;
};

/// sqrt(lambda / log lambda).
double default_rescale_radius(double lambda);

/// Covariance at exp_{x0}(u / lambda), exp_{x0}(v / lambda) against the
/// universal limit at |u - v|. |u|, |v| must not exceed `radius`
/// (default_rescale_radius when radius <= 0).
RescaledError rescaled_covariance_error(const RandomWaveEnsemble& ens, const Point& x0, const Vec& u,
                                        const Vec& v, double radius = 0.0);

}  // namespace weyl
