#pragma once

#include "weyl/manifolds.hpp"
#include "weyl/types.hpp"

#include <span>
#include <vector>

namespace weyl {

/// Even cutoff rho_hat: 1 on |t| <= plateau, 0 on |t| >= support, and an
/// exp(-1/u) bridge in between.
struct MollifierSpec {
  double plateau = 0.5 * kPi;
  double support = 0.9 * kPi;

  /// plateau = inj / 2, support = 0.9 inj.
  static MollifierSpec for_manifold(const ModelManifold& m);
  /// Throws DomainError unless 0 < plateau < support.
  void validate() const;
};

double rho_hat(const MollifierSpec& spec, double t);

/// g(s) = integral_0^support rho_hat(u) sin(s u) / u du (odd in s).
double multiplier_kernel(const MollifierSpec& spec, double s);

/// m(tau) = (1/pi) int rho_hat(A t) sin(t lambda) / t cos(t tau) dt
///        = (g((lambda + tau) / A) + g((lambda - tau) / A)) / pi.
double multiplier(const MollifierSpec& spec, double lambda, double A, double tau);

/// 1[|tau| <= lambda] - m(tau).
double h_error(const MollifierSpec& spec, double lambda, double A, double tau);

/// Envelope |1/2 - g(s)/pi| <= C exp(-rate sqrt(s)) for s >= s_min, fitted
/// on sampled maxima with a factor 2 margin on C.
struct TailFit {
  double C = 0.0;
  double rate = 0.0;
  double s_min = 0.0;
  /// Smallest s past which the envelope is below tol.
  [[nodiscard]] double cutoff(double tol) const;
};

TailFit fit_multiplier_tail(const MollifierSpec& spec);

/// m sampled on composite Gauss nodes of [0, radius]; weights integrate in tau.
struct MultiplierTable {
  double lambda = 0.0;
  double A = 0.0;
  std::vector<double> tau_grid;
  std::vector<double> weights;
  std::vector<double> values;
  double quadrature_tol = 0.0;
};

MultiplierTable make_multiplier_table(const MollifierSpec& spec, double lambda, double A, double radius,
                                      double panel_width);

/// Hadamard data of flat space: Theta = 1, u_0 = 1, u_nu = 0 for nu >= 1.
struct FlatHadamardData {
  double theta = 1.0;
  double u0 = 1.0;
  double u_higher = 0.0;

  [[nodiscard]] double u(int nu) const { return nu == 0 ? u0 : u_higher; }
  /// u_0 = Theta^{-1/2} on the diagonal.
  [[nodiscard]] double u0_from_theta() const;
};

/// Smoothed projector sum_k m(|k|) phi_k(x) phi_k(y) on a flat torus, as a
/// mode sum (spectral side) and as a sum of radial integrals over deck
/// images (geometric side).
class SmoothedProjector {
 public:
  /// `tail_scale` multiplies every truncation radius; used to validate them by doubling.
  SmoothedProjector(ModelManifold torus, MollifierSpec spec, double lambda, double A,
                    double tail_tol = 1e-12, double tail_scale = 1.0);

  [[nodiscard]] double spectral(const Point& x, const Point& y) const;
  [[nodiscard]] std::vector<double> spectral(std::span<const PointPair> pairs) const;
  [[nodiscard]] double images(const Point& x, const Point& y) const;

  /// (2 pi)^{-n} int_0^R m(r) r^{n-1} S_n(r |w|) dr.
  [[nodiscard]] double image_term(double w_norm) const;

  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] double A() const { return A_; }
  [[nodiscard]] double spectral_radius() const { return radius_; }
  [[nodiscard]] double image_radius() const { return image_radius_; }
  [[nodiscard]] const TailFit& tail() const { return tail_; }
  [[nodiscard]] const MultiplierTable& table() const { return table_; }
  [[nodiscard]] std::size_t mode_count() const { return modes_.size(); }

 private:
  ModelManifold manifold_;
  MollifierSpec spec_;
  double lambda_;
  double A_;
  TailFit tail_;
  double radius_;
  double image_radius_;
  std::vector<DualPoint> modes_;
  std::vector<double> mode_weights_;
  MultiplierTable table_;
};

double smoothed_projector_spectral(const ModelManifold& m, const MollifierSpec& spec, double lambda, double A,
                                   const Point& x, const Point& y);
double smoothed_projector_images(const ModelManifold& m, const MollifierSpec& spec, double lambda, double A,
                                 const Point& x, const Point& y);

/// Constant of |h(tau)| <= C (1 + ||tau| - lambda| / A)^{-N}: fitted as the max
/// over `fit_grid`, then checked on `check_grid`.
struct HBound {
  int N = 0;
  double C = 0.0;
  /// max over check_grid of |h| (1 + ...)^N / C; <= 1 means no violation.
  double worst_ratio = 0.0;
};

HBound fit_h_bound(const MollifierSpec& spec, double lambda, double A, int N, std::span<const double> fit_grid,
                   std::span<const double> check_grid);

}  // namespace weyl
