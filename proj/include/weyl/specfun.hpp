#pragma once

#include <vector>

namespace weyl::specfun {

/// Bessel order stored as twice its value so half-integers are exact.
class BesselOrder {
 public:
  /// Throws DomainError for twice_order < -2.
  explicit BesselOrder(int twice_order);

  static BesselOrder integer(int n) { return BesselOrder(2 * n); }
  /// Order nu = twice / 2, e.g. half(1) is 1/2.
  static BesselOrder half(int twice) { return BesselOrder(twice); }

  [[nodiscard]] int twice() const { return twice_; }
  [[nodiscard]] double value() const { return 0.5 * twice_; }
  [[nodiscard]] bool is_integer() const { return twice_ % 2 == 0; }

 private:
  int twice_;
};

/// J_nu(x) for x >= 0, nu in {-1, -1/2, 0, 1/2, 1, ...}.
double bessel_j(BesselOrder order, double x);

/// J_nu(r) / r^nu, continuous at r = 0 with limit 1 / (2^nu Gamma(nu + 1)).
/// Below r = 1e-6 a four-term Taylor expansion is used.
double bessel_ratio(BesselOrder order, double r);

/// Legendre polynomial P_l(x) by three-term recurrence; |x| <= 1.
double legendre_p(int l, double x);

/// Orthonormal real spherical harmonics of degree l at (theta, phi), ordered
/// m = -l..l (negative m carry sin(|m| phi), positive m cos(m phi)).
std::vector<double> real_spherical_harmonics(int l, double theta, double phi);

/// B_n(r) = integral of exp(i<w, xi>) over the unit n-ball, |w| = r.
double ball_fourier(int n, double r);

/// S_n(r) = integral of exp(i<w, sigma>) over the unit sphere S^{n-1}, |w| = r.
double sphere_fourier(int n, double r);

/// (2 pi)^{-n/2} J_{(n-2)/2}(r) / r^{(n-2)/2}: the rescaled random-wave
/// covariance limit.
double universal_covariance(int n, double r);

/// Volume of the unit n-ball.
double unit_ball_volume(int n);

/// Surface area of S^{n-1}.
double unit_sphere_area(int n);

}  // namespace weyl::specfun
