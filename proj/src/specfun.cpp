#include "weyl/specfun.hpp"

#include "weyl/error.hpp"
#include "weyl/types.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace weyl::specfun {

namespace {

constexpr double kSeriesLimit = 12.0;
constexpr double kHankelLimit = 25.0;
constexpr double kRatioTaylorLimit = 1e-6;

void require_argument(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_j: argument must be finite and >= 0, got " + std::to_string(x));
  }
}

double series(double nu, double x) {
  const double half_x = 0.5 * x;
  const double q = -half_x * half_x;
  double term = std::pow(half_x, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (k > half_x && std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Hankel large-argument expansion, truncated at its smallest term.
double hankel(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    // k odd contributes to Q with sign (-1)^{(k-1)/2}, k even to P with (-1)^{k/2}.
    const int r = k % 4;
    if (r == 1) q += term;
    else if (r == 2) p -= term;
    else if (r == 3) q -= term;
    else p += term;
    if (std::abs(term) < 1e-17) break;
  }
  const double phase = (0.5 * nu + 0.25) * kPi;
  const double cx = std::cos(x), sx = std::sin(x);
  const double cp = std::cos(phase), sp = std::sin(phase);
  const double cos_chi = cx * cp + sx * sp;
  const double sin_chi = sx * cp - cx * sp;
  return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

int miller_start(double order, double x) {
  const double top = std::max(order, x);
  int m = static_cast<int>(top + 30.0 + 8.0 * std::sqrt(top));
  return m + (m % 2);
}

// Normalized backward recurrence; returns J_0..J_nmax.
std::vector<double> miller_integer(int nmax, double x) {
  const int m = miller_start(nmax, x);
  std::vector<double> j(static_cast<std::size_t>(m) + 2, 0.0);
  j[static_cast<std::size_t>(m)] = 1.0;
  for (int k = m; k >= 1; --k) {
    auto uk = static_cast<std::size_t>(k);
    j[uk - 1] = (2.0 * k / x) * j[uk] - j[uk + 1];
    if (std::abs(j[uk - 1]) > 1e250) {
      for (auto& v : j) v *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= m; k += 2) norm += 2.0 * j[static_cast<std::size_t>(k)];
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  for (int k = 0; k <= nmax; ++k) out[static_cast<std::size_t>(k)] = j[static_cast<std::size_t>(k)] / norm;
  return out;
}

double closed_half(double x) { return std::sqrt(2.0 / (kPi * x)) * std::sin(x); }
double closed_minus_half(double x) { return std::sqrt(2.0 / (kPi * x)) * std::cos(x); }

// J_{twice/2} for half-integer order when order >= x > 12.
double miller_half(int twice, double x) {
  const double order = 0.5 * twice;
  const int m = miller_start(order, x);
  // Index i holds order i - 1/2.
  std::vector<double> j(static_cast<std::size_t>(m) + 2, 0.0);
  j[static_cast<std::size_t>(m)] = 1.0;
  for (int i = m; i >= 1; --i) {
    auto ui = static_cast<std::size_t>(i);
    const double mu = i - 0.5;
    j[ui - 1] = (2.0 * mu / x) * j[ui] - j[ui + 1];
    if (std::abs(j[ui - 1]) > 1e250) {
      for (auto& v : j) v *= 1e-250;
    }
  }
  const double sx = std::abs(std::sin(x));
  const double cx = std::abs(std::cos(x));
  const double scale = sx >= cx ? closed_half(x) / j[1] : closed_minus_half(x) / j[0];
  return j[static_cast<std::size_t>((twice + 1) / 2)] * scale;
}

double integer_order(int n, double x) {
  if (x <= kSeriesLimit) return series(n, x);
  if (n >= x) return miller_integer(n, x)[static_cast<std::size_t>(n)];
  double j0 = 0.0;
  double j1 = 0.0;
  if (x >= kHankelLimit) {
    j0 = hankel(0.0, x);
    j1 = hankel(1.0, x);
  } else {
    const auto js = miller_integer(std::max(n, 1), x);
    return js[static_cast<std::size_t>(n)];
  }
  if (n == 0) return j0;
  double prev = j0;
  double cur = j1;
  for (int k = 1; k < n; ++k) {
    const double next = (2.0 * k / x) * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double half_order(int twice, double x) {
  const double nu = 0.5 * twice;
  if (x <= kSeriesLimit) return series(nu, x);
  if (nu >= x) return miller_half(twice, x);
  if (twice == -1) return closed_minus_half(x);
  double prev = closed_minus_half(x);
  double cur = closed_half(x);
  for (double mu = 0.5; mu < nu; mu += 1.0) {
    const double next = (2.0 * mu / x) * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

BesselOrder::BesselOrder(int twice_order) : twice_(twice_order) {
  if (twice_order < -2) {
    throw DomainError("BesselOrder: order must be >= -1, got twice_order = " +
                      std::to_string(twice_order));
  }
}

double bessel_j(BesselOrder order, double x) {
  require_argument(x);
  const int tw = order.twice();
  if (tw == -2) return -bessel_j(BesselOrder::integer(1), x);
  if (x == 0.0) {
    if (tw == 0) return 1.0;
    if (tw == -1) throw DomainError("bessel_j: J_{-1/2} is singular at x = 0");
    return 0.0;
  }
  return order.is_integer() ? integer_order(tw / 2, x) : half_order(tw, x);
}

double bessel_ratio(BesselOrder order, double r) {
  require_argument(r);
  const double nu = order.value();
  if (order.twice() == -2) {
    // J_{-1}(r) r = -J_1(r) r, which vanishes at 0.
    return -bessel_j(BesselOrder::integer(1), r) * r;
  }
  if (r < kRatioTaylorLimit) {
    const double q = -0.25 * r * r;
    double term = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
    double sum = term;
    for (int k = 1; k < 4; ++k) {
      term *= q / (k * (k + nu));
      sum += term;
    }
    return sum;
  }
  return bessel_j(order, r) / std::pow(r, nu);
}

double legendre_p(int l, double x) {
  if (l < 0) throw DomainError("legendre_p: degree must be >= 0");
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("legendre_p: argument must lie in [-1, 1], got " + std::to_string(x));
  }
  if (l == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < l; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> real_spherical_harmonics(int l, double theta, double phi) {
  if (l < 0) throw DomainError("real_spherical_harmonics: degree must be >= 0");
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<double> out(static_cast<std::size_t>(2 * l + 1));
  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 0; m <= l; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    // Raise the degree from m to l at fixed order m.
    double plm = pmm;
    if (l > m) {
      double prev = pmm;
      double cur = std::sqrt(2.0 * m + 3.0) * x * pmm;
      for (int k = m + 2; k <= l; ++k) {
        const double a = std::sqrt((4.0 * k * k - 1.0) / (static_cast<double>(k) * k - static_cast<double>(m) * m));
        const double b = std::sqrt((static_cast<double>(k - 1) * (k - 1) - static_cast<double>(m) * m) /
                                   (4.0 * (k - 1) * (k - 1) - 1.0));
        const double next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
      }
      plm = cur;
    }
    if (m == 0) {
      out[static_cast<std::size_t>(l)] = plm;
    } else {
      out[static_cast<std::size_t>(l + m)] = std::sqrt(2.0) * plm * std::cos(m * phi);
      out[static_cast<std::size_t>(l - m)] = std::sqrt(2.0) * plm * std::sin(m * phi);
    }
  }
  return out;
}

namespace {
void require_dim(int n, const char* what) {
  if (n < 2) throw DomainError(std::string(what) + ": dimension must be >= 2, got " + std::to_string(n));
}
}  // namespace

double ball_fourier(int n, double r) {
  require_dim(n, "ball_fourier");
  return std::pow(kTwoPi, 0.5 * n) * bessel_ratio(BesselOrder::half(n), r);
}

double sphere_fourier(int n, double r) {
  require_dim(n, "sphere_fourier");
  return std::pow(kTwoPi, 0.5 * n) * bessel_ratio(BesselOrder::half(n - 2), r);
}

double universal_covariance(int n, double r) {
  require_dim(n, "universal_covariance");
  return std::pow(kTwoPi, -0.5 * n) * bessel_ratio(BesselOrder::half(n - 2), r);
}

double unit_ball_volume(int n) { return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

double unit_sphere_area(int n) { return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }

}  // namespace weyl::specfun
