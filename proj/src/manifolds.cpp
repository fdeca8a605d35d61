#include "weyl/manifolds.hpp"

#include "weyl/error.hpp"
#include "weyl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weyl {

void DerivIndex::validate(int dim) const {
  for (std::size_t i = 0; i < 3; ++i) {
    if (alpha[i] < 0 || beta[i] < 0) throw PreconditionError("derivative orders must be >= 0");
    if (static_cast<int>(i) >= dim && (alpha[i] != 0 || beta[i] != 0)) {
      throw PreconditionError("derivative along an axis beyond the manifold dimension");
    }
  }
  if (total() > 2) throw UnsupportedError("derivatives are supported up to total order 2");
}

namespace {

Vec sphere_unit(const Point& p) {
  Vec u(3);
  u << std::sin(p(0)) * std::cos(p(1)), std::sin(p(0)) * std::sin(p(1)), std::cos(p(0));
  return u;
}

double sphere_angle(const Point& x, const Point& y) {
  const Vec a = sphere_unit(x);
  const Vec b = sphere_unit(y);
  const double c = a.dot(b);
  const double s = a.head<3>().cross(b.head<3>()).norm();
  return std::atan2(s, c);
}

}  // namespace

ModelManifold ModelManifold::torus(Lattice lattice) { return ModelManifold(FlatTorus{std::move(lattice)}); }

ModelManifold ModelManifold::sphere2(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("sphere2: radius must be positive");
  }
  return ModelManifold(RoundSphere2{radius});
}

int ModelManifold::dim() const { return is_torus() ? lattice().dim() : 2; }

double ModelManifold::volume() const {
  if (is_torus()) return lattice().covolume();
  const double r = sphere_radius();
  return 4.0 * kPi * r * r;
}

const Lattice& ModelManifold::lattice() const {
  if (const auto* t = std::get_if<FlatTorus>(&kind_)) return t->lattice;
  throw UnsupportedError("operation requires a flat torus");
}

double ModelManifold::sphere_radius() const {
  if (const auto* s = std::get_if<RoundSphere2>(&kind_)) return s->radius;
  throw UnsupportedError("operation requires the round sphere");
}

double ModelManifold::injectivity_radius() const {
  return is_torus() ? weyl::injectivity_radius(lattice()) : kPi * sphere_radius();
}

double ModelManifold::distance(const Point& x, const Point& y) const {
  validate_point(x);
  validate_point(y);
  if (is_torus()) return torus_distance(lattice(), x, y);
  return sphere_radius() * sphere_angle(x, y);
}

Point ModelManifold::geodesic_point(const Point& x, const Vec& direction, double dist) const {
  validate_point(x);
  if (is_torus()) {
    if (direction.size() != dim() || !(direction.norm() > 0.0)) {
      throw PreconditionError("geodesic direction must be a nonzero vector of the torus dimension");
    }
    return x + dist * direction / direction.norm();
  }
  const double bearing = direction.size() > 0 ? direction(0) : 0.0;
  const Vec p = sphere_unit(x);
  Vec e_theta(3);
  e_theta << std::cos(x(0)) * std::cos(x(1)), std::cos(x(0)) * std::sin(x(1)), -std::sin(x(0));
  Vec e_phi(3);
  e_phi << -std::sin(x(1)), std::cos(x(1)), 0.0;
  const Vec t = std::cos(bearing) * e_theta + std::sin(bearing) * e_phi;
  const double a = dist / sphere_radius();
  const Vec q = std::cos(a) * p + std::sin(a) * t;
  Point out(2);
  out << std::atan2(std::hypot(q(0), q(1)), q(2)), std::atan2(q(1), q(0));
  return out;
}

void ModelManifold::validate_point(const Point& p) const {
  if (p.size() != dim()) {
    throw PreconditionError("point has " + std::to_string(p.size()) + " coordinates, manifold dimension is " +
                            std::to_string(dim()));
  }
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i))) throw PreconditionError("point coordinates must be finite");
  }
}

std::string ModelManifold::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (is_torus()) {
    const Mat& b = lattice().basis();
    os << "torus:" << b.cols() << ":[";
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      os << (j ? ";" : "");
      for (Eigen::Index i = 0; i < b.rows(); ++i) os << (i ? "," : "") << b(i, j);
    }
    os << "]";
  } else {
    os << "sphere2:" << sphere_radius();
  }
  return os.str();
}

double sphere_level(int l, double radius) {
  return std::sqrt(static_cast<double>(l) * (l + 1.0)) / radius;
}

std::vector<EigenLevel> eigenlevels(const ModelManifold& m, double lambda_max, std::size_t cap) {
  if (!(lambda_max > 0.0)) throw DomainError("eigenlevels: lambda_max must be positive");
  std::vector<EigenLevel> levels;
  if (!m.is_torus()) {
    const double r = m.sphere_radius();
    for (int l = 0; sphere_level(l, r) <= lambda_max; ++l) {
      if (static_cast<std::size_t>(l) > cap) throw ResourceError("eigenlevels: level cap exceeded");
      levels.push_back(EigenLevel{sphere_level(l, r), static_cast<std::size_t>(2 * l + 1), {}, l});
    }
    return levels;
  }
  auto pts = enumerate_dual(m.lattice(), lambda_max, cap);
  for (auto& p : pts) {
    // Equal-length vectors can differ by a rounding error in their computed norms.
    if (!levels.empty() && std::abs(p.norm - levels.back().sqrt_eigenvalue) <=
                               1e-12 * std::max(1.0, p.norm)) {
      levels.back().modes.push_back(std::move(p));
      ++levels.back().multiplicity;
    } else {
      const double norm = p.norm;
      levels.push_back(EigenLevel{norm, 1, {std::move(p)}, -1});
    }
  }
  return levels;
}

Spectrum::Spectrum(ModelManifold m, double lambda_max, std::size_t cap)
    : manifold_(std::move(m)), lambda_max_(lambda_max) {
  if (!(lambda_max > 0.0)) throw DomainError("Spectrum: lambda_max must be positive");
  if (manifold_.is_torus()) {
    modes_ = enumerate_dual(manifold_.lattice(), lambda_max, cap);
    norms_.reserve(modes_.size());
    for (const auto& p : modes_) norms_.push_back(p.norm);
  } else {
    const double r = manifold_.sphere_radius();
    for (int l = 0; sphere_level(l, r) <= lambda_max; ++l) norms_.push_back(sphere_level(l, r));
  }
}

std::size_t Spectrum::mode_end(double lambda) const {
  return static_cast<std::size_t>(std::upper_bound(norms_.begin(), norms_.end(), lambda) - norms_.begin());
}

std::span<const DualPoint> Spectrum::modes_in(double lo, double hi) const {
  const std::size_t b = lo < 0.0 ? 0 : mode_end(lo);
  const std::size_t e = mode_end(hi);
  return std::span<const DualPoint>(modes_).subspan(b, e - b);
}

std::size_t Spectrum::count(double lambda) const {
  require_covered(lambda);
  const std::size_t e = mode_end(lambda);
  if (manifold_.is_torus()) return e;
  // Levels 0..e-1 hold sum (2l + 1) = e^2 states.
  return e * e;
}

void Spectrum::require_covered(double lambda) const {
  if (lambda > lambda_max_ * (1.0 + 1e-15)) {
    throw PreconditionError("lambda " + std::to_string(lambda) + " exceeds the materialized spectrum (lambda_max " +
                            std::to_string(lambda_max_) + ")");
  }
}

void Spectrum::require_off_spectrum(double lambda) const {
  auto it = std::lower_bound(norms_.begin(), norms_.end(), lambda - kSpectrumTolerance);
  if (it != norms_.end() && std::abs(*it - lambda) <= kSpectrumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambda = " << lambda << " lies on the spectrum (sqrt-eigenvalue " << *it
        << "); shift lambda off the spectrum";
    throw SpectrumError(msg.str());
  }
}

double Spectrum::sphere_sum(double lo, double hi, const Point& x, const Point& y) const {
  const double r = manifold_.sphere_radius();
  const double c = std::cos(sphere_angle(x, y));
  double sum = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  for (int l = 0;; ++l) {
    if (l > 0) {
      const double next = l == 1 ? c : ((2.0 * l - 1.0) * c * cur - (l - 1.0) * prev) / l;
      prev = cur;
      cur = next;
    }
    const double level = sphere_level(l, r);
    if (level > hi) break;
    if (level > lo) sum += (2.0 * l + 1.0) * cur;
  }
  return sum / (4.0 * kPi * r * r);
}

double Spectrum::spectral_function(double lambda, const Point& x, const Point& y,
                                   const DerivIndex& d) const {
  if (!(lambda > 0.0)) throw DomainError("spectral_function: lambda must be positive");
  manifold_.validate_point(x);
  manifold_.validate_point(y);
  d.validate(manifold_.dim());
  require_covered(lambda);
  require_off_spectrum(lambda);
  if (!manifold_.is_torus()) {
    if (!d.is_zero()) throw UnsupportedError("derivatives of sphere kernels are not supported");
    return sphere_sum(-1.0, lambda, x, y);
  }
  const Vec w = y - x;
  return kernels::omp::mode_sum(modes_in(-1.0, lambda), w, d) / manifold_.volume();
}

double Spectrum::cluster_kernel(double lambda, double width, const Point& x, const Point& y,
                                const DerivIndex& d) const {
  if (!(lambda > 0.0) || !(width > 0.0)) {
    throw DomainError("cluster_kernel: lambda and width must be positive");
  }
  manifold_.validate_point(x);
  manifold_.validate_point(y);
  d.validate(manifold_.dim());
  require_covered(lambda + width);
  require_off_spectrum(lambda);
  require_off_spectrum(lambda + width);
  if (!manifold_.is_torus()) {
    if (!d.is_zero()) throw UnsupportedError("derivatives of sphere kernels are not supported");
    return sphere_sum(lambda, lambda + width, x, y);
  }
  const Vec w = y - x;
  return kernels::omp::mode_sum(modes_in(lambda, lambda + width), w, d) / manifold_.volume();
}

double spectral_function(const ModelManifold& m, double lambda, const Point& x, const Point& y,
                         const DerivIndex& d) {
  if (!(lambda > 0.0)) throw DomainError("spectral_function: lambda must be positive");
  return Spectrum(m, lambda + 2.0 * kSpectrumTolerance).spectral_function(lambda, x, y, d);
}

double cluster_kernel(const ModelManifold& m, double lambda, double width, const Point& x,
                      const Point& y, const DerivIndex& d) {
  if (!(lambda > 0.0) || !(width > 0.0)) {
    throw DomainError("cluster_kernel: lambda and width must be positive");
  }
  if (!m.is_torus()) {
    return Spectrum(m, lambda + width + 2.0 * kSpectrumTolerance).cluster_kernel(lambda, width, x, y, d);
  }
  m.validate_point(x);
  m.validate_point(y);
  d.validate(m.dim());
  const double lo = std::max(0.0, lambda - 2.0 * kSpectrumTolerance);
  const auto shell = enumerate_dual_shell(m.lattice(), lo, lambda + width + 2.0 * kSpectrumTolerance);
  std::vector<DualPoint> inside;
  inside.reserve(shell.size());
  for (const auto& p : shell) {
    if (std::abs(p.norm - lambda) <= kSpectrumTolerance || std::abs(p.norm - lambda - width) <= kSpectrumTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "window endpoint lies on the spectrum (sqrt-eigenvalue " << p.norm
          << "); shift lambda off the spectrum";
      throw SpectrumError(msg.str());
    }
    if (p.norm > lambda && p.norm <= lambda + width) inside.push_back(p);
  }
  const Vec w = y - x;
  return kernels::omp::mode_sum(inside, w, d) / m.volume();
}

}  // namespace weyl
