#include "weyl/lattice.hpp"

#include "weyl/error.hpp"
#include "weyl/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace weyl {

Lattice::Lattice(Mat basis) : basis_(std::move(basis)) {
  const auto n = basis_.cols();
  if (basis_.rows() != n || (n != 2 && n != 3)) {
    throw DomainError("Lattice: basis must be a square 2x2 or 3x3 matrix");
  }
  covolume_ = std::abs(basis_.determinant());
  if (!(covolume_ > 1e-300) || !std::isfinite(covolume_)) {
    throw DomainError("Lattice: basis is singular");
  }
  dual_ = kTwoPi * basis_.inverse().transpose();
}

Lattice Lattice::square(int dim, double period) {
  if (dim != 2 && dim != 3) throw DomainError("Lattice::square: dimension must be 2 or 3");
  if (!(period > 0.0)) throw DomainError("Lattice::square: period must be positive");
  Mat b = Mat::Identity(dim, dim) * period;
  return Lattice(b);
}

Lattice Lattice::rectangular(std::span<const double> periods) {
  const auto n = static_cast<Eigen::Index>(periods.size());
  if (n != 2 && n != 3) throw DomainError("Lattice::rectangular: need 2 or 3 periods");
  Mat b = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(periods[static_cast<std::size_t>(i)] > 0.0)) {
      throw DomainError("Lattice::rectangular: periods must be positive");
    }
    b(i, i) = periods[static_cast<std::size_t>(i)];
  }
  return Lattice(b);
}

Lattice Lattice::hexagonal(double shortest) {
  if (!(shortest > 0.0)) throw DomainError("Lattice::hexagonal: period must be positive");
  Mat b(2, 2);
  b << shortest, 0.5 * shortest, 0.0, 0.5 * std::sqrt(3.0) * shortest;
  return Lattice(b);
}

namespace {

struct Enumerator {
  const Mat& gen;
  const Vec& offset;
  double lo;
  double hi;
  std::size_t cap;
  int n;
  std::vector<long> cmin;
  std::vector<long> cmax;
  std::vector<LatticeVector> out;
  IVec c;

  void recurse(int axis, const Vec& partial) {
    if (axis == n - 1) {
      solve_last(partial);
      return;
    }
    for (long ci = cmin[static_cast<std::size_t>(axis)]; ci <= cmax[static_cast<std::size_t>(axis)]; ++ci) {
      c(axis) = ci;
      recurse(axis + 1, partial + static_cast<double>(ci) * gen.col(axis));
    }
  }

  void solve_last(const Vec& u) {
    const auto m = gen.col(n - 1);
    const double a = m.squaredNorm();
    const double b = u.dot(m);
    const double disc = b * b - a * (u.squaredNorm() - hi * hi);
    if (disc < 0.0) return;
    const double root = std::sqrt(disc);
    const auto first = static_cast<long>(std::ceil((-b - root) / a - 1e-9));
    const auto last = static_cast<long>(std::floor((-b + root) / a + 1e-9));
    for (long cl = first; cl <= last; ++cl) {
      Vec v = u + static_cast<double>(cl) * m;
      const double norm = v.norm();
      if (norm > hi || !(norm > lo)) continue;
      c(n - 1) = cl;
      out.push_back(LatticeVector{c, v, norm});
      if (out.size() > cap) {
        throw ResourceError("lattice enumeration exceeded the cap of " + std::to_string(cap) +
                            " points (radius " + std::to_string(hi) + ")");
      }
    }
  }
};

}  // namespace

std::vector<LatticeVector> enumerate_lattice(const Mat& generator, const Vec& offset, double lo,
                                             double hi, std::size_t cap) {
  const int n = static_cast<int>(generator.cols());
  if (!(hi > 0.0) || !std::isfinite(hi)) {
    throw DomainError("enumerate_lattice: radius must be positive and finite");
  }
  const double det = std::abs(generator.determinant());
  const double expected = specfun::unit_ball_volume(n) * std::pow(hi, n) / det;
  if (expected > static_cast<double>(cap)) {
    std::ostringstream msg;
    msg << "lattice enumeration to radius " << hi << " needs about " << expected
        << " points, above the cap of " << cap;
    throw ResourceError(msg.str());
  }
  const Mat inv = generator.inverse();
  const Vec center = -(inv * offset);
  Enumerator e{generator, offset, lo, hi, cap, n, {}, {}, {}, IVec::Zero(n)};
  e.cmin.resize(static_cast<std::size_t>(n));
  e.cmax.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double reach = hi * inv.row(i).norm();
    e.cmin[static_cast<std::size_t>(i)] = static_cast<long>(std::floor(center(i) - reach)) - 1;
    e.cmax[static_cast<std::size_t>(i)] = static_cast<long>(std::ceil(center(i) + reach)) + 1;
  }
  e.out.reserve(static_cast<std::size_t>(expected * 1.1) + 16);
  e.recurse(0, offset);
  std::sort(e.out.begin(), e.out.end(), [](const LatticeVector& a, const LatticeVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(),
                                        b.coeffs.end());
  });
  return std::move(e.out);
}

std::vector<DualPoint> enumerate_dual(const Lattice& lattice, double radius, std::size_t cap) {
  if (!(radius > 0.0)) throw DomainError("enumerate_dual: radius must be positive");
  return enumerate_lattice(lattice.dual_basis(), Vec::Zero(lattice.dim()), -1.0, radius, cap);
}

std::vector<DualPoint> enumerate_dual_shell(const Lattice& lattice, double lo, double hi,
                                            std::size_t cap) {
  if (!(lo >= 0.0) || !(hi > lo)) throw DomainError("enumerate_dual_shell: need 0 <= lo < hi");
  return enumerate_lattice(lattice.dual_basis(), Vec::Zero(lattice.dim()), lo, hi, cap);
}

std::size_t shell_count(const Lattice& lattice, double lo, double hi, std::size_t cap) {
  return enumerate_dual_shell(lattice, lo, hi, cap).size();
}

double injectivity_radius(const Lattice& lattice) {
  const Mat& b = lattice.basis();
  double bound = b.col(0).norm();
  for (Eigen::Index i = 1; i < b.cols(); ++i) bound = std::min(bound, b.col(i).norm());
  const auto pts = enumerate_lattice(b, Vec::Zero(lattice.dim()), 0.0, bound * (1.0 + 1e-12));
  // Nonempty: the shortest basis column is itself a candidate.
  return 0.5 * pts.front().norm;
}

namespace {

std::vector<LatticeVector> nearest_images(const Lattice& lattice, const Point& x, const Point& y) {
  if (x.size() != lattice.dim() || y.size() != lattice.dim()) {
    throw DomainError("torus point has the wrong dimension");
  }
  const Vec diff = y - x;
  Vec c = lattice.basis().inverse() * diff;
  Vec w0 = diff - lattice.basis() * c.array().round().matrix();
  const double reach = w0.norm() * (1.0 + 1e-9) + 1e-12;
  return enumerate_lattice(lattice.basis(), diff, -1.0, reach);
}

}  // namespace

double torus_distance(const Lattice& lattice, const Point& x, const Point& y) {
  return nearest_images(lattice, x, y).front().norm;
}

Vec torus_log(const Lattice& lattice, const Point& x, const Point& y) {
  const auto images = nearest_images(lattice, x, y);
  const double d = images.front().norm;
  const double inj = injectivity_radius(lattice);
  if (d >= inj * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "torus_log: distance " << d << " reaches the injectivity radius " << inj
        << "; minimal representatives:";
    for (const auto& im : images) {
      if (im.norm > d * (1.0 + 1e-9)) break;
      msg << " (";
      for (Eigen::Index i = 0; i < im.vector.size(); ++i) msg << (i ? ", " : "") << im.vector(i);
      msg << ")";
    }
    throw AmbiguityError(msg.str());
  }
  return images.front().vector;
}

std::vector<Vec> deck_images(const Lattice& lattice, const Point& x, const Point& y, double radius,
                             std::size_t cap) {
  if (!(radius > 0.0)) throw DomainError("deck_images: radius must be positive");
  const auto pts = enumerate_lattice(lattice.basis(), y - x, -1.0, radius, cap);
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.vector);
  return out;
}

}  // namespace weyl
