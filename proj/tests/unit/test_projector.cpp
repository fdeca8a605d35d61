#include "weyl/error.hpp"
#include "weyl/projector.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace weyl;

namespace {

Point pt(double a, double b) {
  Point x(2);
  x << a, b;
  return x;
}

// (2 pi)^{-2} int_{|xi| <= lambda} xi_1^p1 cos or sin (<xi, w>): Gauss in r, trapezoid in angle.
double disk_integral(double lambda, const Vec& w, int p1, bool use_sin) {
  const auto rad = quadrature::composite_nodes(0.0, lambda, 40);
  const int na = 600;
  double s = 0.0;
  for (std::size_t i = 0; i < rad.x.size(); ++i) {
    const double r = rad.x[i];
    for (int j = 0; j < na; ++j) {
      const double a = kTwoPi * j / na;
      const double x1 = r * std::cos(a), x2 = r * std::sin(a);
      const double ph = x1 * w(0) + x2 * w(1);
      s += rad.w[i] * r * std::pow(x1, p1) * (use_sin ? std::sin(ph) : std::cos(ph));
    }
  }
  return s * (kTwoPi / na) / (4 * kPi * kPi);
}

}  // namespace

TEST_CASE("leading term on the diagonal") {
  const auto m = ModelManifold::torus(Lattice::square(2, kTwoPi));
  const Point x = pt(0.3, 0.3);
  for (double lam : {1.0, 7.5, 40.0}) {
    CHECK(leading_term(m, lam, x, x) == doctest::Approx(lam * lam / (4 * kPi)).epsilon(1e-14));
    CHECK(leading_term(m, lam, x, x, DerivIndex::along(0, 1, 1)) ==
          doctest::Approx(std::pow(lam, 4) / (16 * kPi)).epsilon(1e-13));
    CHECK(leading_term(m, lam, x, x, DerivIndex::along(1, 2, 0)) ==
          doctest::Approx(-std::pow(lam, 4) / (16 * kPi)).epsilon(1e-13));
  }
  const auto m3 = ModelManifold::torus(Lattice::square(3, kTwoPi));
  Point z(3);
  z << 0, 0, 0;
  CHECK(leading_term(m3, 5.0, z, z) == doctest::Approx(125.0 * (4 * kPi / 3) / std::pow(kTwoPi, 3)).epsilon(1e-14));
  CHECK(leading_term(ModelManifold::sphere2(), 5.0, pt(1, 1), pt(1, 1)) == doctest::Approx(25.0 / (4 * kPi)).epsilon(1e-14));
}

TEST_CASE("leading term off the diagonal matches the disk integral") {
  const auto m = ModelManifold::torus(Lattice::square(2, kTwoPi));
  const Point x = pt(0.1, 0.2), y = pt(0.4, -0.2);
  const Vec w = y - x;
  const double lam = 9.0;
  CHECK(leading_term(m, lam, x, y) == doctest::Approx(disk_integral(lam, w, 0, false)).epsilon(1e-11));
  // d/dy1 of cos(<xi, w>) is -xi_1 sin; d/dx1 flips the sign
  CHECK(leading_term(m, lam, x, y, DerivIndex::along(0, 0, 1)) ==
        doctest::Approx(-disk_integral(lam, w, 1, true)).epsilon(1e-11));
  CHECK(leading_term(m, lam, x, y, DerivIndex::along(0, 1, 0)) ==
        doctest::Approx(disk_integral(lam, w, 1, true)).epsilon(1e-11));
  CHECK(leading_term(m, lam, x, y, DerivIndex::along(0, 1, 1)) ==
        doctest::Approx(disk_integral(lam, w, 2, false)).epsilon(1e-11));
}

TEST_CASE("derivatives agree with finite differences") {
  const auto m = ModelManifold::torus(Lattice::square(3, kTwoPi));
  Point x(3), y(3);
  x << 0.1, 0.2, 0.3;
  y << 0.5, -0.1, 0.2;
  const double lam = 6.0, h = 1e-5;
  for (int i = 0; i < 3; ++i) {
    Point yp = y, ym = y;
    yp(i) += h;
    ym(i) -= h;
    const double fd = (leading_term(m, lam, x, yp) - leading_term(m, lam, x, ym)) / (2 * h);
    CHECK(leading_term(m, lam, x, y, DerivIndex::along(i, 0, 1)) == doctest::Approx(fd).epsilon(1e-7));
    const double fd2 = (leading_term(m, lam, x, yp, DerivIndex::along(i, 0, 1)) -
                        leading_term(m, lam, x, ym, DerivIndex::along(i, 0, 1))) / (2 * h);
    CHECK(leading_term(m, lam, x, y, DerivIndex::along(i, 0, 2)) == doctest::Approx(fd2).epsilon(1e-6));
  }
  const double fdl = (leading_term(m, lam + h, x, y) - leading_term(m, lam - h, x, y)) / (2 * h);
  CHECK(leading_term_rate(m, lam, x, y) == doctest::Approx(fdl).epsilon(1e-7));
  const DerivIndex d = DerivIndex::along(1, 1, 1);
  const double fdd = (leading_term(m, lam + h, x, y, d) - leading_term(m, lam - h, x, y, d)) / (2 * h);
  CHECK(leading_term_rate(m, lam, x, y, d) == doctest::Approx(fdd).epsilon(1e-6));
}

TEST_CASE("remainder is exact minus leading") {
  const auto m = ModelManifold::torus(Lattice::square(2, kTwoPi));
  const Spectrum s(m, 30.0);
  const auto r = remainder(s, 20.3, pt(0, 0), pt(0.2, 0.1), DerivIndex::along(0, 1, 1));
  CHECK(r.remainder == doctest::Approx(r.exact - r.leading));
  CHECK(r.exact == doctest::Approx(s.spectral_function(20.3, pt(0, 0), pt(0.2, 0.1), DerivIndex::along(0, 1, 1))));
  CHECK(r.dist == doctest::Approx(std::hypot(0.2, 0.1)));
  // N(20.3) - pi 20.3^2 over the covolume
  const auto r0 = remainder(m, 20.3, pt(1, 1), pt(1, 1));
  CHECK(r0.remainder * 4 * kPi * kPi == doctest::Approx(static_cast<double>(s.count(20.3)) - kPi * 20.3 * 20.3));
}

TEST_CASE("scans at grid points") {
  const auto m = ModelManifold::torus(Lattice::square(2, kTwoPi));
  const std::vector<double> grid{10.3, 14.9, 20.3, 30.7};
  const std::vector<PointPair> pairs{{pt(0, 0), pt(0, 0)}, {pt(0, 0), pt(0.5, 0.4)}};
  const auto rep = remainder_scan(m, grid, pairs, {}, LambdaSampling::grid);
  REQUIRE(rep.sup_values.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double sup = 0.0;
    for (const auto& p : pairs) sup = std::max(sup, std::abs(remainder(m, grid[i], p.x, p.y).remainder));
    CHECK(rep.sup_values[i] == doctest::Approx(sup).epsilon(1e-10));
  }
  const std::vector<PointPair> far{{pt(0, 0), pt(2.0, 0.0)}};
  CHECK_THROWS_AS(remainder_scan(m, grid, far), PreconditionError);
  const auto off = offdiagonal_scan(m, grid, 1.0, far, {}, LambdaSampling::grid);
  CHECK(off.sup_values[2] == doctest::Approx(std::abs(spectral_function(m, 20.3, pt(0, 0), pt(2, 0)))).epsilon(1e-10));
  CHECK_THROWS_AS(offdiagonal_scan(m, grid, 1.0, pairs), PreconditionError);
  const std::vector<double> on{10.3, 25.0};
  CHECK_THROWS_AS(remainder_scan(m, on, pairs), SpectrumError);
}

TEST_CASE("window scans see one-sided limits at every level") {
  const auto m = ModelManifold::torus(Lattice::square(2, kTwoPi));
  const std::vector<double> grid{6.1, 8.3, 9.7};
  const Point x = pt(0, 0), y = pt(0.3, 0.2);
  for (const auto& d : {DerivIndex::none(), DerivIndex::along(0, 1, 1)}) {
    const std::vector<PointPair> pairs{{x, y}};
    const auto rep = remainder_scan(m, grid, pairs, d);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      // integer norms sqrt(a^2 + b^2) inside the window, probed just below and above
      std::vector<double> probes{grid[i - 1], grid[i]};
      for (int a = -10; a <= 10; ++a) {
        for (int b = -10; b <= 10; ++b) {
          const double t = std::hypot(a, b);
          if (t > grid[i - 1] && t <= grid[i]) {
            probes.push_back(t - 1e-7);
            if (t + 1e-7 < grid[i]) probes.push_back(t + 1e-7);
          }
        }
      }
      double sup = 0.0;
      for (double l : probes) sup = std::max(sup, std::abs(remainder(m, l, x, y, d).remainder));
      CHECK(rep.sup_values[i] == doctest::Approx(sup).epsilon(1e-5));
    }
    CHECK(rep.sup_values[0] == doctest::Approx(std::abs(remainder(m, grid[0], x, y, d).remainder)).epsilon(1e-12));
  }
  // sphere: jumps at sqrt(l (l + 1))
  const auto s = ModelManifold::sphere2();
  const Point a = pt(1.0, 0.0), b = pt(1.2, 0.1);
  const std::vector<double> sg{3.1, 5.3, 7.9};
  const std::vector<PointPair> sp{{a, b}};
  const auto srep = offdiagonal_scan(s, sg, 0.1, sp);
  for (std::size_t i = 1; i < sg.size(); ++i) {
    double ssup = std::max(std::abs(spectral_function(s, sg[i - 1], a, b)), std::abs(spectral_function(s, sg[i], a, b)));
    for (int l = 1; l <= 8; ++l) {
      const double t = sphere_level(l);
      if (t <= sg[i - 1] || t > sg[i]) continue;
      ssup = std::max({ssup, std::abs(spectral_function(s, t + 1e-7, a, b)), std::abs(spectral_function(s, t - 1e-7, a, b))});
    }
    CHECK(srep.sup_values[i] == doctest::Approx(ssup).epsilon(1e-6));
  }
}

TEST_CASE("bessel cluster prediction") {
  const auto m = ModelManifold::torus(Lattice::square(2, kTwoPi));
  const Spectrum s(m, 60.0);
  const Point x = pt(0, 0), y = pt(0.3, 0.0);
  double sum = 0.0;
  const auto modes = s.modes_in(50.25, 51.25);
  for (const auto& k : modes) sum += k.norm;
  const double mean = sum / static_cast<double>(modes.size());
  const double expected = 1.0 * mean / kTwoPi * specfun::bessel_j(specfun::BesselOrder::integer(0), mean * 0.3);
  CHECK(bessel_cluster_prediction(s, 50.25, 1.0, x, y) == doctest::Approx(expected).epsilon(1e-12));

  const std::vector<double> dist{0.0, 0.1};
  Vec dir(2);
  dir << 1.0, 0.0;
  const auto t = cluster_vs_bessel(m, 50.25, 1.0, x, dir, dist);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1].cluster == doctest::Approx(s.cluster_kernel(50.25, 1.0, x, pt(0.1, 0))).epsilon(1e-12));
  CHECK(t.diagonal == doctest::Approx(static_cast<double>(modes.size()) / (4 * kPi * kPi)));
  CHECK(t.rows[1].rel_error == doctest::Approx(t.rows[1].abs_error / t.diagonal));
}
