#include "weyl/error.hpp"
#include "weyl/manifolds.hpp"
#include "weyl/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace weyl;

namespace {

Point sph(double t, double p) {
  Point x(2);
  x << t, p;
  return x;
}

Point pt(double a, double b) {
  Point x(2);
  x << a, b;
  return x;
}

}  // namespace

TEST_CASE("torus counting and diagonal values") {
  const auto m = ModelManifold::torus(Lattice::square(2, kTwoPi));
  const Spectrum s(m, 10.5);
  CHECK(s.count(10.0) == 317);
  const Point x = pt(0.4, 1.7);
  CHECK(s.spectral_function(10.02, x, x) == doctest::Approx(317.0 / (4 * kPi * kPi)).epsilon(1e-13));

  // d_x1 d_y1 on the diagonal is sum k_1^2 / covolume.
  double k1sq = 0.0;
  for (int a = -10; a <= 10; ++a) {
    for (int b = -10; b <= 10; ++b) k1sq += a * a + b * b <= 100 ? a * a : 0;
  }
  CHECK(s.spectral_function(10.02, x, x, DerivIndex::along(0, 1, 1)) == doctest::Approx(k1sq / (4 * kPi * kPi)).epsilon(1e-13));
  CHECK(std::abs(s.spectral_function(10.02, x, x, DerivIndex::along(0, 1, 0))) < 1e-12);
}

TEST_CASE("torus spectral function off the diagonal") {
  const auto m = ModelManifold::torus(Lattice::square(2, kTwoPi));
  const Point x = pt(0.0, 0.0), y = pt(0.3, -0.5);
  double ref = 0.0, ref_dx = 0.0;
  for (int a = -6; a <= 6; ++a) {
    for (int b = -6; b <= 6; ++b) {
      if (a * a + b * b > 6.3 * 6.3) continue;
      const double ph = a * 0.3 - b * 0.5;
      ref += std::cos(ph);
      ref_dx += a * std::sin(ph);  // d/dx1 of cos(k.(y - x))
    }
  }
  CHECK(spectral_function(m, 6.3, x, y) == doctest::Approx(ref / (4 * kPi * kPi)).epsilon(1e-13));
  CHECK(spectral_function(m, 6.3, x, y, DerivIndex::along(0, 1, 0)) == doctest::Approx(ref_dx / (4 * kPi * kPi)).epsilon(1e-12));
}

TEST_CASE("cluster kernel is a difference of spectral functions") {
  Mat b(2, 2);
  b << 2.0, 0.7, 0.3, 1.6;
  const auto m = ModelManifold::torus(Lattice(b));
  const Spectrum s(m, 60.0);
  const Point x = pt(0.1, 0.2), y = pt(0.5, -0.1);
  for (const auto& d : {DerivIndex::none(), DerivIndex::along(1, 1, 1)}) {
    const double diff = s.spectral_function(41.3, x, y, d) - s.spectral_function(40.1, x, y, d);
    CHECK(s.cluster_kernel(40.1, 1.2, x, y, d) == doctest::Approx(diff).epsilon(1e-9));
    CHECK(cluster_kernel(m, 40.1, 1.2, x, y, d) == doctest::Approx(s.cluster_kernel(40.1, 1.2, x, y, d)).epsilon(1e-12));
  }
}

TEST_CASE("on-spectrum lambda is rejected") {
  const auto m = ModelManifold::torus(Lattice::square(2, kTwoPi));
  const Point x = pt(0, 0);
  CHECK_THROWS_AS(spectral_function(m, 5.0, x, x), SpectrumError);
  CHECK_THROWS_AS(cluster_kernel(m, 4.5, 0.5, x, x), SpectrumError);
  CHECK_THROWS_AS(spectral_function(ModelManifold::sphere2(), std::sqrt(6.0), sph(1, 1), sph(1, 1)), SpectrumError);
}

TEST_CASE("sphere levels and spectral function") {
  const auto m = ModelManifold::sphere2();
  const auto levels = eigenlevels(m, 20.0);
  for (std::size_t l = 0; l < levels.size(); ++l) {
    CHECK(levels[l].multiplicity == 2 * l + 1);
    CHECK(levels[l].sqrt_eigenvalue == doctest::Approx(std::sqrt(l * (l + 1.0))));
  }
  const Spectrum s(m, 20.0);
  CHECK(s.count(19.8) == 400);  // levels 0..19
  const Point x = sph(0.9, 0.3), y = sph(2.0, -1.4);
  double ref = 0.0;
  for (int l = 0; l < 20; ++l) {
    const auto a = specfun::real_spherical_harmonics(l, 0.9, 0.3);
    const auto c = specfun::real_spherical_harmonics(l, 2.0, -1.4);
    for (std::size_t i = 0; i < a.size(); ++i) ref += a[i] * c[i];
  }
  CHECK(s.spectral_function(19.8, x, y) == doctest::Approx(ref).epsilon(1e-11));
  CHECK(s.spectral_function(19.8, x, x) == doctest::Approx(400.0 / (4 * kPi)).epsilon(1e-13));
  CHECK(cluster_kernel(m, 1.0, 1.0, x, x) == doctest::Approx(3.0 / (4 * kPi)).epsilon(1e-13));
  // radius scaling: eigenvalues scale by 1/R^2, densities by 1/R^2
  const auto big = ModelManifold::sphere2(2.0);
  CHECK(spectral_function(big, 0.5, x, y) == doctest::Approx(spectral_function(m, 1.0, x, y) / 4.0).epsilon(1e-13));
  CHECK_THROWS_AS((void)s.spectral_function(5.0, x, y, DerivIndex::along(0, 1, 0)), UnsupportedError);
}

TEST_CASE("geodesics") {
  const auto s = ModelManifold::sphere2(1.5);
  const Point x = sph(1.1, 0.4);
  for (double bearing : {0.0, 0.7, 2.5, 4.0}) {
    Vec dir(1);
    dir(0) = bearing;
    for (double d : {0.01, 0.5, 2.0}) CHECK(s.distance(x, s.geodesic_point(x, dir, d)) == doctest::Approx(d).epsilon(1e-12));
  }
  const auto t = ModelManifold::torus(Lattice::hexagonal(2.0));
  Vec dir(2);
  dir << 3.0, 4.0;
  CHECK(t.distance(pt(0, 0), t.geodesic_point(pt(0, 0), dir, 0.8)) == doctest::Approx(0.8));
  CHECK(t.injectivity_radius() == doctest::Approx(1.0));
  CHECK(s.injectivity_radius() == doctest::Approx(1.5 * kPi));
  CHECK(s.volume() == doctest::Approx(4 * kPi * 2.25));
}

TEST_CASE("validation") {
  const auto t = ModelManifold::torus(Lattice::square(2, kTwoPi));
  Point bad(3);
  bad << 0, 0, 0;
  CHECK_THROWS_AS(t.validate_point(bad), PreconditionError);
  CHECK_THROWS_AS(DerivIndex::along(2, 1, 0).validate(2), PreconditionError);
  DerivIndex three = DerivIndex::along(0, 2, 1);
  CHECK_THROWS_AS(three.validate(2), UnsupportedError);
  CHECK_THROWS_AS(ModelManifold::sphere2(-1.0), DomainError);
  CHECK_THROWS_AS((void)ModelManifold::sphere2().lattice(), UnsupportedError);
  CHECK(t.describe().rfind("torus:2:", 0) == 0);
  CHECK(ModelManifold::sphere2().describe() == "sphere2:1");
}
