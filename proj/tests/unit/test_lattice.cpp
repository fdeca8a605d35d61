#include "weyl/error.hpp"
#include "weyl/lattice.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace weyl;

namespace {

// Brute force over a generous coefficient box.
std::vector<double> brute_norms(const Mat& gen, const Vec& offset, double lo, double hi, int box) {
  std::vector<double> out;
  const int n = static_cast<int>(gen.cols());
  const int zbox = n == 3 ? box : 0;
  for (int a = -box; a <= box; ++a) {
    for (int b = -box; b <= box; ++b) {
      for (int c = -zbox; c <= zbox; ++c) {
        Vec coeff(n);
        if (n == 2) coeff << a, b;
        else coeff << a, b, c;
        const double r = (offset + gen * coeff).norm();
        if (r > lo && r <= hi) out.push_back(r);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Lattice skew2() {
  Mat b(2, 2);
  b << 2.0, 0.7, 0.3, 1.6;
  return Lattice(b);
}

Lattice skew3() {
  Mat b(3, 3);
  b << 1.0, 0.4, 0.1, 0.0, 1.3, 0.5, 0.2, 0.0, 0.9;
  return Lattice(b);
}

}  // namespace

TEST_CASE("dual basis pairs to 2 pi") {
  for (const auto& l : {Lattice::square(2, kTwoPi), Lattice::hexagonal(1.0), skew2(), skew3()}) {
    const Mat g = l.basis().transpose() * l.dual_basis();
    const Mat id = kTwoPi * Mat::Identity(l.dim(), l.dim());
    CHECK((g - id).norm() < 1e-12);
    CHECK(l.covolume() == doctest::Approx(std::abs(l.basis().determinant())));
  }
}

TEST_CASE("unit square dual points within 10") {
  const auto pts = enumerate_dual(Lattice::square(2, kTwoPi), 10.0);
  std::size_t brute = 0;
  for (int a = -10; a <= 10; ++a) {
    for (int b = -10; b <= 10; ++b) brute += a * a + b * b <= 100 ? 1 : 0;
  }
  CHECK(brute == 317);
  CHECK(pts.size() == brute);
  CHECK(shell_count(Lattice::square(2, kTwoPi), 0.0, 10.0) + 1 == 317);
}

TEST_CASE("enumeration matches brute force on skew lattices") {
  for (const auto& l : {skew2(), skew3(), Lattice::hexagonal(1.3)}) {
    const double radius = l.dim() == 2 ? 40.0 : 25.0;
    const auto pts = enumerate_dual(l, radius);
    const auto ref = brute_norms(l.dual_basis(), Vec::Zero(l.dim()), -1.0, radius, l.dim() == 2 ? 40 : 25);
    REQUIRE(pts.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(pts[i].norm == doctest::Approx(ref[i]).epsilon(1e-13));
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1].norm <= pts[i].norm);
    for (const auto& p : pts) CHECK((l.dual_basis() * p.coeffs.cast<double>() - p.vector).norm() < 1e-12);
  }
}

TEST_CASE("shells partition the ball") {
  const auto l = skew3();
  const std::size_t all = enumerate_dual(l, 20.0).size();
  CHECK(enumerate_dual_shell(l, 0.0, 12.0).size() + enumerate_dual_shell(l, 12.0, 20.0).size() + 1 == all);
  CHECK(shell_count(l, 12.0, 20.0) == enumerate_dual_shell(l, 12.0, 20.0).size());
}

TEST_CASE("deck images match brute force") {
  const auto l = skew2();
  Point x(2), y(2);
  x << 0.3, -0.2;
  y << 5.1, 2.2;
  const auto imgs = deck_images(l, x, y, 30.0);
  const auto ref = brute_norms(l.basis(), y - x, -1.0, 30.0, 60);
  REQUIRE(imgs.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(imgs[i].norm() == doctest::Approx(ref[i]).epsilon(1e-13));
}

TEST_CASE("distance and log") {
  const auto l = Lattice::square(2, kTwoPi);
  CHECK(injectivity_radius(l) == doctest::Approx(kPi));
  Point x(2), y(2);
  x << 0.1, 0.1;
  y << 6.2, 0.4;
  CHECK(torus_distance(l, x, y) == doctest::Approx(std::hypot(kTwoPi - 6.1, 0.3)));
  const Vec v = torus_log(l, x, y);
  CHECK(v(0) == doctest::Approx(6.1 - kTwoPi));
  CHECK(v(1) == doctest::Approx(0.3));
  Point z(2);
  z << 0.1 + kPi, 0.1;
  CHECK_THROWS_AS((void)torus_log(l, x, z), AmbiguityError);
  CHECK(torus_distance(l, x, z) == doctest::Approx(kPi));
}

TEST_CASE("golden and hex injectivity radii") {
  const double phi = std::numbers::phi;
  const std::vector<double> periods{kTwoPi, kTwoPi * phi};
  CHECK(injectivity_radius(Lattice::rectangular(periods)) == doctest::Approx(kPi));
  CHECK(injectivity_radius(Lattice::hexagonal(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("errors") {
  Mat sing(2, 2);
  sing << 1, 2, 2, 4;
  CHECK_THROWS_AS(Lattice{sing}, DomainError);
  CHECK_THROWS_AS(Lattice::square(4, 1.0), DomainError);
  CHECK_THROWS_AS(enumerate_dual(Lattice::square(3, 1.0), 1e4, 1000), ResourceError);
}
