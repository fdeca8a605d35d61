#include "weyl/error.hpp"
#include "weyl/randomwaves.hpp"
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

}  // namespace

TEST_CASE("keyed normals match a reference implementation") {
  // values from an independent SplitMix64 + Box-Muller script
  CHECK(keyed_normal(0, 0, 0) == doctest::Approx(-0.7051073972484628).epsilon(1e-15));
  CHECK(keyed_normal(42, 7, 12345) == doctest::Approx(-1.5022157531440512).epsilon(1e-15));
  CHECK(keyed_normal(9223372036854775813ULL, 999, 9223372049739677700ULL) ==
        doctest::Approx(2.360757561371767).epsilon(1e-15));
}

TEST_CASE("keyed normals have unit variance") {
  const int n = 200000;
  double s = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = keyed_normal(7, static_cast<std::uint64_t>(i / 100), static_cast<std::uint64_t>(i % 100));
    s += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.04));
}

TEST_CASE("real basis reproduces the cluster kernel") {
  const RandomWaveEnsemble t(ModelManifold::torus(Lattice::square(2, kTwoPi)), 30.25, 1.0, 1, 10);
  const RandomWaveEnsemble s(ModelManifold::sphere2(), 30.1, 2.0, 1, 10);
  CHECK(s.modes().size() == 2 * 30 + 1 + 2 * 31 + 1);
  for (const auto& e : {&t, &s}) {
    const Point x = pt(0.9, 0.3), y = pt(1.2, -0.4);
    CHECK(e->basis_covariance(x, y) == doctest::Approx(e->exact_covariance(x, y)).epsilon(1e-11));
    CHECK(e->basis_covariance(x, x) == doctest::Approx(e->exact_covariance(x, x)).epsilon(1e-12));
  }
  CHECK(t.normalization() == doctest::Approx(1.0 / std::sqrt(30.25)));
}

TEST_CASE("samples are reproducible and keyed") {
  const RandomWaveEnsemble e(ModelManifold::torus(Lattice::square(2, kTwoPi)), 20.25, 1.0, 42, 50);
  const auto a = e.coefficients(3);
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == keyed_normal(42, 3, e.modes()[j].key));
  const Point x = pt(0.5, 2.0);
  const auto phi = e.basis_values(x);
  double ref = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) ref += a[j] * phi[j];
  CHECK(sample_wave(e, 3, x) == doctest::Approx(e.normalization() * ref).epsilon(1e-13));
  const RandomWaveEnsemble again(ModelManifold::torus(Lattice::square(2, kTwoPi)), 20.25, 1.0, 42, 50);
  CHECK(sample_wave(again, 3, x) == sample_wave(e, 3, x));
  const RandomWaveEnsemble other(ModelManifold::torus(Lattice::square(2, kTwoPi)), 20.25, 1.0, 43, 50);
  CHECK(sample_wave(other, 3, x) != sample_wave(e, 3, x));
  // keys are distinct
  for (std::size_t i = 1; i < e.modes().size(); ++i) CHECK(e.modes()[i].key != e.modes()[i - 1].key);
  CHECK_THROWS_AS((void)e.coefficients(50), PreconditionError);
}

TEST_CASE("empirical covariance converges to the exact covariance") {
  const RandomWaveEnsemble e(ModelManifold::torus(Lattice::square(2, kTwoPi)), 40.25, 1.0, 5, 4000);
  const std::vector<PointPair> pairs{{pt(0, 0), pt(0, 0)}, {pt(0, 0), pt(0.03, 0.01)}, {pt(1, 1), pt(1.2, 0.9)}};
  const auto par = covariance_report(e, pairs, true);
  const auto ser = covariance_report(e, pairs, false);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(par.empirical[i] == ser.empirical[i]);
    CHECK(par.std_errors[i] == ser.std_errors[i]);
    CHECK(std::abs(par.empirical[i] - par.exact[i]) <= 5.0 * par.std_errors[i]);
    CHECK(par.universal_limit[i] ==
          doctest::Approx(specfun::universal_covariance(2, 40.25 * e.manifold().distance(pairs[i].x, pairs[i].y))));
  }
  const auto single = empirical_covariance(e, pairs[1].x, pairs[1].y);
  CHECK(single.mean_product == doctest::Approx(par.empirical[1]).epsilon(1e-13));
}

TEST_CASE("rescaled covariance") {
  const RandomWaveEnsemble e(ModelManifold::torus(Lattice::square(2, kTwoPi)), 200.25, 1.0, 1, 2);
  Vec zero = Vec::Zero(2);
  const auto r0 = rescaled_covariance_error(e, pt(0, 0), zero, zero);
  CHECK(r0.universal == doctest::Approx(1.0 / kTwoPi));
  CHECK(r0.exact_rescaled == doctest::Approx(1.0 / kTwoPi).epsilon(0.1));
  Vec u(2);
  u << 1.0, 0.5;
  const auto r1 = rescaled_covariance_error(e, pt(0, 0), u, zero);
  CHECK(r1.universal == doctest::Approx(specfun::universal_covariance(2, u.norm())));
  CHECK(r1.exact_rescaled == doctest::Approx(e.exact_covariance(pt(0, 0), u / 200.25)));
  Vec big(2);
  big << 100.0, 0.0;
  CHECK_THROWS_AS(rescaled_covariance_error(e, pt(0, 0), big, zero), PreconditionError);
  CHECK(default_rescale_radius(200.25) == doctest::Approx(std::sqrt(200.25 / std::log(200.25))));
}

TEST_CASE("bad windows") {
  const auto m = ModelManifold::torus(Lattice::square(2, kTwoPi));
  CHECK_THROWS_AS(RandomWaveEnsemble(m, 5.0, 0.5, 1, 10), SpectrumError);
  CHECK_THROWS_AS(RandomWaveEnsemble(m, 1.1, 0.2, 1, 10), PreconditionError);
  CHECK_THROWS_AS(RandomWaveEnsemble(m, 1.1, 0.2, 1, 0), PreconditionError);
}
