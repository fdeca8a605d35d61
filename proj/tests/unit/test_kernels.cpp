#include "weyl/kernels.hpp"
#include "weyl/lattice.hpp"

#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <complex>

using namespace weyl;

namespace {

double complex_term(const Vec& k, const Vec& w, const DerivIndex& d) {
  using C = std::complex<double>;
  C z = std::exp(C(0.0, k.dot(w)));
  for (int i = 0; i < k.size(); ++i) {
    for (int a = 0; a < d.alpha[static_cast<std::size_t>(i)]; ++a) z *= C(0.0, -k(i));
    for (int b = 0; b < d.beta[static_cast<std::size_t>(i)]; ++b) z *= C(0.0, k(i));
  }
  return z.real();
}

std::vector<DerivIndex> all_orders(int dim) {
  std::vector<DerivIndex> out{DerivIndex::none()};
  for (int i = 0; i < dim; ++i) {
    out.push_back(DerivIndex::along(i, 1, 0));
    out.push_back(DerivIndex::along(i, 0, 1));
    out.push_back(DerivIndex::along(i, 1, 1));
    out.push_back(DerivIndex::along(i, 2, 0));
    out.push_back(DerivIndex::along(i, 0, 2));
  }
  DerivIndex mixed;
  mixed.alpha[0] = 1;
  mixed.beta[1] = 1;
  out.push_back(mixed);
  return out;
}

}  // namespace

TEST_CASE("mode_term matches complex arithmetic") {
  Vec k(3), w(3);
  k << 1.5, -2.0, 0.25;
  w << 0.3, 0.7, -1.1;
  for (const auto& d : all_orders(3)) CHECK(kernels::mode_term(k, w, d) == doctest::Approx(complex_term(k, w, d)).epsilon(1e-14));
}

TEST_CASE("serial and omp sums agree") {
  Mat b(2, 2);
  b << 2.0, 0.7, 0.3, 1.6;
  const Lattice l(b);
  const auto modes = enumerate_dual(l, 150.0);
  Vec w(2);
  w << 0.37, -0.21;
  for (const auto& d : all_orders(2)) {
    const double s = kernels::serial::mode_sum(modes, w, d);
    const double p = kernels::omp::mode_sum(modes, w, d);
    double scale = 0.0;
    for (const auto& m : modes) scale += std::abs(kernels::mode_term(m.vector, w, d));
    CHECK(std::abs(s - p) <= 1e-13 * scale);
  }

  std::vector<double> weights(modes.size());
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = std::exp(-1e-3 * static_cast<double>(i));
  std::vector<Vec> ws(5, w);
  for (int i = 0; i < 5; ++i) ws[static_cast<std::size_t>(i)] *= 1.0 + i;
  const auto sp = kernels::omp::weighted_cos_sums(modes, weights, ws);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    CHECK(sp[i] == doctest::Approx(kernels::serial::weighted_cos_sum(modes, weights, ws[i])).epsilon(1e-11));
    CHECK(sp[i] == kernels::omp::weighted_cos_sum(modes, weights, ws[i]));
  }
  const auto ms = kernels::omp::mode_sums(modes, ws, DerivIndex::along(0, 1, 1));
  const auto mr = kernels::serial::mode_sums(modes, ws, DerivIndex::along(0, 1, 1));
  for (std::size_t i = 0; i < ws.size(); ++i) CHECK(ms[i] == doctest::Approx(mr[i]).epsilon(1e-10));

  const std::vector<std::size_t> ends{0, 10, 5000, 5000, modes.size()};
  const auto po = kernels::omp::prefix_mode_sums(modes, w, DerivIndex::none(), ends);
  const auto ps = kernels::serial::prefix_mode_sums(modes, w, DerivIndex::none(), ends);
  REQUIRE(po.size() == ends.size());
  CHECK(po[0] == 0.0);
  for (std::size_t j = 0; j < ends.size(); ++j) {
    const double direct = kernels::serial::mode_sum(std::span<const DualPoint>(modes).first(ends[j]), w, DerivIndex::none());
    CHECK(ps[j] == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
    CHECK(po[j] == doctest::Approx(direct).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("omp sums do not depend on the thread count") {
  const auto modes = enumerate_dual(Lattice::square(3, kTwoPi), 30.0);
  Vec w(3);
  w << 0.1, 0.2, 0.3;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = kernels::omp::mode_sum(modes, w, DerivIndex::along(2, 1, 0));
  omp_set_num_threads(4);
  const double four = kernels::omp::mode_sum(modes, w, DerivIndex::along(2, 1, 0));
  omp_set_num_threads(saved);
  CHECK(one == four);
}
