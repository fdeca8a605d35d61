#include "weyl/error.hpp"
#include "weyl/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace weyl;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 16, 40}) {
    const auto rule = quadrature::gauss_legendre(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("nodes are symmetric and weights positive") {
  const auto& r = quadrature::gauss16();
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    CHECK(r.weights[i] > 0.0);
    CHECK(r.nodes[i] == doctest::Approx(-r.nodes[r.nodes.size() - 1 - i]).epsilon(1e-15));
  }
}

TEST_CASE("composite rule on a smooth integrand") {
  const auto ns = quadrature::composite_nodes(0.0, 10.0, 8);
  std::vector<double> f(ns.x.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(3.0 * ns.x[i]) * std::exp(-0.1 * ns.x[i]);
  // closed form of int_0^10 e^{-x/10} sin 3x dx
  const double a = -0.1, b = 3.0;
  const double F10 = std::exp(a * 10) * (a * std::sin(b * 10) - b * std::cos(b * 10)) / (a * a + b * b);
  const double F0 = -b / (a * a + b * b);
  CHECK(quadrature::apply(ns.w, f) == doctest::Approx(F10 - F0).epsilon(1e-13));
}

TEST_CASE("append_composite concatenates") {
  quadrature::NodeSet ns;
  quadrature::append_composite(ns, 0.0, 1.0, 2);
  quadrature::append_composite(ns, 1.0, 3.0, 1);
  CHECK(ns.x.size() == 48);
  double len = 0.0;
  for (double w : ns.w) len += w;
  CHECK(len == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(quadrature::gauss_legendre(0), DomainError);
  CHECK_THROWS_AS(quadrature::composite_nodes(0.0, 1.0, 0), DomainError);
}
