#include <doctest.h>

#include <cmath>
#include <algorithm>

#include "gaussweyl/errors.hpp"
#include "gaussweyl/quadrature.hpp"

using namespace gaussweyl;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Hermite moments") {
  for (int n : {20, 64, 200, 400}) {
    const GaussHermiteRule& r = gauss_hermite_rule(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    double m0 = 0, m1 = 0, m2 = 0, m4 = 0, m10 = 0;
    for (int i = 0; i < n; ++i) {
      const double x = r.nodes[i], w = r.weights[i];
      m0 += w;
      m1 += w * x;
      m2 += w * x * x;
      m4 += w * std::pow(x, 4);
      m10 += w * std::pow(x, 10);
    }
    CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(m1) < 1e-13);
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m4 == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(m10 == doctest::Approx(945.0).epsilon(1e-11));
  }
}

TEST_CASE("Gauss-Hermite nodes are sorted and symmetric") {
  const GaussHermiteRule& r = gauss_hermite_rule(101);
  CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
  for (int i = 0; i < 101; ++i) {
    CHECK(r.nodes[i] == doctest::Approx(-r.nodes[100 - i]).epsilon(1e-13));
    CHECK(r.weights[i] > 0.0);
  }
  CHECK(std::abs(r.nodes[50]) < 1e-14);
}

TEST_CASE("Gaussian of variance tau") {
  const TensorRule t = gaussian_tensor_rule(40, 2, 0.5);
  double s2 = 0.0, w = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double* p = t.point(k);
    s2 += t.weights[k] * (p[0] * p[0] + p[1] * p[1]);
    w += t.weights[k];
  }
  CHECK(w == doctest::Approx(1.0));
  CHECK(s2 == doctest::Approx(1.0));  // 2 axes of variance 1/2
}

TEST_CASE("trapezoid rule integrates a Gaussian spectrally") {
  const TensorRule t = trapezoid_tensor_rule(10.0, 201, 1);
  double acc = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) acc += t.weights[k] * std::exp(-t.nodes[k] * t.nodes[k]);
  CHECK(acc == doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-14));
  CHECK(trapezoid_tensor_rule(1.0, 5, 3).size() == 125);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(QuadratureSpec::gauss_hermite(19), DomainError);
  CHECK_THROWS_AS(QuadratureSpec::gauss_hermite(401), DomainError);
  CHECK_THROWS_AS(QuadratureSpec::gauss_hermite(50, 4), DomainError);
  CHECK_THROWS_AS(QuadratureSpec::trapezoid(0.0, 10), DomainError);
  CHECK_THROWS_AS(QuadratureSpec::trapezoid(1.0, 1), DomainError);
  CHECK_NOTHROW(QuadratureSpec::gauss_hermite(400, 3));
  CHECK_THROWS(gauss_hermite_rule(0));
  CHECK_THROWS(gauss_hermite_rule(1001));
}

}  // TEST_SUITE
