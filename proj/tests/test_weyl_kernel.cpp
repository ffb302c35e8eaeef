#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gaussweyl/errors.hpp"
#include "gaussweyl/quadrature.hpp"
#include "gaussweyl/weyl_kernel.hpp"

using namespace gaussweyl;

namespace {

// Lebesgue trapezoid integral of g over [-w, w].
template <class G>
cplx trapezoid(G g, double w, int n) {
  const TensorRule t = trapezoid_tensor_rule(w, n, 1);
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < t.size(); ++k) acc += t.weights[k] * g(t.nodes[k]);
  return acc;
}

bool close(cplx a, cplx b, double tol) { return relative_difference(a, b) <= tol; }

}  // namespace

TEST_SUITE("weyl_kernel") {

TEST_CASE("Gaussian integral closed form") {
  const double y1[1] = {0.3};
  CHECK(gaussian_integral(1.0, 0.0, y1) == doctest::Approx(std::sqrt(kPi)));
  const double y2[1] = {1.0};
  CHECK(gaussian_integral(0.5, 1.0, y2) == doctest::Approx(std::sqrt(2 * kPi) * std::exp(0.5)));
  CHECK_THROWS_AS(gaussian_integral(0.0, 1.0, y2), DomainError);
  CHECK_THROWS_AS(gaussian_integral(cplx{-0.1, 1.0}, 1.0, 1.0, 1), DomainError);
}

TEST_CASE("Gaussian integral against brute-force quadrature") {
  const double y = 0.7;
  const double yy[1] = {y};
  for (double a : {0.5, 1.0, 2.0}) {
    for (double b : {-1.0, 0.0, 1.0}) {
      const cplx q = trapezoid([&](double x) { return std::exp(-a * x * x + b * x * y); }, 20.0, 10000);
      CHECK(relative_difference(q, gaussian_integral(a, b, yy)) < 1e-10);
    }
  }
  const cplx a{0.8, 0.6}, b{0.3, -0.5};
  const cplx q = trapezoid([&](double x) { return std::exp(-a * x * x + b * x * y); }, 20.0, 10000);
  CHECK(relative_difference(q, gaussian_integral(a, b, y * y, 1)) < 1e-10);
}

TEST_CASE("kernel of the Gaussian symbol at hand points") {
  const GaussianKernelForm k1 = kernel_of_gaussian_symbol(WeylParameter(1.0), 1);
  CHECK(std::abs(k1.coef_yy) < 1e-16);
  CHECK(std::abs(k1.coef_xy) < 1e-16);
  CHECK(close(k1.coef_xx, 0.5, 1e-15));
  CHECK(close(k1.prefactor, 0.5 / std::sqrt(2 * kPi), 1e-15));

  const GaussianKernelForm k = kernel_of_gaussian_symbol(WeylParameter(0.5), 1);
  CHECK(close(k.coef_yy, 1.0 / 16, 1e-15));
  CHECK(close(k.coef_xx, 9.0 / 16, 1e-15));
  CHECK(close(k.coef_xy, 3.0 / 8, 1e-15));
  CHECK(close(k.prefactor, 0.5 / std::sqrt(kPi), 1e-15));
}

TEST_CASE("Mehler kernel at t = ln 3 and t = 50") {
  const GaussianKernelForm m = mehler_kernel(ComplexTime(std::log(3.0)), 1);
  CHECK(close(m.coef_xx, 9.0 / 16, 1e-14));
  CHECK(close(m.coef_yy, 1.0 / 16, 1e-14));
  CHECK(close(m.coef_xy, 3.0 / 8, 1e-14));
  CHECK(close(m.prefactor, std::sqrt(9.0 / 8) / std::sqrt(2 * kPi), 1e-14));
  CHECK(close(m.prefactor, 0.75 / std::sqrt(kPi), 1e-14));

  const GaussianKernelForm inf = mehler_kernel(ComplexTime(50.0), 2);
  CHECK(close(inf.prefactor, 1.0 / (2 * kPi), 1e-15));
  CHECK(close(inf.coef_xx, 0.5, 1e-15));
  CHECK(std::abs(inf.coef_yy) < 1e-40);
  CHECK(std::abs(inf.coef_xy) < 1e-20);
}

TEST_CASE("Mehler rows integrate to one") {
  for (double t : {0.1, 1.0}) {
    const GaussianKernelForm m = mehler_kernel(ComplexTime(t), 1);
    for (double y : {0.0, 1.0, -2.0}) {
      const cplx row = trapezoid([&](double x) { return m(y, x); }, 20.0, 8001);
      CHECK(std::abs(row - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("Weyl kernel identity coefficientwise") {
  CHECK(verify_kernel_identity(ComplexTime(std::log(3.0)), 1).max() < 1e-14);
  for (double t : {0.01, 0.1, 1.0, 5.0}) {
    for (int d = 1; d <= 3; ++d) CHECK(verify_kernel_identity(ComplexTime(t), d).max() < 1e-12);
  }
  CHECK(verify_kernel_identity(ComplexTime(cplx{0.5, 2.0}), 1).max() < 1e-10);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ux(0.05, 4.0), uy(-kPi + 0.1, kPi - 0.1);
  for (int k = 0; k < 500; ++k) {
    REQUIRE(verify_kernel_identity(ComplexTime(cplx{ux(rng), uy(rng)}), 2).max() < 1e-10);
  }
}

TEST_CASE("semigroup law by kernel composition") {
  for (double t1 : {0.1, 0.5, 1.0}) {
    for (double t2 : {0.1, 0.5, 1.0}) {
      const GaussianKernelForm c = compose_kernels(mehler_kernel(ComplexTime(t1), 1),
                                                   mehler_kernel(ComplexTime(t2), 1));
      CHECK(compare_kernels(c, mehler_kernel(ComplexTime(t1 + t2), 1)).max() < 1e-10);
    }
  }
  const GaussianKernelForm c = compose_kernels(mehler_kernel(ComplexTime(cplx{0.3, 1.0}), 2),
                                               mehler_kernel(ComplexTime(cplx{0.4, -0.2}), 2));
  CHECK(compare_kernels(c, mehler_kernel(ComplexTime(cplx{0.7, 0.8}), 2)).max() < 1e-10);
}

TEST_CASE("composition agrees with pointwise quadrature") {
  const GaussianKernelForm a = kernel_of_gaussian_symbol(WeylParameter(cplx{0.4, 0.3}), 1);
  const GaussianKernelForm b = mehler_kernel(ComplexTime(0.6), 1);
  const GaussianKernelForm c = compose_kernels(a, b);
  for (auto [y, x] : {std::pair{0.0, 0.0}, std::pair{0.5, -1.0}, std::pair{1.5, 0.7}}) {
    const cplx q = trapezoid([&](double u) { return a(y, u) * b(u, x); }, 25.0, 10001);
    CHECK(relative_difference(q, c(y, x)) < 1e-10);
  }
}

TEST_CASE("composition rejects a non-integrable middle variable") {
  GaussianKernelForm bad{1.0, 0.5, -1.0, 0.0, 1};
  CHECK_THROWS_AS(compose_kernels(bad, bad), IntegrabilityError);
}

TEST_CASE("symmetry and positivity of the Gaussian-symbol kernel") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ux(0.05, 3.0), uy(-3.0, 3.0), uz(-4.0, 4.0);
  for (int k = 0; k < 200; ++k) {
    const GaussianKernelForm g = kernel_of_gaussian_symbol(WeylParameter(cplx{ux(rng), uy(rng)}), 1);
    REQUIRE(std::abs(g.coef_xx - 0.5 - g.coef_yy) < 1e-14 * (1.0 + std::abs(g.coef_yy)));
    const GaussianKernelForm r = kernel_of_gaussian_symbol(WeylParameter(ux(rng)), 1);
    const double y = uz(rng), x = uz(rng);
    REQUIRE(r(y, x).real() > 0.0);
    REQUIRE(r(y, x).imag() == 0.0);
  }
}

TEST_CASE("general symbol reproduces the closed form") {
  const SymbolKernel k = kernel_of_general_symbol(gaussian_symbol(0.5));
  CHECK_FALSE(k.truncation_warning());
  const GaussianKernelForm exact = kernel_of_gaussian_symbol(WeylParameter(0.5), 1);
  for (auto [y, x] : {std::pair{0.0, 0.0}, std::pair{1.0, -1.0}, std::pair{2.0, 2.0}}) {
    CHECK(relative_difference(k(y, x), exact(y, x)) < 1e-8);
  }
  double worst = 0.0;
  for (int i = 0; i < 17; ++i) {
    for (int j = 0; j < 17; ++j) {
      const double y = grid_coordinate(-4, 4, i, 17), x = grid_coordinate(-4, 4, j, 17);
      worst = std::max(worst, std::abs(k(y, x) - exact(y, x)) / std::abs(exact.prefactor));
    }
  }
  CHECK(worst < 1e-8);

  const SymbolKernel k1 = kernel_of_general_symbol(gaussian_symbol(1.0));
  const GaussianKernelForm rank_one = kernel_of_gaussian_symbol(WeylParameter(1.0), 1);
  CHECK(relative_difference(k1(1.3, -0.4), rank_one(1.3, -0.4)) < 1e-8);
  CHECK(relative_difference(k1(-2.0, 0.4), rank_one(0.0, 0.4)) < 1e-8);  // independent of y
}

TEST_CASE("general symbol with complex time") {
  const cplx s{0.6, 0.8};
  const SymbolKernel k = kernel_of_general_symbol(gaussian_symbol(s));
  const GaussianKernelForm exact = kernel_of_gaussian_symbol(WeylParameter(s), 1);
  CHECK(relative_difference(k(0.5, -0.3), exact(0.5, -0.3)) < 1e-8);
}

TEST_CASE("unit symbol acts as the identity") {
  SymbolFunction one{[](double, double) { return cplx{1.0, 0.0}; }, 1e-3, 1};
  const SymbolKernel narrow(one, QuadratureSpec::trapezoid(8.0, 4097));
  const SymbolKernel wide(one, QuadratureSpec::trapezoid(20.0, 4097));
  CHECK(wide.truncation_warning());
  auto f = [](double x) { return std::exp(-x * x); };
  for (double y : {0.0, 0.8}) {
    const cplx a = trapezoid([&](double x) { return narrow(y, x) * f(x); }, 10.0, 2001);
    const cplx b = trapezoid([&](double x) { return wide(y, x) * f(x); }, 10.0, 2001);
    CHECK(std::abs(b - f(y)) < std::abs(a - f(y)) + 1e-15);
    CHECK(std::abs(b - f(y)) < 1e-6);
  }
}

TEST_CASE("general symbol errors") {
  SymbolFunction two_d = gaussian_symbol(0.5);
  two_d.dim = 2;
  CHECK_THROWS_AS(kernel_of_general_symbol(two_d), DomainError);
  CHECK_THROWS_AS(kernel_of_general_symbol(gaussian_symbol(0.5), QuadratureSpec::gauss_hermite(40)),
                  DomainError);
  const SymbolKernel small(gaussian_symbol(0.5), QuadratureSpec::trapezoid(2.0, 401));
  CHECK(small.truncation_warning());
}

TEST_CASE("Weyl translations") {
  const Field f = [](std::span<const double> y) { return std::exp(-y[0] * y[0]) * cplx{1.0, y[0]}; };
  const Field id = weyl_translate({0.0}, {0.0}, f);
  const double p[1] = {0.37};
  CHECK(id(p) == f(p));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double a = u(rng), b = u(rng), a2 = u(rng), b2 = u(rng);
    const double y[1] = {u(rng)};
    const cplx lhs = weyl_translate({a}, {b}, weyl_translate({a2}, {b2}, f))(y);
    const cplx phase = std::polar(1.0, 0.5 * (a2 * b - a * b2));
    const cplx rhs = phase * weyl_translate({a + a2}, {b + b2}, f)(y);
    REQUIRE(std::abs(lhs - rhs) < 1e-12);
  }

  const Field g = weyl_translate({0.7}, {1.3}, f);
  auto norm2 = [](const Field& h) {
    return trapezoid([&](double x) { const double q[1] = {x}; return cplx{std::norm(h(q)), 0.0}; },
                     30.0, 6001).real();
  };
  CHECK(std::abs(norm2(g) - norm2(f)) < 1e-8);
  CHECK_THROWS_AS(weyl_translate({0.0}, {0.0, 1.0}, f), DomainError);
}

TEST_CASE("Gaussian measures are normalised") {
  for (int d = 1; d <= 3; ++d) {
    for (double tau : {0.5, 1.0, 2.0}) {
      const GaussianMeasure m{tau, d};
      const TensorRule t = trapezoid_tensor_rule(12.0 * std::sqrt(tau), d == 3 ? 61 : 201, d);
      double acc = 0.0;
      for (std::size_t k = 0; k < t.size(); ++k) acc += t.weights[k] * m.density({t.point(k), std::size_t(d)});
      CHECK(std::abs(acc - 1.0) < 1e-10);
    }
  }
  const GaussianMeasure m{2.0, 1};
  const double x[1] = {1.5};
  CHECK(m.log_density(x) == doctest::Approx(std::log(m.density(x))));
}

}  // TEST_SUITE
