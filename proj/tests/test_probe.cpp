#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gaussweyl/errors.hpp"
#include "gaussweyl/probe.hpp"

using namespace gaussweyl;

namespace {

constexpr double kMixedSobolevRatio = 0.683716142219;
constexpr double kSobolevFamilyBound = 1.0 + 1e-9;  // attained by h_0

cplx at(const Field& f, double x) {
  const double p[1] = {x};
  return f(std::span<const double>(p, 1));
}

Field hermite_field(int n) {
  return field_1d([n](double x) { return cplx{hermite_basis(n, x), 0.0}; });
}

std::vector<Field> test_set() {
  return {hermite_field(0),
          hermite_field(1),
          hermite_field(3),
          hermite_field(5),
          field_1d([](double x) { return cplx{x * x + x - 1.0, 0.5 * x}; }),
          field_1d([](double x) { return cplx{std::cos(x), 0.0}; }),
          field_1d([](double x) { return cplx{0.0, std::sin(2.0 * x)}; }),
          field_1d([](double x) { return cplx{std::exp(0.1 * x * x), 0.0}; }),
          field_1d([](double x) { return cplx{std::exp(-0.25 * x * x), 0.0}; }),
          field_1d([](double x) { return cplx{x * std::exp(-0.25 * x * x), 0.0}; })};
}

double l2_distance(const Field& a, const Field& b) {
  const Field diff = [&](std::span<const double> x) { return a(x) - b(x); };
  return lp_norm(diff, 2.0, GaussianMeasure{1.0, 1}, QuadratureSpec::gauss_hermite(100), kInf);
}

}  // namespace

TEST_SUITE("probe") {

TEST_CASE("Mehler kernel applied to Hermite functions") {
  const GaussianKernelForm m = mehler_kernel(ComplexTime(0.5), 1);
  for (int n = 0; n <= 10; ++n) {
    const Field img = apply_kernel(m, hermite_field(n));
    for (double y : {-2.0, -0.3, 0.0, 1.1, 2.5}) {
      REQUIRE(std::abs(at(img, y) - std::exp(-0.5 * n) * hermite_basis(n, y)) < 1e-8);
    }
  }
}

TEST_CASE("rank-one kernel at s = 1") {
  const GaussianKernelForm k = kernel_of_gaussian_symbol(WeylParameter(1.0), 1);
  // image is (1/2) E_gamma[f]; E[1 + x + x^2] = 2
  const Field img = apply_kernel(k, field_1d([](double x) { return cplx{1.0 + x + x * x, 0.0}; }));
  for (double y : {-3.0, 0.0, 4.0}) CHECK(std::abs(at(img, y) - 1.0) < 1e-12);
  const Field zero = apply_kernel(k, field_1d([](double) { return cplx{0.0, 0.0}; }));
  CHECK(at(zero, 0.7) == cplx{0.0, 0.0});
}

TEST_CASE("apply_kernel in two dimensions") {
  const GaussianKernelForm m = mehler_kernel(ComplexTime(cplx{0.4, 0.3}), 2);
  const Field f = [](std::span<const double> x) { return cplx{x[0] * x[1], 0.0}; };  // h_(1,1)
  const Field img = apply_kernel(m, f);
  const double y[2] = {0.6, -1.2};
  CHECK(std::abs(img(y) - std::exp(-2.0 * cplx{0.4, 0.3}) * y[0] * y[1]) < 1e-10);
}

TEST_CASE("apply_kernel errors") {
  GaussianKernelForm bad{1.0, cplx{-0.1, 0.0}, 0.0, 0.0, 1};
  CHECK_THROWS_AS(apply_kernel(bad, hermite_field(0)), IntegrabilityError);
  const GaussianKernelForm m = mehler_kernel(ComplexTime(0.5), 1);
  CHECK_THROWS_AS(apply_kernel(m, hermite_field(0), QuadratureSpec::trapezoid(5.0, 101)), DomainError);
  // a wildly oscillating input does not settle with 20 nodes
  const Field wild = field_1d([](double x) { return cplx{std::cos(40.0 * x), 0.0}; });
  CHECK_THROWS_AS(apply_kernel(m, wild, QuadratureSpec::gauss_hermite(20)), ConvergenceError);
}

TEST_CASE("three-way agreement of the semigroup") {
  for (double t : {0.1, 1.0}) {
    const ComplexTime z(t);
    const WeylParameter s = z_to_s(z);
    const GaussianKernelForm mehler = mehler_kernel(z, 1);
    const GaussianKernelForm weyl = kernel_of_gaussian_symbol(s, 1).scaled(1.0 + s.s());
    for (const Field& f : test_set()) {
      const Field a = apply_kernel(mehler, f);
      const Field b = apply_kernel(weyl, f);
      const HermiteExpansion e =
          apply_semigroup_spectral(t, expand(f, 60, default_expansion_quadrature(1)).expansion);
      const Field c = e.as_field();
      const double scale = lp_norm(a, 2.0, GaussianMeasure{1.0, 1}, QuadratureSpec::gauss_hermite(100), kInf);
      REQUIRE(l2_distance(a, b) < 1e-8 * scale);
      REQUIRE(l2_distance(a, c) < 1e-8 * scale);
    }
  }
}

TEST_CASE("L^p norms against closed forms") {
  const GaussianMeasure g{1.0, 1};
  const QuadratureSpec gh = QuadratureSpec::gauss_hermite(100);
  CHECK(lp_norm(field_1d([](double) { return cplx{0.0, -3.0}; }), 1.7, g, gh) == doctest::Approx(3.0));
  CHECK(lp_norm(hermite_field(1), 2.0, g, gh) == doctest::Approx(1.0).epsilon(1e-12));
  const TrialFunction f{0.3, 1.0};
  const Field ff = field_1d([f](double x) { return f(x); });
  const double exact = std::pow(1.0 - 2.0 * 0.3, -0.25);
  CHECK(lp_norm(ff, 2.0, g, QuadratureSpec::gauss_hermite(200)) == doctest::Approx(exact).epsilon(1e-8));
  CHECK(lp_norm(ff, 2.0, g, QuadratureSpec::trapezoid(30.0, 3001)) == doctest::Approx(exact).epsilon(1e-10));
  // variance tau and a quasi-norm exponent: (1 - p lam tau)^{-1/(2p)}
  const GaussianMeasure g2{1.5, 1};
  for (double p : {0.5, 1.0, 2.0}) {
    const double e = std::pow(1.0 - p * 0.3 * 1.5, -0.5 / p);
    CHECK(lp_norm(ff, p, g2, QuadratureSpec::trapezoid(40.0, 4001)) == doctest::Approx(e).epsilon(1e-10));
  }
  // p lam tau > 1: the norm is infinite
  CHECK_THROWS_AS(lp_norm(ff, 3.0, g2, QuadratureSpec::trapezoid(40.0, 4001)), ConvergenceError);
  CHECK_THROWS_AS(lp_norm(ff, 0.0, g, gh), DomainError);
  CHECK_THROWS_AS(lp_norm(ff, 2.0, GaussianMeasure{1.0, 2}, gh), DomainError);
}

TEST_CASE("L^2 norm equals the Parseval norm for polynomials") {
  HermiteExpansion e(1, 7);
  for (int n = 0; n <= 7; ++n) e.coeff({n, 0, 0}) = cplx{std::cos(1.0 + n), std::sin(2.0 * n)};
  const double quad = lp_norm(e.as_field(), 2.0, GaussianMeasure{1.0, 1}, QuadratureSpec::gauss_hermite(40));
  CHECK(std::abs(quad - std::sqrt(e.energy())) < 1e-10);
}

TEST_CASE("non-settling L^p norm") {
  const Field rough = field_1d([](double x) { return cplx{std::abs(std::sin(30.0 * x)), 0.0}; });
  CHECK_THROWS_AS(lp_norm(rough, 1.0, GaussianMeasure{1.0, 1}, QuadratureSpec::gauss_hermite(20)),
                  ConvergenceError);
}

TEST_CASE("trial ratio against quadrature") {
  const ExponentConfig cfg(2.0, 4.0, 1.0, 1.0, 1);
  const GaussianKernelForm m = mehler_kernel(ComplexTime(0.8), 1);
  for (double lam : {-1.0, 0.0, 0.2, 0.4}) {
    const TrialFunction f{lam, 1.0};
    const Field ff = field_1d([f](double x) { return f(x); });
    const Field img = apply_kernel(m, ff);
    const double num = lp_norm(img, 4.0, GaussianMeasure{1.0, 1}, QuadratureSpec::trapezoid(40.0, 8001));
    const double den = lp_norm(ff, 2.0, GaussianMeasure{1.0, 1}, QuadratureSpec::trapezoid(40.0, 8001));
    CHECK(trial_ratio(m, cfg, lam) == doctest::Approx(num / den).epsilon(1e-7));
  }
  CHECK_THROWS_AS(trial_ratio(m, cfg, 0.5), DomainError);
  CHECK(trial_ratio(kernel_of_gaussian_symbol(WeylParameter(1.0), 1), ExponentConfig(2, 2, 1, 1, 1), 0.0) ==
        doctest::Approx(0.5));
}

TEST_CASE("trial ratio is infinite when the image leaves L^q") {
  // Short time, large q: the image of a near-edge trial is not q-integrable.
  const ExponentConfig cfg(2.0, 8.0, 1.0, 1.0, 1);
  const GaussianKernelForm m = mehler_kernel(ComplexTime(0.05), 1);
  CHECK(trial_ratio(m, cfg, 0.49) == kInf);
}

TEST_CASE("probe at s = 1/2 in L^2") {
  const RatioReport rep = ratio_probe(WeylParameter(0.5), ExponentConfig(2, 2, 1, 1, 1));
  REQUIRE(rep.feasible);
  CHECK(rep.lambda_grid.size() == 200);
  CHECK(std::is_sorted(rep.lambda_grid.begin(), rep.lambda_grid.end()));
  CHECK(rep.lambda_grid.back() == doctest::Approx(0.5 - 1e-3));
  CHECK(rep.ratio_at_zero == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(rep.ratio_at_zero <= rep.max_ratio);
  CHECK(rep.max_ratio <= rep.bound);
  CHECK(rep.max_ratio <= 2.0 / 3.0 + 1e-12);  // the spectral norm
  CHECK_FALSE(rep.z.has_value());
  CHECK_FALSE(rep.blowup);
}

TEST_CASE("Nelson threshold seen by Gaussian trials") {
  const ExponentConfig cfg(2.0, 4.0, 1.0, 1.0, 1);
  const double tstar = nelson_threshold(2.0, 4.0);

  const RatioReport below = ratio_probe(ComplexTime(0.9 * tstar), cfg);
  CHECK_FALSE(below.feasible);
  CHECK(below.blowup);
  CHECK(below.ratio_at_edge > 10.0 * below.ratio_at_zero);
  // nondecreasing near the window edge
  for (std::size_t i = 180; i + 1 < below.ratios.size(); ++i) CHECK(below.ratios[i + 1] >= below.ratios[i]);

  const RatioReport above = ratio_probe(ComplexTime(1.1 * tstar), cfg);
  REQUIRE(above.feasible);
  CHECK(above.max_ratio <= above.bound);
  CHECK_FALSE(above.blowup);
  REQUIRE(above.z.has_value());
  CHECK(above.z->real() == doctest::Approx(1.1 * tstar));
}

TEST_CASE("trial ratios stay below the bound on feasible configurations") {
  for (double t : {0.05, 0.3, 1.0, 3.0}) {
    for (auto [p, q] : {std::pair{1.0, 1.0}, std::pair{1.5, 2.0}, std::pair{2.0, 2.0}, std::pair{2.0, 3.0}}) {
      for (double a : {0.7, 1.0, 1.4}) {
        const ExponentConfig cfg(p, q, a, 1.0 / a, 1);
        const RatioReport rep = ratio_probe(ComplexTime(t), cfg);
        if (!rep.feasible) continue;
        REQUIRE(rep.max_ratio <= rep.bound * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("custom lambda grid") {
  const ExponentConfig cfg(2, 2, 1, 1, 1);
  const RatioReport rep = ratio_probe(WeylParameter(0.5), cfg, std::vector<double>{0.0, 0.1});
  CHECK(rep.ratios.size() == 2);
  CHECK_THROWS_AS(ratio_probe(WeylParameter(0.5), cfg, std::vector<double>{0.6}), DomainError);
  CHECK_THROWS_AS(ratio_probe(WeylParameter(0.5), cfg, std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(ratio_probe(WeylParameter(0.5), ExponentConfig(2, 2, 1, 1, 2)), DomainError);
}

TEST_CASE("Sobolev probe fixtures") {
  CHECK(sobolev_probe(1.5, 1, HermiteExpansion::basis(1, 4, {0, 0, 0})) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sobolev_probe(1.2, 2, HermiteExpansion::basis(2, 2, {0, 0, 0})) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sobolev_probe(2.0, 1, HermiteExpansion::basis(1, 6, {4, 0, 0})) == doctest::Approx(0.2).epsilon(1e-8));

  const double c = 1.0 / std::sqrt(3.0);
  const HermiteExpansion mixed(1, 2, {c, c, c});
  const double value = sobolev_probe(1.5, 1, mixed);
  // numerator through the Laplace representation of the resolvent
  HermiteExpansion lap(1, 2);
  const double h = 0.05;
  for (double u = -40.0; u <= 4.0 + 1e-12; u += h) {
    const double t = std::exp(u);
    const HermiteExpansion term = apply_semigroup_spectral(t, mixed);
    for (std::size_t k = 0; k < 3; ++k) lap.coeffs()[k] += h * t * std::exp(-t) * term.coeffs()[k];
  }
  const double den = lp_norm(mixed.as_field(), 1.5, GaussianMeasure{4.0 / 3.0, 1},
                             default_sobolev_quadrature(1.5, 1), 1e-5);
  CHECK(value == doctest::Approx(std::sqrt(lap.energy()) / den).epsilon(1e-6));
  CHECK(value == doctest::Approx(kMixedSobolevRatio).epsilon(1e-6));
}

TEST_CASE("Sobolev probe stays bounded over Hermite functions") {
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    worst = std::max(worst, sobolev_probe(1.5, 1, HermiteExpansion::basis(1, n, {n, 0, 0})));
  }
  CHECK(worst <= kSobolevFamilyBound);
}

TEST_CASE("Sobolev probe errors") {
  const HermiteExpansion one = HermiteExpansion::basis(1, 0, {0, 0, 0});
  CHECK_THROWS_AS(sobolev_probe(0.6, 1, one), DomainError);
  CHECK_THROWS_AS(sobolev_probe(2.5, 1, one), DomainError);
  CHECK_THROWS_AS(sobolev_probe(1.5, 2, one), DomainError);
  CHECK_THROWS_AS(sobolev_probe(1.5, 1, HermiteExpansion(1, 3)), DomainError);
}

}  // TEST_SUITE
