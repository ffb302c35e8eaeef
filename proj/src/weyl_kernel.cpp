#include "gaussweyl/weyl_kernel.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "gaussweyl/errors.hpp"

namespace gaussweyl {

namespace {

double norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double a : v) acc += a * a;
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

cplx GaussianKernelForm::operator()(std::span<const double> y, std::span<const double> x) const {
  return prefactor * std::exp(-coef_xx * norm2(x) - coef_yy * norm2(y) + coef_xy * dot(x, y));
}

cplx GaussianKernelForm::operator()(double y, double x) const {
  return prefactor * std::exp(-coef_xx * (x * x) - coef_yy * (y * y) + coef_xy * (x * y));
}

double GaussianKernelForm::log_modulus(double y, double x) const {
  return std::log(std::abs(prefactor)) - coef_xx.real() * x * x - coef_yy.real() * y * y +
         coef_xy.real() * x * y;
}

GaussianKernelForm GaussianKernelForm::scaled(cplx factor) const {
  GaussianKernelForm out = *this;
  out.prefactor *= factor;
  return out;
}

Field field_1d(std::function<cplx(double)> f) {
  return [f = std::move(f)](std::span<const double> x) { return f(x[0]); };
}

double gaussian_integral(double a, double b, std::span<const double> y) {
  if (!(a > 0.0)) throw DomainError("Gaussian integral needs A > 0");
  if (y.empty()) throw DomainError("Gaussian integral needs dimension >= 1");
  const double d = static_cast<double>(y.size());
  return std::pow(kPi / a, 0.5 * d) * std::exp(b * b * norm2(y) / (4.0 * a));
}

cplx gaussian_integral(cplx a, cplx b, double y_norm2, int dim) {
  if (!(a.real() > 0.0)) throw DomainError("Gaussian integral needs Re A > 0");
  if (dim < 1) throw DomainError("Gaussian integral needs dimension >= 1");
  return principal_pow(kPi / a, 0.5 * dim) * std::exp(b * b * y_norm2 / (4.0 * a));
}

GaussianKernelForm kernel_of_gaussian_symbol(const WeylParameter& s, int dim) {
  if (dim < 1) throw DomainError("kernel dimension must be >= 1");
  GaussianKernelForm k;
  k.prefactor = std::pow(2.0, -dim) * principal_pow(2.0 * kPi * s.s(), -0.5 * dim);
  k.coef_xx = s.b() + 0.5;
  k.coef_yy = s.b();
  k.coef_xy = s.c();
  k.dim = dim;
  return k;
}

GaussianKernelForm mehler_kernel(ComplexTime t, int dim) {
  if (dim < 1) throw DomainError("kernel dimension must be >= 1");
  const cplx e1 = std::exp(-t.value());
  const cplx e2 = std::exp(-2.0 * t.value());
  const cplx den = -expm1(-2.0 * t.value());  // 1 - e^{-2t}
  if (den == cplx{0.0, 0.0}) throw DomainError("Mehler kernel is singular where e^{-2t} = 1");
  GaussianKernelForm k;
  k.prefactor = std::pow(2.0 * kPi, -0.5 * dim) * principal_pow(den, -0.5 * dim);
  k.coef_xx = 1.0 / (2.0 * den);
  k.coef_yy = e2 / (2.0 * den);
  k.coef_xy = e1 / den;
  k.dim = dim;
  return k;
}

GaussianKernelForm compose_kernels(const GaussianKernelForm& outer,
                                   const GaussianKernelForm& inner) {
  if (outer.dim != inner.dim) throw DomainError("kernel dimensions differ");
  // Integrate out the middle variable w: exp(-(a1 + b2)|w|^2 + w.(c1 y + c2 x)).
  const cplx a = outer.coef_xx + inner.coef_yy;
  if (!(a.real() > 0.0)) throw IntegrabilityError("composition integral diverges");
  GaussianKernelForm k;
  k.dim = outer.dim;
  k.prefactor = outer.prefactor * inner.prefactor * principal_pow(kPi / a, 0.5 * outer.dim);
  k.coef_xx = inner.coef_xx - inner.coef_xy * inner.coef_xy / (4.0 * a);
  k.coef_yy = outer.coef_yy - outer.coef_xy * outer.coef_xy / (4.0 * a);
  k.coef_xy = outer.coef_xy * inner.coef_xy / (2.0 * a);
  return k;
}

double CoefficientDiff::max() const {
  return std::max({prefactor, coef_xx, coef_yy, coef_xy});
}

CoefficientDiff compare_kernels(const GaussianKernelForm& a, const GaussianKernelForm& b) {
  if (a.dim != b.dim) throw DomainError("kernel dimensions differ");
  return {relative_difference(a.prefactor, b.prefactor),
          relative_difference(a.coef_xx, b.coef_xx),
          relative_difference(a.coef_yy, b.coef_yy),
          relative_difference(a.coef_xy, b.coef_xy)};
}

CoefficientDiff verify_kernel_identity(ComplexTime t, int dim) {
  const WeylParameter s = z_to_s(t);
  const GaussianKernelForm weyl =
      kernel_of_gaussian_symbol(s, dim).scaled(std::pow(1.0 + s.s(), dim));
  return compare_kernels(weyl, mehler_kernel(t, dim));
}

SymbolFunction gaussian_symbol(cplx s) {
  SymbolFunction a;
  a.evaluator = [s](double x, double xi) { return std::exp(-s * (x * x + xi * xi)); };
  a.decay_hint = s.real();
  return a;
}

QuadratureSpec default_symbol_grid(double decay_hint) {
  if (!(decay_hint > 0.0)) throw DomainError("symbol decay hint must be positive");
  const double radius = std::max(8.0, 6.0 / std::sqrt(decay_hint));
  return QuadratureSpec::trapezoid(radius, 1 << 12, 1);
}

SymbolKernel::SymbolKernel(SymbolFunction symbol, QuadratureSpec grid)
    : symbol_(std::move(symbol)), grid_(grid) {
  if (symbol_.dim != 1) {
    throw DomainError("general symbols are supported in dimension 1 only, got " +
                      std::to_string(symbol_.dim));
  }
  if (!(symbol_.decay_hint > 0.0)) throw DomainError("symbol decay hint must be positive");
  if (grid_.kind != QuadratureKind::Trapezoid || grid_.dim != 1) {
    throw DomainError("symbol kernels use a one-dimensional trapezoid grid");
  }
  grid_.validate();
  rule_ = trapezoid_tensor_rule(grid_.window, grid_.nodes, 1);
  truncation_estimate_ = std::exp(-symbol_.decay_hint * grid_.window * grid_.window);
}

cplx SymbolKernel::operator()(double y, double x) const {
  const double mid = (x + y) / (2.0 * std::sqrt(2.0));
  const double freq = (x - y) / std::sqrt(2.0);
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < rule_.size(); ++k) {
    const double xi = rule_.nodes[k];
    acc += rule_.weights[k] * symbol_.evaluator(mid, xi) * std::polar(1.0, -xi * freq);
  }
  const double pre = std::exp(0.25 * (y * y - x * x)) / (2.0 * std::sqrt(2.0) * kPi);
  return pre * acc;
}

SymbolKernel kernel_of_general_symbol(const SymbolFunction& a) {
  if (a.dim != 1) {
    throw DomainError("general symbols are supported in dimension 1 only");
  }
  return SymbolKernel(a, default_symbol_grid(a.decay_hint));
}

SymbolKernel kernel_of_general_symbol(const SymbolFunction& a, const QuadratureSpec& grid) {
  return SymbolKernel(a, grid);
}

Field weyl_translate(std::vector<double> u, std::vector<double> v, Field f) {
  if (u.size() != v.size()) throw DomainError("translation vectors differ in dimension");
  return [u = std::move(u), v = std::move(v), f = std::move(f)](std::span<const double> y) {
    if (y.size() != u.size()) throw DomainError("point dimension mismatch");
    std::vector<double> shifted(y.begin(), y.end());
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += v[i];
    const double phase = dot(u, y) + 0.5 * dot(u, v);
    return std::polar(1.0, phase) * f(shifted);
  };
}

double GaussianMeasure::density(std::span<const double> x) const {
  return std::exp(log_density(x));
}

double GaussianMeasure::log_density(std::span<const double> x) const {
  if (!(tau > 0.0)) throw DomainError("Gaussian variance must be positive");
  return -0.5 * dim * std::log(2.0 * kPi * tau) - norm2(x) / (2.0 * tau);
}

}  // namespace gaussweyl
