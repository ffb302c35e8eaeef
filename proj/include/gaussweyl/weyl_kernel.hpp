#pragma once

// Exact Gaussian kernel algebra for the Weyl calculus of the
// Ornstein-Uhlenbeck position/momentum pair.

#include <functional>
#include <span>
#include <vector>

#include "gaussweyl/numerics.hpp"
#include "gaussweyl/plane_map.hpp"
#include "gaussweyl/quadrature.hpp"

namespace gaussweyl {

/// K(y, x) = prefactor * exp(-coef_xx |x|^2 - coef_yy |y|^2 + coef_xy x.y)
/// on R^dim x R^dim, with x the integration variable.
struct GaussianKernelForm {
  cplx prefactor;
  cplx coef_xx;
  cplx coef_yy;
  cplx coef_xy;
  int dim = 1;

  cplx operator()(std::span<const double> y, std::span<const double> x) const;
  cplx operator()(double y, double x) const;

  /// log|K(y, x)|, finite far into the tails where K itself underflows.
  double log_modulus(double y, double x) const;

  GaussianKernelForm scaled(cplx factor) const;
};

/// A complex-valued function on R^d.
using Field = std::function<cplx(std::span<const double>)>;

/// Lifts a one-dimensional function to a Field.
Field field_1d(std::function<cplx(double)> f);

/// integral over R^d of exp(-A|x|^2 + B x.y) dx = (pi/A)^{d/2} exp(B^2 |y|^2 / (4A)).
/// Throws DomainError unless A > 0.
double gaussian_integral(double a, double b, std::span<const double> y);

/// Complex version (principal branch of (pi/A)^{d/2}); needs Re A > 0.
cplx gaussian_integral(cplx a, cplx b, double y_norm2, int dim);

/// Kernel of exp(-s(P^2 + Q^2)) against Lebesgue measure:
/// prefactor 2^{-d} (2 pi s)^{-d/2}, coef_xx = b_s + 1/2, coef_yy = b_s,
/// coef_xy = c_s.
GaussianKernelForm kernel_of_gaussian_symbol(const WeylParameter& s, int dim);

/// Mehler kernel of exp(-tL), expanded from the completed square. Accepts
/// complex t with Re t > 0.
GaussianKernelForm mehler_kernel(ComplexTime t, int dim);

/// Closed-form kernel of T_outer o T_inner.
GaussianKernelForm compose_kernels(const GaussianKernelForm& outer,
                                   const GaussianKernelForm& inner);

/// Relative componentwise difference of two kernel forms.
struct CoefficientDiff {
  double prefactor = 0.0;
  double coef_xx = 0.0;
  double coef_yy = 0.0;
  double coef_xy = 0.0;

  double max() const;
};

CoefficientDiff compare_kernels(const GaussianKernelForm& a, const GaussianKernelForm& b);

/// (1+s)^d K_{a_s} against the Mehler kernel at the same time, s = z_to_s(t).
CoefficientDiff verify_kernel_identity(ComplexTime t, int dim);

/// Weyl symbol a(x, xi) on R x R.
struct SymbolFunction {
  std::function<cplx(double x, double xi)> evaluator;
  double decay_hint = 1.0;  // Gaussian decay rate in xi, used for truncation
  int dim = 1;
};

/// The symbol exp(-s(x^2 + xi^2)).
SymbolFunction gaussian_symbol(cplx s);

/// Pointwise kernel of a general one-dimensional symbol, with the xi-integral
/// done by the trapezoid rule.
class SymbolKernel {
 public:
  SymbolKernel(SymbolFunction symbol, QuadratureSpec grid);

  cplx operator()(double y, double x) const;

  /// exp(-decay_hint * R^2) at the truncation radius R.
  double truncation_estimate() const { return truncation_estimate_; }
  bool truncation_warning() const { return truncation_estimate_ > 1e-8; }
  const QuadratureSpec& grid() const { return grid_; }

 private:
  SymbolFunction symbol_;
  QuadratureSpec grid_;
  TensorRule rule_;
  double truncation_estimate_;
};

/// Default xi-grid: radius max(8, 6/sqrt(decay_hint)) with 2^12 nodes.
QuadratureSpec default_symbol_grid(double decay_hint);

/// Throws DomainError when the symbol is not one-dimensional.
SymbolKernel kernel_of_general_symbol(const SymbolFunction& a);
SymbolKernel kernel_of_general_symbol(const SymbolFunction& a, const QuadratureSpec& grid);

/// exp(i(uX + vD)) f(y) = exp(i u.y + i u.v / 2) f(y + v).
Field weyl_translate(std::vector<double> u, std::vector<double> v, Field f);

/// Centred Gaussian measure gamma_tau on R^dim.
struct GaussianMeasure {
  double tau = 1.0;
  int dim = 1;

  double density(std::span<const double> x) const;
  double log_density(std::span<const double> x) const;
};

}  // namespace gaussweyl
