#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gaussweyl/bounds.hpp"
#include "gaussweyl/quadrature.hpp"
#include "gaussweyl/spectral_oracle.hpp"
#include "gaussweyl/weyl_kernel.hpp"

namespace gaussweyl {

/// y -> integral K(y, x) f(x) dx. The Gaussian factor in x is completed to a
/// square around its real centre and integrated by tensor Gauss-Hermite
/// quadrature; the remaining phase stays in the integrand.
///
/// Throws IntegrabilityError unless Re coef_xx > 0, and ConvergenceError
/// when doubling the node count moves the image at y in {-1, 0, 1} by more
/// than 1e-6 (relative).
Field apply_kernel(const GaussianKernelForm& k, Field f, const QuadratureSpec& quad);
Field apply_kernel(const GaussianKernelForm& k, Field f);

/// (integral |f|^p d gamma_tau)^{1/p}. GaussHermite nodes are scaled by
/// sqrt(tau); Trapezoid integrates the density over the window. Values of
/// p in (0, 1) give the usual quasi-norm. Throws ConvergenceError when
/// doubling the nodes changes the result by more than `tol` (relative).
double lp_norm(const Field& f, double p, const GaussianMeasure& m, const QuadratureSpec& quad,
               double tol = 1e-6);

/// f_lambda(x) = exp(lambda |x|^2 / 2).
struct TrialFunction {
  double lam = 0.0;
  double normalization = 1.0;

  /// f_lambda lies in L^p(gamma_alpha) iff lambda < 1/(alpha p).
  static double window_edge(double p, double alpha) { return 1.0 / (alpha * p); }
  bool admissible(double p, double alpha) const { return lam < window_edge(p, alpha); }
  cplx operator()(double x) const { return normalization * std::exp(0.5 * lam * x * x); }
};

/// ||T f_lambda||_{L^q(gamma_beta)} / ||f_lambda||_{L^p(gamma_alpha)} for a
/// one-dimensional Gaussian kernel, in closed form. Returns +inf when the
/// image is not in L^q(gamma_beta) or the kernel integral diverges. Throws
/// DomainError when lambda is outside the membership window.
double trial_ratio(const GaussianKernelForm& k, const ExponentConfig& cfg, double lam);

using TimeOrWeyl = std::variant<ComplexTime, WeylParameter>;

struct RatioReport {
  double p, q, alpha, beta;
  int d;
  cplx s;                            // Weyl time of the probed operator
  std::optional<cplx> z;             // semigroup time when probing exp(-zL)
  std::vector<double> lambda_grid;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double argmax_lambda = 0.0;
  double bound = kInf;               // closed-form Schur bound for the same operator
  bool feasible = false;
  double ratio_at_zero = 0.0;
  double ratio_at_edge = 0.0;        // at window edge minus 1e-3
  bool blowup = false;               // ratio_at_edge > 10 * ratio_at_zero
};

/// 200 points lambda = edge - delta with delta log-spaced in [1e-3, edge + 5].
std::vector<double> default_lambda_grid(double p, double alpha);

/// Gaussian-trial lower bounds for exp(-zL) (Mehler kernel) or
/// exp(-s(P^2+Q^2)) (kernel of a_s), d = 1.
RatioReport ratio_probe(const TimeOrWeyl& op, const ExponentConfig& cfg,
                        std::optional<std::vector<double>> lam_grid = std::nullopt);

/// ||(I+L)^{-1} f||_{L^2(gamma)} / ||f||_{L^p(gamma_{2/p})}. Throws
/// DomainError unless sobolev_feasible(p, d) and f.dim() == d.
double sobolev_probe(double p, int d, const HermiteExpansion& f);
double sobolev_probe(double p, int d, const HermiteExpansion& f, const QuadratureSpec& quad);

/// Trapezoid rule used by sobolev_probe by default.
QuadratureSpec default_sobolev_quadrature(double p, int d);

}  // namespace gaussweyl
