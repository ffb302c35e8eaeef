#pragma once

#include <functional>
#include <optional>

#include "gaussweyl/plane_map.hpp"
#include "gaussweyl/quadrature.hpp"
#include "gaussweyl/weyl_kernel.hpp"

namespace gaussweyl {

enum class Provenance { ClosedForm, Numeric };

/// Discretisation used by numeric_schur, kept in the report.
struct SchurGrid {
  double sup_window = 8.0;  // sup taken over [-sup_window, sup_window]
  int sup_points = 400;
  double int_window = 0.0;  // trapezoid integration window
  int int_nodes = 0;
};

/// Schur-test constants and the interpolated bound C1^{1-r/q} C2^{r/q}.
/// Infeasible or divergent configurations carry bound = +inf.
struct SchurReport {
  bool feasible = false;
  double C1 = kInf;
  double C2 = kInf;
  double bound = kInf;
  double r = 1.0;
  double interpolation_theta = 0.0;  // r / q
  Provenance provenance = Provenance::ClosedForm;
  std::optional<SchurGrid> grid;
};

/// Restricted L^p(gamma_alpha) -> L^q(gamma_beta) bound for exp(-s(P^2+Q^2))
/// with |s| in place of s in the power s^{d/2}.
SchurReport closed_form_bound(const WeylParameter& s, const ExponentConfig& cfg);

struct ExpBoundReport {
  bool feasible = false;
  cplx s;
  SchurReport schur;      // closed form at s
  double direct = kInf;   // evaluated in z
  double via_weyl = kInf; // |1+s|^d * schur.bound
  double relative_gap = 0.0;
};

/// Bound for exp(-zL) computed directly in z and through s = z_to_s(z).
ExpBoundReport exp_zL_bound(ComplexTime z, const ExponentConfig& cfg);

/// (1 + e^{-2t}) / p, the input variance of the hyperboundedness estimate.
double alpha_hyperbounded(double p, double t);

using LogKernel = std::function<double(double y, double x)>;  // log|K(y,x)|
using LogWeight = std::function<double(double)>;

LogKernel log_kernel(const GaussianKernelForm& k);
/// log|K| of a pointwise kernel; zeros map to -inf.
LogKernel log_kernel(std::function<cplx(double y, double x)> k);
LogWeight log_weight(const GaussianMeasure& m);
LogWeight log_weight(std::function<double(double)> density);

/// Schur constants of a one-dimensional kernel against weights phi (input)
/// and psi (output), by trapezoid integration over `quad` and a sup over
/// `sup` grid points. Divergence (integrand not decayed at the window edge,
/// or a column value still growing over the last tenth of the sup grid on
/// either side) gives an infinite constant and feasible = false.
SchurReport numeric_schur(const LogKernel& kernel, const LogWeight& log_phi,
                          const LogWeight& log_psi, const ExponentConfig& cfg,
                          const QuadratureSpec& quad, SchurGrid sup = {});

namespace serial {
SchurReport numeric_schur(const LogKernel& kernel, const LogWeight& log_phi,
                          const LogWeight& log_psi, const ExponentConfig& cfg,
                          const QuadratureSpec& quad, SchurGrid sup = {});
}  // namespace serial

/// t* = log((q-1)/(p-1)) / 2. Throws DomainError unless 1 < p <= q.
double nelson_threshold(double p, double q);

/// The same threshold located by bisection of theorem_main_feasible at
/// alpha = beta = 1 over real t.
double nelson_threshold_bisection(double p, double q, double tol = 1e-12);

struct SobolevCheck {
  bool feasible;
  double exponent;  // (d/2)(1/p - 1/2)
};

/// feasible iff 2d/(d+2) < p <= 2.
SobolevCheck sobolev_feasible(double p, int d);

}  // namespace gaussweyl
