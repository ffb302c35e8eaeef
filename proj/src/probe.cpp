#include "gaussweyl/probe.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "gaussweyl/errors.hpp"

namespace gaussweyl {

namespace {

struct KernelQuadrature {
  GaussianKernelForm k;
  Field f;
  TensorRule rule;
  double kappa;

  cplx operator()(std::span<const double> y) const { return eval(y, nullptr); }

  // `mass` receives the same sum taken over absolute values, used as a convergence scale.
  cplx eval(std::span<const double> y, double* mass) const {
    const int d = k.dim;
    if (static_cast<int>(y.size()) != d) throw DomainError("point dimension mismatch");
    const double axy_re = k.coef_xy.real();
    const double axy_im = k.coef_xy.imag();
    const double axx_im = k.coef_xx.imag();
    double y2 = 0.0;
    double centre[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < d; ++i) {
      y2 += y[i] * y[i];
      centre[i] = axy_re * y[i] / (2.0 * kappa);
    }
    // -a_yy |y|^2 + kappa |c|^2, combined before exponentiating.
    const cplx outer = (-k.coef_yy + axy_re * axy_re / (4.0 * kappa)) * y2;
    const double spread = 1.0 / std::sqrt(2.0 * kappa);
    cplx acc{0.0, 0.0};
    double abs_acc = 0.0;
    double x[3];
    for (std::size_t n = 0; n < rule.size(); ++n) {
      const double* u = rule.point(n);
      double x2 = 0.0, xy = 0.0;
      for (int i = 0; i < d; ++i) {
        x[i] = centre[i] + spread * u[i];
        x2 += x[i] * x[i];
        xy += x[i] * y[i];
      }
      const double phase = -axx_im * x2 + axy_im * xy;
      const cplx fx = f(std::span<const double>(x, d));
      acc += rule.weights[n] * std::polar(1.0, phase) * fx;
      abs_acc += rule.weights[n] * std::abs(fx);
    }
    const cplx scale = k.prefactor * std::exp(outer) * std::pow(kPi / kappa, 0.5 * d);
    if (mass) *mass = std::abs(scale) * abs_acc;
    return scale * acc;
  }
};

QuadratureSpec default_kernel_quadrature(int dim) {
  return QuadratureSpec::gauss_hermite(dim == 1 ? 200 : 40, dim);
}

}  // namespace

Field apply_kernel(const GaussianKernelForm& k, Field f, const QuadratureSpec& quad) {
  if (k.dim < 1 || k.dim > 3) throw DomainError("kernel application supports dim 1..3");
  if (!(k.coef_xx.real() > 0.0)) {
    throw IntegrabilityError("kernel is not integrable in x: Re coef_xx <= 0");
  }
  quad.validate();
  if (quad.kind != QuadratureKind::GaussHermite || quad.dim != k.dim) {
    throw DomainError("kernel application needs Gauss-Hermite quadrature of the kernel dimension");
  }
  auto coarse = std::make_shared<KernelQuadrature>(
      KernelQuadrature{k, f, gaussian_tensor_rule(quad.nodes, k.dim), k.coef_xx.real()});
  const KernelQuadrature fine{k, f, gaussian_tensor_rule(2 * quad.nodes, k.dim), k.coef_xx.real()};
  for (double t : {-1.0, 0.0, 1.0}) {
    double y[3] = {t, 0.0, 0.0};
    const std::span<const double> pt(y, k.dim);
    double mass = 0.0;
    const cplx a = coarse->eval(pt, &mass);
    const cplx b = fine.eval(pt, nullptr);
    const double diff = std::abs(a - b) / std::max({std::abs(a), std::abs(b), mass, 1e-300});
    if (!(diff <= 1e-6)) {
      throw ConvergenceError("kernel quadrature did not settle under node doubling (relative change " +
                             std::to_string(diff) + ")");
    }
  }
  return [coarse](std::span<const double> y) { return (*coarse)(y); };
}

Field apply_kernel(const GaussianKernelForm& k, Field f) {
  return apply_kernel(k, std::move(f), default_kernel_quadrature(k.dim));
}

namespace {

double lp_sum(const Field& f, double p, const GaussianMeasure& m, const TensorRule& rule,
              bool lebesgue) {
  double acc = 0.0;
  for (std::size_t n = 0; n < rule.size(); ++n) {
    const std::span<const double> x(rule.point(n), m.dim);
    double w = rule.weights[n];
    if (lebesgue) w *= m.density(x);
    if (w == 0.0) continue;
    acc += w * std::pow(std::abs(f(x)), p);
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace

double lp_norm(const Field& f, double p, const GaussianMeasure& m, const QuadratureSpec& quad,
               double tol) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("L^p exponent must be positive and finite");
  if (!(m.tau > 0.0)) throw DomainError("Gaussian variance must be positive");
  quad.validate();
  if (quad.dim != m.dim) throw DomainError("quadrature and measure dimensions differ");
  double coarse, fine;
  if (quad.kind == QuadratureKind::GaussHermite) {
    coarse = lp_sum(f, p, m, gaussian_tensor_rule(quad.nodes, m.dim, m.tau), false);
    fine = lp_sum(f, p, m, gaussian_tensor_rule(2 * quad.nodes, m.dim, m.tau), false);
  } else {
    coarse = lp_sum(f, p, m, trapezoid_tensor_rule(quad.window, quad.nodes, m.dim), true);
    fine = lp_sum(f, p, m, trapezoid_tensor_rule(quad.window, 2 * quad.nodes - 1, m.dim), true);
  }
  if (!std::isfinite(coarse) || !std::isfinite(fine)) {
    throw ConvergenceError("L^p norm is not finite on the quadrature grid");
  }
  const double diff = relative_difference(coarse, fine, 1e-300);
  if (!(diff <= tol)) {
    throw ConvergenceError("L^p norm did not settle under node doubling (relative change " +
                           std::to_string(diff) + ")");
  }
  return fine;
}

double trial_ratio(const GaussianKernelForm& k, const ExponentConfig& cfg, double lam) {
  if (k.dim != 1 || cfg.d() != 1) throw DomainError("trial ratios are one-dimensional");
  const double p = cfg.p(), q = cfg.q();
  if (!(lam < TrialFunction::window_edge(p, cfg.alpha()))) {
    throw DomainError("trial exponent " + std::to_string(lam) +
                      " is outside the L^p(gamma_alpha) membership window");
  }
  const cplx a = k.coef_xx - 0.5 * lam;
  if (!(a.real() > 0.0)) return kInf;
  const cplx image_prefactor = k.prefactor * principal_pow(kPi / a, 0.5);
  const cplx mu = k.coef_yy - k.coef_xy * k.coef_xy / (4.0 * a);
  const double decay = 1.0 + 2.0 * cfg.beta() * q * mu.real();
  if (!(decay > 0.0)) return kInf;
  const double out_norm = std::abs(image_prefactor) * std::pow(decay, -0.5 / q);
  const double in_norm = std::pow(1.0 - p * lam * cfg.alpha(), -0.5 / p);
  return out_norm / in_norm;
}

std::vector<double> default_lambda_grid(double p, double alpha) {
  const double edge = TrialFunction::window_edge(p, alpha);
  const int n = 200;
  const double lo = std::log(1e-3);
  const double hi = std::log(edge + 5.0);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    // i = 0 is the point furthest from the edge, so the grid ascends.
    const double delta = std::exp(grid_coordinate(hi, lo, i, n));
    grid[i] = edge - delta;
  }
  return grid;
}

RatioReport ratio_probe(const TimeOrWeyl& op, const ExponentConfig& cfg,
                        std::optional<std::vector<double>> lam_grid) {
  if (cfg.d() != 1) throw DomainError("ratio probes are one-dimensional");
  RatioReport rep{cfg.p(), cfg.q(), cfg.alpha(), cfg.beta(), cfg.d(), {}, std::nullopt,
                  {}, {}, 0.0, 0.0, kInf, false, 0.0, 0.0, false};
  GaussianKernelForm k;
  if (const auto* z = std::get_if<ComplexTime>(&op)) {
    const ExpBoundReport b = exp_zL_bound(*z, cfg);
    k = mehler_kernel(*z, 1);
    rep.s = b.s;
    rep.z = z->value();
    rep.feasible = b.feasible;
    rep.bound = b.via_weyl;
  } else {
    const WeylParameter& s = std::get<WeylParameter>(op);
    const SchurReport b = closed_form_bound(s, cfg);
    k = kernel_of_gaussian_symbol(s, 1);
    rep.s = s.s();
    rep.feasible = b.feasible;
    rep.bound = b.bound;
  }
  rep.lambda_grid = lam_grid ? std::move(*lam_grid) : default_lambda_grid(cfg.p(), cfg.alpha());
  if (rep.lambda_grid.empty()) throw DomainError("lambda grid is empty");
  rep.ratios.reserve(rep.lambda_grid.size());
  for (double lam : rep.lambda_grid) rep.ratios.push_back(trial_ratio(k, cfg, lam));
  rep.max_ratio = rep.ratios[0];
  rep.argmax_lambda = rep.lambda_grid[0];
  for (std::size_t i = 1; i < rep.ratios.size(); ++i) {
    if (rep.ratios[i] > rep.max_ratio) {
      rep.max_ratio = rep.ratios[i];
      rep.argmax_lambda = rep.lambda_grid[i];
    }
  }
  rep.ratio_at_zero = trial_ratio(k, cfg, 0.0);
  if (rep.ratio_at_zero > rep.max_ratio) {
    rep.max_ratio = rep.ratio_at_zero;
    rep.argmax_lambda = 0.0;
  }
  rep.ratio_at_edge = trial_ratio(k, cfg, TrialFunction::window_edge(cfg.p(), cfg.alpha()) - 1e-3);
  rep.blowup = rep.ratio_at_edge > 10.0 * rep.ratio_at_zero;
  return rep;
}

QuadratureSpec default_sobolev_quadrature(double p, int d) {
  const double window = 12.0 * std::sqrt(2.0 / p);
  const int nodes = d == 1 ? 20001 : (d == 2 ? 401 : 81);
  return QuadratureSpec::trapezoid(window, nodes, d);
}

double sobolev_probe(double p, int d, const HermiteExpansion& f, const QuadratureSpec& quad) {
  if (!sobolev_feasible(p, d).feasible) {
    throw DomainError("Sobolev embedding needs 2d/(d+2) < p <= 2");
  }
  if (f.dim() != d) throw DomainError("expansion dimension differs from d");
  const double numerator = std::sqrt(apply_resolvent(f).energy());
  const double denominator = lp_norm(f.as_field(), p, GaussianMeasure{2.0 / p, d}, quad, 1e-5);
  if (!(denominator > 0.0)) throw DomainError("Sobolev probe needs a non-zero function");
  return numerator / denominator;
}

double sobolev_probe(double p, int d, const HermiteExpansion& f) {
  return sobolev_probe(p, d, f, default_sobolev_quadrature(p, d));
}

}  // namespace gaussweyl
