#include "gaussweyl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gaussweyl/errors.hpp"
#include "exception_slot.hpp"

namespace gaussweyl {

namespace {

// log C for C = (2a)^{d/2p} (2b)^{-d/2q} 2^{-3d/2} r^{-d/2r} |s|^{-d/2} (4/A)^{d/2r}.
double log_schur_constant(const WeylParameter& s, const ExponentConfig& cfg, double a) {
  const double d = cfg.d();
  const double p = cfg.p(), q = cfg.q(), r = cfg.r();
  return d / (2.0 * p) * std::log(2.0 * cfg.alpha()) - d / (2.0 * q) * std::log(2.0 * cfg.beta()) -
         1.5 * d * std::log(2.0) - d / (2.0 * r) * std::log(r) - 0.5 * d * std::log(std::abs(s.s())) +
         d / (2.0 * r) * std::log(4.0 / a);
}

double interpolate(double c1, double c2, double theta) {
  return std::pow(c1, 1.0 - theta) * std::pow(c2, theta);
}

}  // namespace

SchurReport closed_form_bound(const WeylParameter& s, const ExponentConfig& cfg) {
  SchurReport rep;
  rep.r = cfg.r();
  rep.interpolation_theta = cfg.r() / cfg.q();
  rep.provenance = Provenance::ClosedForm;
  if (!theorem_main_feasible(s, cfg)) return rep;
  const double a1 = 1.0 - 2.0 / (cfg.alpha() * cfg.p()) + s.r_plus();
  const double a2 = 2.0 / (cfg.beta() * cfg.q()) - 1.0 + s.r_plus();
  rep.feasible = true;
  rep.C1 = std::exp(log_schur_constant(s, cfg, a1));
  rep.C2 = std::exp(log_schur_constant(s, cfg, a2));
  rep.bound = interpolate(rep.C1, rep.C2, rep.interpolation_theta);
  return rep;
}

ExpBoundReport exp_zL_bound(ComplexTime z, const ExponentConfig& cfg) {
  ExpBoundReport rep;
  const WeylParameter s = z_to_s(z);
  rep.s = s.s();
  rep.schur = closed_form_bound(s, cfg);
  rep.feasible = rep.schur.feasible;
  if (!rep.feasible) return rep;

  const double d = cfg.d();
  const double p = cfg.p(), q = cfg.q(), r = cfg.r();
  rep.via_weyl = std::pow(std::abs(1.0 + s.s()), d) * rep.schur.bound;

  const cplx e2 = std::exp(-2.0 * z.value());
  const cplx one_minus = -expm1(-2.0 * z.value());
  const double r_plus = ((1.0 + e2) / one_minus).real();
  const double log_c = 0.5 * d * std::log(1.0 / (2.0 * r)) +
                       d / (2.0 * p) * std::log(cfg.alpha() * r / 2.0) -
                       d / (2.0 * q) * std::log(cfg.beta() * r / 2.0);
  const double a1 = 1.0 - 2.0 / (cfg.alpha() * p) + r_plus;
  const double a2 = 2.0 / (cfg.beta() * q) - 1.0 + r_plus;
  rep.direct = std::exp(d * std::log(2.0) + log_c - 0.5 * d * std::log(std::abs(one_minus)) -
                        0.5 * d * (1.0 - 1.0 / p) * std::log(a1) - 0.5 * d / q * std::log(a2));
  rep.relative_gap = relative_difference(rep.direct, rep.via_weyl);
  return rep;
}

double alpha_hyperbounded(double p, double t) {
  if (!(p >= 1.0)) throw DomainError("p must be >= 1");
  if (!(t > 0.0)) throw DomainError("t must be positive");
  return (1.0 + std::exp(-2.0 * t)) / p;
}

LogKernel log_kernel(const GaussianKernelForm& k) {
  if (k.dim != 1) throw DomainError("numeric Schur test is one-dimensional");
  return [k](double y, double x) { return k.log_modulus(y, x); };
}

LogKernel log_kernel(std::function<cplx(double, double)> k) {
  return [k = std::move(k)](double y, double x) {
    const double m = std::abs(k(y, x));
    return m > 0.0 ? std::log(m) : -kInf;
  };
}

LogWeight log_weight(const GaussianMeasure& m) {
  if (m.dim != 1) throw DomainError("numeric Schur test is one-dimensional");
  return [m](double x) {
    const double p[1] = {x};
    return m.log_density(std::span<const double>(p, 1));
  };
}

LogWeight log_weight(std::function<double(double)> density) {
  return [density = std::move(density)](double x) {
    const double w = density(x);
    if (!(w > 0.0)) throw DomainError("Schur weights must be strictly positive");
    return std::log(w);
  };
}

namespace {

double log_sum_exp(const std::vector<double>& v) {
  double m = -kInf;
  for (double a : v) m = std::max(m, a);
  if (m == -kInf) return -kInf;
  double acc = 0.0;
  for (double a : v) acc += std::exp(a - m);
  return m + std::log(acc);
}

struct Column {
  double log_value;  // log of the integral
  bool edge_divergent;
};

// Integrates over the free variable u with the other variable held at v.
// `rows` selects C1 (v = y, u = x) or C2 (v = x, u = y).
Column integrate_column(const LogKernel& kernel, const LogWeight& log_phi, const LogWeight& log_psi,
                        const ExponentConfig& cfg, const TensorRule& rule, double v, bool rows) {
  const double r = cfg.r();
  std::vector<double> integrand(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double u = rule.nodes[i];
    const double y = rows ? v : u;
    const double x = rows ? u : v;
    const double lk = kernel(y, x);
    integrand[i] = lk == -kInf ? -kInf
                               : r * lk + (r / cfg.q()) * log_psi(y) - (r / cfg.p()) * log_phi(x);
  }
  std::vector<double> weighted(integrand);
  for (std::size_t i = 0; i < rule.size(); ++i) weighted[i] += std::log(rule.weights[i]);
  Column c{log_sum_exp(weighted), false};
  const double edge = std::max(integrand.front(), integrand.back());
  if (!std::isfinite(c.log_value) && c.log_value > 0.0) {
    c.edge_divergent = true;
  } else if (edge != -kInf && edge > c.log_value + std::log(1e-10)) {
    c.edge_divergent = true;
  }
  return c;
}

bool grows_at_ends(const std::vector<double>& logs) {
  const std::size_t n = logs.size();
  const std::size_t tail = std::max<std::size_t>(2, n / 10);
  if (n < 2 * tail) return false;
  auto increasing = [&](auto at) {
    for (std::size_t k = 1; k < tail; ++k) {
      if (!(at(k) > at(k - 1))) return false;
    }
    return at(tail - 1) - at(0) > 1e-6;
  };
  const bool right = increasing([&](std::size_t k) { return logs[n - tail + k]; });
  const bool left = increasing([&](std::size_t k) { return logs[tail - 1 - k]; });
  return right || left;
}

SchurReport schur_impl(const LogKernel& kernel, const LogWeight& log_phi, const LogWeight& log_psi,
                       const ExponentConfig& cfg, const QuadratureSpec& quad, SchurGrid sup,
                       bool parallel) {
  if (cfg.d() != 1) throw DomainError("numeric Schur test is one-dimensional");
  quad.validate();
  if (quad.kind != QuadratureKind::Trapezoid || quad.dim != 1) {
    throw DomainError("numeric Schur test integrates with a one-dimensional trapezoid rule");
  }
  if (!(sup.sup_window > 0.0) || sup.sup_points < 20) {
    throw DomainError("sup grid needs a positive window and at least 20 points");
  }
  sup.int_window = quad.window;
  sup.int_nodes = quad.nodes;
  const TensorRule rule = trapezoid_tensor_rule(quad.window, quad.nodes, 1);

  const int m = sup.sup_points;
  const std::ptrdiff_t total = 2 * static_cast<std::ptrdiff_t>(m);
  std::vector<Column> columns(total);
  detail::ExceptionSlot failure;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    failure.run([&] {
      const bool rows = k < m;
      const int j = static_cast<int>(rows ? k : k - m);
      const double v = grid_coordinate(-sup.sup_window, sup.sup_window, j, m);
      columns[k] = integrate_column(kernel, log_phi, log_psi, cfg, rule, v, rows);
    });
  }
  failure.rethrow();

  SchurReport rep;
  rep.provenance = Provenance::Numeric;
  rep.r = cfg.r();
  rep.interpolation_theta = cfg.r() / cfg.q();
  rep.grid = sup;

  auto reduce = [&](std::size_t offset) {
    std::vector<double> logs(m);
    bool divergent = false;
    double best = -kInf;
    for (int j = 0; j < m; ++j) {
      const Column& c = columns[offset + j];
      logs[j] = c.log_value;
      divergent = divergent || c.edge_divergent;
      best = std::max(best, c.log_value);
    }
    if (divergent || grows_at_ends(logs)) return kInf;
    return std::exp(best / cfg.r());
  };
  rep.C1 = reduce(0);
  rep.C2 = reduce(static_cast<std::size_t>(m));
  if (std::isfinite(rep.C1) && std::isfinite(rep.C2)) {
    rep.feasible = true;
    rep.bound = interpolate(rep.C1, rep.C2, rep.interpolation_theta);
  }
  return rep;
}

}  // namespace

SchurReport numeric_schur(const LogKernel& kernel, const LogWeight& log_phi,
                          const LogWeight& log_psi, const ExponentConfig& cfg,
                          const QuadratureSpec& quad, SchurGrid sup) {
  return schur_impl(kernel, log_phi, log_psi, cfg, quad, sup, true);
}

namespace serial {
SchurReport numeric_schur(const LogKernel& kernel, const LogWeight& log_phi,
                          const LogWeight& log_psi, const ExponentConfig& cfg,
                          const QuadratureSpec& quad, SchurGrid sup) {
  return schur_impl(kernel, log_phi, log_psi, cfg, quad, sup, false);
}
}  // namespace serial

double nelson_threshold(double p, double q) {
  if (!(p > 1.0)) throw DomainError("Nelson threshold needs p > 1");
  if (p > q) throw DomainError("Nelson threshold needs p <= q");
  return 0.5 * std::log((q - 1.0) / (p - 1.0));
}

double nelson_threshold_bisection(double p, double q, double tol) {
  nelson_threshold(p, q);  // argument checks
  const ExponentConfig cfg(p, q, 1.0, 1.0, 1);
  auto feasible = [&](double t) {
    return theorem_main_feasible(z_to_s(ComplexTime(t)), cfg);
  };
  double lo = 0.0;
  double hi = 1.0;
  while (!feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw ConvergenceError("no feasible time found below 1e6");
  }
  if (lo == 0.0 && feasible(tol)) return 0.0;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

SobolevCheck sobolev_feasible(double p, int d) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  const double exponent = 0.5 * d * (1.0 / p - 0.5);
  const bool ok = p > 2.0 * d / (d + 2.0) && p <= 2.0;
  return {ok, exponent};
}

}  // namespace gaussweyl
