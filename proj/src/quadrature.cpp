#include "gaussweyl/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "gaussweyl/errors.hpp"

namespace gaussweyl {

QuadratureSpec QuadratureSpec::gauss_hermite(int nodes, int dim) {
  QuadratureSpec q{QuadratureKind::GaussHermite, nodes, 0.0, dim};
  q.validate();
  return q;
}

QuadratureSpec QuadratureSpec::trapezoid(double window, int nodes, int dim) {
  QuadratureSpec q{QuadratureKind::Trapezoid, nodes, window, dim};
  q.validate();
  return q;
}

void QuadratureSpec::validate() const {
  if (dim < 1 || dim > 3) throw DomainError("quadrature dimension must be 1, 2 or 3");
  if (kind == QuadratureKind::GaussHermite) {
    if (nodes < 20 || nodes > 400) {
      throw DomainError("Gauss-Hermite node count must lie in [20, 400], got " +
                        std::to_string(nodes));
    }
  } else {
    if (!(window > 0.0)) throw DomainError("trapezoid window must be positive");
    if (nodes < 2) throw DomainError("trapezoid rule needs at least 2 nodes");
  }
}

namespace {

// Runs the orthonormal recurrence up to degree n at x and returns h_n, h_{n-1}
// (both scaled by a common factor) plus log(sum_{k<n} h_k^2) in true scale.
struct Recurrence {
  double hn;
  double hn1;
  double log_christoffel;
};

Recurrence run_recurrence(int n, double x) {
  double h0 = 1.0;
  double h1 = x;
  double sum = 1.0;  // h_0^2
  double log_scale = 0.0;
  if (n == 1) return {h1, h0, 0.0};
  sum += h1 * h1;
  for (int k = 1; k < n - 1; ++k) {
    const double h2 = (x * h1 - std::sqrt(static_cast<double>(k)) * h0) /
                      std::sqrt(static_cast<double>(k + 1));
    h0 = h1;
    h1 = h2;
    sum += h1 * h1;
    if (std::abs(h1) > 1e150) {
      h0 *= 1e-150;
      h1 *= 1e-150;
      sum *= 1e-300;
      log_scale += 150.0 * std::log(10.0);
    }
  }
  // h1 = h_{n-1}, h0 = h_{n-2}
  const double hn = (x * h1 - std::sqrt(static_cast<double>(n - 1)) * h0) /
                    std::sqrt(static_cast<double>(n));
  return {hn, h1, std::log(sum) + 2.0 * log_scale};
}

GaussHermiteRule build_rule(int n) {
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 1.0;
    return rule;
  }
  // Golub-Welsch: eigenvalues of the Jacobi matrix of the orthonormal
  // probabilists' Hermite recurrence.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 0; k < n - 1; ++k) sub[k] = std::sqrt(static_cast<double>(k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& eig = solver.eigenvalues();

  for (int i = 0; i < n; ++i) {
    double x = eig[i];
    for (int it = 0; it < 8; ++it) {
      const Recurrence r = run_recurrence(n, x);
      const double dx = r.hn / (std::sqrt(static_cast<double>(n)) * r.hn1);
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(-run_recurrence(n, x).log_christoffel);
  }
  // Enforce exact mirror symmetry so odd moments vanish identically.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = w;
    rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (double& w : rule.weights) w /= total;
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(int n) {
  if (n < 1 || n > 1000) throw DomainError("Gauss-Hermite rule size must lie in [1, 1000]");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<GaussHermiteRule>(build_rule(n))).first;
  }
  return *it->second;
}

TensorRule tensor_rule(const std::vector<double>& nodes, const std::vector<double>& weights,
                       int dim) {
  if (dim < 1 || dim > 3) throw DomainError("tensor rules support dim 1..3");
  const std::size_t m = nodes.size();
  std::size_t total = 1;
  for (int k = 0; k < dim; ++k) total *= m;
  TensorRule out;
  out.dim = dim;
  out.nodes.resize(total * dim);
  out.weights.resize(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    double w = 1.0;
    for (int k = 0; k < dim; ++k) {
      const std::size_t i = rest % m;
      rest /= m;
      out.nodes[idx * dim + k] = nodes[i];
      w *= weights[i];
    }
    out.weights[idx] = w;
  }
  return out;
}

TensorRule gaussian_tensor_rule(int nodes, int dim, double tau) {
  if (!(tau > 0.0)) throw DomainError("Gaussian variance must be positive");
  const GaussHermiteRule& r = gauss_hermite_rule(nodes);
  std::vector<double> x(r.nodes);
  const double scale = std::sqrt(tau);
  for (double& v : x) v *= scale;
  return tensor_rule(x, r.weights, dim);
}

TensorRule trapezoid_tensor_rule(double window, int nodes, int dim) {
  if (!(window > 0.0) || nodes < 2) throw DomainError("invalid trapezoid rule");
  std::vector<double> x(nodes), w(nodes);
  const double h = 2.0 * window / (nodes - 1);
  for (int i = 0; i < nodes; ++i) {
    const double a = static_cast<double>(nodes - 1 - i);
    const double b = static_cast<double>(i);
    x[i] = (-window * a + window * b) / (nodes - 1);
    w[i] = (i == 0 || i == nodes - 1) ? 0.5 * h : h;
  }
  return tensor_rule(x, w, dim);
}

}  // namespace gaussweyl
