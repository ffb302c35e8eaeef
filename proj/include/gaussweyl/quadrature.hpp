#pragma once

#include <vector>

namespace gaussweyl {

enum class QuadratureKind { GaussHermite, Trapezoid };

/// How an integral over R^dim is discretised.
///
/// GaussHermite integrates against the standard Gaussian (rescaled by the
/// caller where a different variance is needed) with `nodes` points per axis,
/// 20 <= nodes <= 400. Trapezoid integrates against Lebesgue measure on
/// [-window, window]^dim with `nodes` points per axis.
struct QuadratureSpec {
  QuadratureKind kind = QuadratureKind::GaussHermite;
  int nodes = 200;
  double window = 0.0;
  int dim = 1;

  static QuadratureSpec gauss_hermite(int nodes = 200, int dim = 1);
  static QuadratureSpec trapezoid(double window, int nodes, int dim = 1);

  /// Throws DomainError when the invariants above are violated.
  void validate() const;
};

/// Nodes and weights of the n-point Gauss rule for the standard Gaussian
/// measure gamma on R (weights sum to 1).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached and thread-safe. Accepts 1 <= n <= 1000 so that callers can double
/// a validated node count.
const GaussHermiteRule& gauss_hermite_rule(int n);

/// Tensor product of a one-dimensional rule; nodes are stored point-major.
struct TensorRule {
  int dim = 1;
  std::vector<double> nodes;  // size = points * dim
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  const double* point(std::size_t k) const { return nodes.data() + k * dim; }
};

TensorRule tensor_rule(const std::vector<double>& nodes,
                       const std::vector<double>& weights, int dim);

/// Gauss-Hermite rule for gamma_tau on R^dim (nodes scaled by sqrt(tau)).
TensorRule gaussian_tensor_rule(int nodes, int dim, double tau = 1.0);

/// Trapezoid rule for Lebesgue measure on [-window, window]^dim.
TensorRule trapezoid_tensor_rule(double window, int nodes, int dim);

}  // namespace gaussweyl
