#pragma once

// Hermite spectral side of the Ornstein-Uhlenbeck operator: expansions,
// the semigroup and resolvent as coefficient multipliers, the ground
// transform U and the position/momentum operators q, p.

#include <array>
#include <span>
#include <vector>

#include "gaussweyl/numerics.hpp"
#include "gaussweyl/polynomial.hpp"
#include "gaussweyl/quadrature.hpp"
#include "gaussweyl/weyl_kernel.hpp"

namespace gaussweyl {

using MultiIndex = std::array<int, 3>;

/// Orthonormal Hermite polynomial h_n(x) = He_n(x) / sqrt(n!).
/// Throws DomainError for n < 0 or n > 500.
double hermite_basis(int n, double x);

/// h_0(x), ..., h_n(x).
std::vector<double> hermite_values(int n, double x);

/// h_n(x) = prod_k h_{n_k}(x_k) on R^dim.
double hermite_basis(const MultiIndex& n, std::span<const double> x);

/// Multi-indices with |n| <= order in `dim` coordinates, ordered by total
/// degree and then lexicographically.
std::vector<MultiIndex> multi_indices(int dim, int order);

class HermiteExpansion {
 public:
  /// Zero expansion. Throws DomainError unless 1 <= dim <= 3 and order >= 0.
  HermiteExpansion(int dim, int order);
  HermiteExpansion(int dim, int order, std::vector<cplx> coeffs);

  /// The single basis function h_n.
  static HermiteExpansion basis(int dim, int order, const MultiIndex& n);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::vector<cplx>& coeffs() { return coeffs_; }

  cplx coeff(const MultiIndex& n) const;
  cplx& coeff(const MultiIndex& n);

  /// ||f||^2 in L^2(gamma) by Parseval.
  double energy() const;
  cplx operator()(std::span<const double> x) const;
  cplx operator()(double x) const;
  Field as_field() const;

 private:
  std::size_t position_of(const MultiIndex& n) const;

  int dim_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::vector<cplx> coeffs_;
};

struct ExpansionReport {
  HermiteExpansion expansion;
  double tail_energy;   // sum over |n| = N of |c_n|^2
  double total_energy;
  bool tail_warning;    // tail_energy > 1e-8 * total_energy
};

/// coeffs[n] = integral f h_n d gamma by tensor Gauss-Hermite quadrature.
/// `quad` must be GaussHermite; its dim is the dimension of the expansion.
ExpansionReport expand(const Field& f, int order, const QuadratureSpec& quad);

/// Default quadrature for expansions: 200 nodes in d = 1, 60 per axis above.
QuadratureSpec default_expansion_quadrature(int dim);

/// c_n -> exp(-z|n|) c_n; needs Re z >= 0.
HermiteExpansion apply_semigroup_spectral(cplx z, const HermiteExpansion& f);

/// c_n -> c_n / (1 + |n|).
HermiteExpansion apply_resolvent(const HermiteExpansion& f);

/// Ground transform U f(x) = 2^{d/2} e^{-|x|^2/2} f(sqrt(2) x) and its inverse.
Field ground_transform(Field f);
Field inverse_ground_transform(Field g);

/// Default central-difference step.
inline constexpr double kDefaultStep = 1e-4;

/// q_j f(y) = (y_j / sqrt 2) f(y).
Field apply_position(int j, Field f);

/// p_j f(y) = -i (sqrt 2 d_j f(y) - (y_j / sqrt 2) f(y)) with a central
/// difference of step h. Throws DomainError for h <= 0.
Field apply_momentum(int j, Field f, double h = kDefaultStep);

/// Same with the partial derivative d_j f supplied exactly.
Field apply_momentum_exact(int j, Field f, Field df);

/// Literal conjugations U^{-1} x_j U and U^{-1} (1/i) d_j U.
Field position_by_conjugation(int j, Field f);
Field momentum_by_conjugation(int j, Field f, double h = kDefaultStep);

/// L f = -f'' + x f' in d = 1 by central differences of step h.
Field apply_ou_generator_1d(Field f, double h = kDefaultStep);

}  // namespace gaussweyl
