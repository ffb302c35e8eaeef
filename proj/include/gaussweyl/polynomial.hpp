#pragma once

#include <vector>

#include "gaussweyl/numerics.hpp"

namespace gaussweyl {

/// One-variable polynomial with complex coefficients in the monomial basis,
/// coeffs[k] multiplying y^k.
class Polynomial {
 public:
  Polynomial() = default;
  /// Throws DomainError on non-finite coefficients.
  explicit Polynomial(std::vector<cplx> coeffs);

  /// sum_n c[n] h_n with h_n the orthonormal probabilists' Hermite polynomials.
  static Polynomial from_hermite(const std::vector<cplx>& c);

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  int degree() const;  // -1 for the zero polynomial
  cplx operator()(cplx y) const;

  Polynomial derivative() const;
  Polynomial times_y() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(cplx a) const;
  bool operator==(const Polynomial& o) const;

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

/// He_n with integer coefficients (He_{n+1} = y He_n - n He_{n-1}).
Polynomial probabilists_hermite(int n);

/// Wiener-Plancherel transform W f(y) = E[f(-iy + sqrt(2) X)], X ~ gamma,
/// by exact Gaussian moments. Throws DomainError above degree 60.
Polynomial wiener_plancherel(const Polynomial& f);

/// q f = (y / sqrt 2) f and p f = -i (sqrt 2 f' - (y / sqrt 2) f) on polynomials.
Polynomial position(const Polynomial& f);
Polynomial momentum(const Polynomial& f);

struct SwapReport {
  double q_after_w = 0.0;  // max |q W f - W p f|
  double p_after_w = 0.0;  // max |p W f + W q f|
  double max() const { return q_after_w > p_after_w ? q_after_w : p_after_w; }
};

/// Evaluates q W = W p and p W = -W q at the given points.
SwapReport swap_relations_check(const Polynomial& f, const std::vector<double>& points);

}  // namespace gaussweyl
