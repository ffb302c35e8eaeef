#include "gaussweyl/spectral_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaussweyl/errors.hpp"
#include "exception_slot.hpp"

namespace gaussweyl {

namespace {

int total_degree(const MultiIndex& n) { return n[0] + n[1] + n[2]; }

bool graded_less(const MultiIndex& a, const MultiIndex& b) {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

void check_dim(int dim) {
  if (dim < 1 || dim > 3) throw DomainError("spectral machinery supports dim 1..3");
}

double norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double a : v) acc += a * a;
  return acc;
}

}  // namespace

std::vector<double> hermite_values(int n, double x) {
  if (n < 0 || n > 500) throw DomainError("Hermite index must lie in [0, 500], got " + std::to_string(n));
  std::vector<double> h(n + 1);
  h[0] = 1.0;
  if (n >= 1) h[1] = x;
  for (int k = 1; k < n; ++k) {
    h[k + 1] = (x * h[k] - std::sqrt(static_cast<double>(k)) * h[k - 1]) /
               std::sqrt(static_cast<double>(k + 1));
  }
  return h;
}

double hermite_basis(int n, double x) { return hermite_values(n, x)[n]; }

double hermite_basis(const MultiIndex& n, std::span<const double> x) {
  double v = 1.0;
  for (std::size_t k = 0; k < x.size() && k < 3; ++k) v *= hermite_basis(n[k], x[k]);
  for (std::size_t k = x.size(); k < 3; ++k) {
    if (n[k] != 0) throw DomainError("multi-index exceeds the point dimension");
  }
  return v;
}

std::vector<MultiIndex> multi_indices(int dim, int order) {
  check_dim(dim);
  if (order < 0) throw DomainError("truncation order must be non-negative");
  std::vector<MultiIndex> out;
  const int m1 = dim >= 2 ? order : 0;
  const int m2 = dim >= 3 ? order : 0;
  for (int a = 0; a <= order; ++a) {
    for (int b = 0; b <= m1 && a + b <= order; ++b) {
      for (int c = 0; c <= m2 && a + b + c <= order; ++c) out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end(), graded_less);
  return out;
}

HermiteExpansion::HermiteExpansion(int dim, int order)
    : dim_(dim), order_(order), indices_(multi_indices(dim, order)),
      coeffs_(indices_.size(), cplx{0.0, 0.0}) {}

HermiteExpansion::HermiteExpansion(int dim, int order, std::vector<cplx> coeffs)
    : HermiteExpansion(dim, order) {
  if (coeffs.size() != coeffs_.size()) {
    throw DomainError("expected " + std::to_string(coeffs_.size()) + " Hermite coefficients, got " +
                      std::to_string(coeffs.size()));
  }
  coeffs_ = std::move(coeffs);
}

HermiteExpansion HermiteExpansion::basis(int dim, int order, const MultiIndex& n) {
  HermiteExpansion e(dim, order);
  e.coeff(n) = 1.0;
  return e;
}

std::size_t HermiteExpansion::position_of(const MultiIndex& n) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), n, graded_less);
  if (it == indices_.end() || *it != n) throw DomainError("multi-index outside the expansion");
  return static_cast<std::size_t>(it - indices_.begin());
}

cplx HermiteExpansion::coeff(const MultiIndex& n) const { return coeffs_[position_of(n)]; }
cplx& HermiteExpansion::coeff(const MultiIndex& n) { return coeffs_[position_of(n)]; }

double HermiteExpansion::energy() const {
  double acc = 0.0;
  for (const cplx& c : coeffs_) acc += std::norm(c);
  return acc;
}

cplx HermiteExpansion::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw DomainError("point dimension mismatch");
  std::array<std::vector<double>, 3> h;
  for (int k = 0; k < 3; ++k) h[k] = k < dim_ ? hermite_values(order_, x[k]) : std::vector<double>{1.0};
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const MultiIndex& n = indices_[i];
    acc += coeffs_[i] * (h[0][n[0]] * h[1][n[1]] * h[2][n[2]]);
  }
  return acc;
}

cplx HermiteExpansion::operator()(double x) const {
  const double p[1] = {x};
  return (*this)(std::span<const double>(p, 1));
}

Field HermiteExpansion::as_field() const {
  return [e = *this](std::span<const double> x) { return e(x); };
}

QuadratureSpec default_expansion_quadrature(int dim) {
  return QuadratureSpec::gauss_hermite(dim == 1 ? 200 : 60, dim);
}

ExpansionReport expand(const Field& f, int order, const QuadratureSpec& quad) {
  quad.validate();
  if (quad.kind != QuadratureKind::GaussHermite) {
    throw DomainError("Hermite expansion needs Gauss-Hermite quadrature");
  }
  const int dim = quad.dim;
  HermiteExpansion out(dim, order);
  const GaussHermiteRule& rule = gauss_hermite_rule(quad.nodes);

  // Axis k has m[k] nodes and n[k] + 1 modes; unused axes are padded with a
  // single node of weight one carrying only h_0.
  std::array<int, 3> m{}, modes{};
  std::array<std::vector<double>, 3> basis;  // basis[k][mode * m[k] + i] = h_mode(x_i) w_i
  for (int k = 0; k < 3; ++k) {
    if (k < dim) {
      m[k] = quad.nodes;
      modes[k] = order + 1;
      basis[k].resize(static_cast<std::size_t>(modes[k]) * m[k]);
      for (int i = 0; i < m[k]; ++i) {
        const std::vector<double> h = hermite_values(order, rule.nodes[i]);
        for (int n = 0; n <= order; ++n) basis[k][n * m[k] + i] = h[n] * rule.weights[i];
      }
    } else {
      m[k] = 1;
      modes[k] = 1;
      basis[k] = {1.0};
    }
  }

  const std::ptrdiff_t points = static_cast<std::ptrdiff_t>(m[0]) * m[1] * m[2];
  std::vector<cplx> values(points);
  detail::ExceptionSlot failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < points; ++idx) {
    failure.run([&] {
      const int i0 = static_cast<int>(idx % m[0]);
      const int i1 = static_cast<int>((idx / m[0]) % m[1]);
      const int i2 = static_cast<int>(idx / (static_cast<std::ptrdiff_t>(m[0]) * m[1]));
      const double x[3] = {rule.nodes[i0], m[1] > 1 ? rule.nodes[i1] : 0.0,
                           m[2] > 1 ? rule.nodes[i2] : 0.0};
      values[idx] = f(std::span<const double>(x, dim));
    });
  }
  failure.rethrow();

  // Sum factorisation, one axis at a time.
  std::vector<cplx> g1(static_cast<std::size_t>(modes[0]) * m[1] * m[2]);
  for (int i2 = 0; i2 < m[2]; ++i2)
    for (int i1 = 0; i1 < m[1]; ++i1)
      for (int n0 = 0; n0 < modes[0]; ++n0) {
        cplx acc{0.0, 0.0};
        const cplx* row = values.data() + (static_cast<std::size_t>(i2) * m[1] + i1) * m[0];
        const double* b = basis[0].data() + static_cast<std::size_t>(n0) * m[0];
        for (int i0 = 0; i0 < m[0]; ++i0) acc += row[i0] * b[i0];
        g1[(static_cast<std::size_t>(i2) * m[1] + i1) * modes[0] + n0] = acc;
      }
  std::vector<cplx> g2(static_cast<std::size_t>(modes[0]) * modes[1] * m[2]);
  for (int i2 = 0; i2 < m[2]; ++i2)
    for (int n1 = 0; n1 < modes[1]; ++n1)
      for (int n0 = 0; n0 < modes[0]; ++n0) {
        cplx acc{0.0, 0.0};
        for (int i1 = 0; i1 < m[1]; ++i1) {
          acc += g1[(static_cast<std::size_t>(i2) * m[1] + i1) * modes[0] + n0] *
                 basis[1][static_cast<std::size_t>(n1) * m[1] + i1];
        }
        g2[(static_cast<std::size_t>(i2) * modes[1] + n1) * modes[0] + n0] = acc;
      }

  for (std::size_t k = 0; k < out.indices().size(); ++k) {
    const MultiIndex& n = out.indices()[k];
    cplx acc{0.0, 0.0};
    for (int i2 = 0; i2 < m[2]; ++i2) {
      acc += g2[(static_cast<std::size_t>(i2) * modes[1] + n[1]) * modes[0] + n[0]] *
             basis[2][static_cast<std::size_t>(n[2]) * m[2] + i2];
    }
    out.coeffs()[k] = acc;
  }

  double tail = 0.0;
  for (std::size_t k = 0; k < out.indices().size(); ++k) {
    if (total_degree(out.indices()[k]) == order) tail += std::norm(out.coeffs()[k]);
  }
  const double total = out.energy();
  const bool warn = tail > 1e-8 * total;
  return {std::move(out), tail, total, warn};
}

HermiteExpansion apply_semigroup_spectral(cplx z, const HermiteExpansion& f) {
  if (z.real() < 0.0) throw DomainError("semigroup needs Re z >= 0");
  HermiteExpansion out = f;
  for (std::size_t k = 0; k < out.indices().size(); ++k) {
    out.coeffs()[k] *= std::exp(-z * static_cast<double>(total_degree(out.indices()[k])));
  }
  return out;
}

HermiteExpansion apply_resolvent(const HermiteExpansion& f) {
  HermiteExpansion out = f;
  for (std::size_t k = 0; k < out.indices().size(); ++k) {
    out.coeffs()[k] /= 1.0 + total_degree(out.indices()[k]);
  }
  return out;
}

Field ground_transform(Field f) {
  return [f = std::move(f)](std::span<const double> x) {
    std::vector<double> scaled(x.begin(), x.end());
    for (double& v : scaled) v *= std::sqrt(2.0);
    const double d = static_cast<double>(x.size());
    // 2^{d/4} is the factor that makes the dilation unitary on L^2(m).
    return std::pow(2.0, 0.25 * d) * std::exp(-0.5 * norm2(x)) * f(scaled);
  };
}

Field inverse_ground_transform(Field g) {
  return [g = std::move(g)](std::span<const double> y) {
    std::vector<double> scaled(y.begin(), y.end());
    for (double& v : scaled) v /= std::sqrt(2.0);
    const double d = static_cast<double>(y.size());
    return std::pow(2.0, -0.25 * d) * std::exp(0.25 * norm2(y)) * g(scaled);
  };
}

namespace {

cplx central_difference(const Field& f, int j, std::span<const double> y, double h) {
  std::vector<double> plus(y.begin(), y.end());
  std::vector<double> minus(y.begin(), y.end());
  plus[j] += h;
  minus[j] -= h;
  return (f(plus) - f(minus)) / (2.0 * h);
}

void check_coordinate(int j, std::span<const double> y) {
  if (j < 0 || j >= static_cast<int>(y.size())) throw DomainError("coordinate index out of range");
}

constexpr cplx kMinusI{0.0, -1.0};

}  // namespace

Field apply_position(int j, Field f) {
  return [j, f = std::move(f)](std::span<const double> y) {
    check_coordinate(j, y);
    return (y[j] / std::sqrt(2.0)) * f(y);
  };
}

Field apply_momentum(int j, Field f, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  return [j, h, f = std::move(f)](std::span<const double> y) {
    check_coordinate(j, y);
    return kMinusI * (std::sqrt(2.0) * central_difference(f, j, y, h) - (y[j] / std::sqrt(2.0)) * f(y));
  };
}

Field apply_momentum_exact(int j, Field f, Field df) {
  return [j, f = std::move(f), df = std::move(df)](std::span<const double> y) {
    check_coordinate(j, y);
    return kMinusI * (std::sqrt(2.0) * df(y) - (y[j] / std::sqrt(2.0)) * f(y));
  };
}

Field position_by_conjugation(int j, Field f) {
  Field multiplied = [j, u = ground_transform(std::move(f))](std::span<const double> x) {
    check_coordinate(j, x);
    return x[j] * u(x);
  };
  return inverse_ground_transform(std::move(multiplied));
}

Field momentum_by_conjugation(int j, Field f, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  Field differentiated = [j, h, u = ground_transform(std::move(f))](std::span<const double> x) {
    check_coordinate(j, x);
    return kMinusI * central_difference(u, j, x, h);
  };
  return inverse_ground_transform(std::move(differentiated));
}

Field apply_ou_generator_1d(Field f, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  return [h, f = std::move(f)](std::span<const double> y) {
    if (y.size() != 1) throw DomainError("generator is implemented in dimension 1");
    const double x = y[0];
    const double xp[1] = {x + h};
    const double xm[1] = {x - h};
    const cplx fp = f(xp), fm = f(xm), f0 = f(y);
    const cplx second = (fp - 2.0 * f0 + fm) / (h * h);
    const cplx first = (fp - fm) / (2.0 * h);
    return -second + x * first;
  };
}

}  // namespace gaussweyl
