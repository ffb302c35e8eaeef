#include "gaussweyl/polynomial.hpp"

#include <cmath>

#include "gaussweyl/errors.hpp"

namespace gaussweyl {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("polynomial coefficients must be finite");
    }
  }
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{0.0, 0.0}) coeffs_.pop_back();
}

int Polynomial::degree() const { return static_cast<int>(coeffs_.size()) - 1; }

cplx Polynomial::operator()(cplx y) const {
  cplx acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::times_y() const {
  if (coeffs_.empty()) return {};
  std::vector<cplx> out(coeffs_.size() + 1);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k + 1] = coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<cplx> out(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) out[k] += o.coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(cplx a) const {
  std::vector<cplx> out(coeffs_);
  for (cplx& c : out) c *= a;
  return Polynomial(std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

Polynomial probabilists_hermite(int n) {
  if (n < 0) throw DomainError("Hermite degree must be non-negative");
  Polynomial prev({1.0});
  if (n == 0) return prev;
  Polynomial cur({0.0, 1.0});
  for (int k = 1; k < n; ++k) {
    Polynomial next = cur.times_y() - prev * static_cast<double>(k);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial Polynomial::from_hermite(const std::vector<cplx>& c) {
  Polynomial out;
  double factorial = 1.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (n > 0) factorial *= static_cast<double>(n);
    if (c[n] == cplx{0.0, 0.0}) continue;
    out = out + probabilists_hermite(static_cast<int>(n)) * (c[n] / std::sqrt(factorial));
  }
  return out;
}

Polynomial wiener_plancherel(const Polynomial& f) {
  const int deg = f.degree();
  if (deg > 60) throw DomainError("Wiener-Plancherel transform is capped at degree 60");
  if (deg < 0) return {};
  // E[(-iy + sqrt2 X)^k] = sum_{j even} C(k,j) 2^{j/2} (j-1)!! (-i)^{k-j} y^{k-j}.
  const cplx minus_i{0.0, -1.0};
  std::vector<cplx> out(deg + 1);
  for (int k = 0; k <= deg; ++k) {
    const cplx a = f.coeffs()[k];
    if (a == cplx{0.0, 0.0}) continue;
    double binom = 1.0;      // C(k, j)
    double moment = 1.0;     // 2^{j/2} (j-1)!!
    for (int j = 0; j <= k; j += 2) {
      if (j > 0) {
        binom = binom * (k - j + 2) * (k - j + 1) / ((j - 1) * j);
        moment *= 2.0 * (j - 1);
      }
      const int m = k - j;
      cplx phase{1.0, 0.0};
      for (int e = 0; e < m % 4; ++e) phase *= minus_i;
      out[m] += a * (binom * moment) * phase;
    }
  }
  return Polynomial(std::move(out));
}

Polynomial position(const Polynomial& f) { return f.times_y() * (1.0 / std::sqrt(2.0)); }

Polynomial momentum(const Polynomial& f) {
  const Polynomial inner = f.derivative() * std::sqrt(2.0) - position(f);
  return inner * cplx{0.0, -1.0};
}

SwapReport swap_relations_check(const Polynomial& f, const std::vector<double>& points) {
  const Polynomial wf = wiener_plancherel(f);
  const Polynomial lhs1 = position(wf);
  const Polynomial rhs1 = wiener_plancherel(momentum(f));
  const Polynomial lhs2 = momentum(wf);
  const Polynomial rhs2 = wiener_plancherel(position(f)) * -1.0;
  SwapReport rep;
  for (double y : points) {
    rep.q_after_w = std::max(rep.q_after_w, std::abs(lhs1(y) - rhs1(y)));
    rep.p_after_w = std::max(rep.p_after_w, std::abs(lhs2(y) - rhs2(y)));
  }
  return rep;
}

}  // namespace gaussweyl
