#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace gaussweyl {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// e^z - 1 without cancellation for small |z|.
inline cplx expm1(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double half_sin = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

/// Principal-branch power w^a for real exponent a.
inline cplx principal_pow(cplx w, double a) {
  if (w == cplx{0.0, 0.0}) return a > 0 ? cplx{0.0, 0.0} : cplx{kInf, 0.0};
  return std::exp(a * std::log(w));
}

/// |u - v| / max(|u|, |v|, floor).
inline double relative_difference(cplx u, cplx v, double floor = 0.0) {
  const double scale = std::max({std::abs(u), std::abs(v), floor});
  if (scale == 0.0) return 0.0;
  return std::abs(u - v) / scale;
}

}  // namespace gaussweyl
