#include "gaussweyl/plane_map.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gaussweyl/errors.hpp"

namespace gaussweyl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt_complex(cplx z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace

ComplexTime::ComplexTime(cplx z) : z_(z) {
  if (!(z.real() > 0.0) || !std::isfinite(z.imag())) {
    throw DomainError("complex time needs Re z > 0, got " + fmt_complex(z));
  }
}

WeylParameter::WeylParameter(cplx s) : s_(s) {
  if (!(s.real() > 0.0) || !std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw DomainError("Weyl parameter needs Re s > 0, got " + fmt_complex(s));
  }
  const cplx inv = 1.0 / s;
  r_plus_ = 0.5 * (inv.real() + s.real());
  r_minus_ = 0.5 * (inv.real() - s.real());
  b_ = (1.0 - s) * (1.0 - s) / (8.0 * s);
  c_ = 0.25 * (inv - s);
}

double WeylParameter::cos2_arg() const {
  const double ratio = s_.real() / std::abs(s_);
  return ratio * ratio;
}

ExponentConfig::ExponentConfig(double p, double q, double alpha, double beta, int d)
    : p_(p), q_(q), alpha_(alpha), beta_(beta), d_(d) {
  if (!(p >= 1.0) || !std::isfinite(p) || !(q >= 1.0) || !std::isfinite(q)) {
    throw DomainError("exponents must satisfy 1 <= p, q < inf");
  }
  if (p > q) {
    // 1/r = 1 - (1/p - 1/q) > 1 would put r below 1.
    throw DomainError("Schur exponent r needs p <= q");
  }
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("Gaussian variances alpha, beta must be positive");
  }
  if (d < 1) throw DomainError("dimension must be >= 1");
  r_ = 1.0 / (1.0 - (1.0 / p - 1.0 / q));
}

double theta_p(double p) {
  if (!(p >= 1.0)) throw DomainError("theta_p needs p >= 1");
  return std::acos(std::min(1.0, std::abs(2.0 / p - 1.0)));
}

WeylParameter z_to_s(ComplexTime z) {
  const cplx w = std::exp(-z.value());
  if (w == cplx{-1.0, 0.0}) throw DomainError("e^{-z} = -1 has no image");
  // tanh(z/2) equals (1 - e^{-z}) / (1 + e^{-z}) and avoids the cancellation
  // in 1 - e^{-z} for small z.
  const cplx s = std::tanh(0.5 * z.value());
  if (!(s.real() > 0.0)) {
    throw DomainError("time change left the right half plane at z = " +
                      fmt_complex(z.value()));
  }
  return WeylParameter(s);
}

ComplexTime s_to_z(const WeylParameter& sp) {
  const cplx s = sp.s();
  if (s.imag() == 0.0 && s.real() >= 1.0) {
    throw BranchCutError("s = " + std::to_string(s.real()) +
                         " lies on the branch cut [1, inf) of the inverse time change");
  }
  return ComplexTime(std::log((1.0 + s) / (1.0 - s)));
}

bool in_sector(cplx s, double theta) {
  if (s == cplx{0.0, 0.0}) return false;
  return std::abs(std::arg(s)) < theta;
}

bool in_epperson(cplx z, double p) {
  if (!(p >= 1.0)) throw DomainError("Epperson region needs p > 1");
  const double x = z.real();
  if (!(x > 0.0)) return false;
  if (p == 1.0) return false;
  if (p == 2.0) return true;
  const double theta = theta_p(p);
  return std::abs(std::sin(z.imag())) < std::tan(theta) * std::sinh(x);
}

bool in_epq(cplx z, double p, double q) {
  if (!(p > 1.0)) throw DomainError("E_{p,q} needs p > 1");
  if (p > q) throw DomainError("E_{p,q} needs p <= q");
  if (!(z.real() > 0.0)) return false;
  const cplx w = std::exp(-z);
  const double m2 = std::norm(w);
  if (!(m2 < p / q)) return false;
  const double re = w.real();
  const double im = w.imag();
  const double quartic = (q - 1.0) * m2 * m2 + (2.0 - p - q) * re * re -
                         (2.0 - p - q + p * q) * im * im + p - 1.0;
  return quartic > 0.0;
}

bool theorem_main_feasible(const WeylParameter& s, const ExponentConfig& cfg,
                           double boundary_eps) {
  const double a = 1.0 - 2.0 / (cfg.alpha() * cfg.p());
  const double b = 2.0 / (cfg.beta() * cfg.q()) - 1.0;
  const double rp = s.r_plus();
  if (!(a + rp > 0.0) || !(b + rp > 0.0)) return false;
  // A1*A2 - r_minus^2 = ab + (a+b) r_plus + (r_plus^2 - r_minus^2).
  const double margin = a * b + (a + b) * rp + s.cos2_arg();
  // First-order rounding scale: a and b carry absolute error of order eps * (1 + 2/(alpha p)),
  // which the products below amplify by |b| + r_plus and |a| + r_plus.
  const double ea = 1.0 + 2.0 / (cfg.alpha() * cfg.p());
  const double eb = 1.0 + 2.0 / (cfg.beta() * cfg.q());
  const double scale = ea * (std::abs(b) + rp) + eb * (std::abs(a) + rp) + std::abs(a * b) +
                       std::abs(a + b) * rp + std::abs(s.cos2_arg()) + 1.0;
  return margin >= -(16.0 * kEps * scale + boundary_eps);
}

bool in_rp(cplx s, double p) {
  if (!(s.real() > 0.0)) return false;
  const double rp = 0.5 * ((1.0 / s).real() + s.real());
  return 1.0 - 2.0 / p + rp > 0.0;
}

double IdentityReport::max_relative() const {
  return std::max({rel_sa_pq2, rel_sa_quartic, rel_pq2_quartic});
}

IdentityReport check_pq_identities(double x, double y, double p, double q) {
  if (!(x > 0.0)) throw DomainError("identity check needs x > 0");
  IdentityReport rep{};
  const double s2 = x * x + y * y;
  const double k = p * q - 2.0 * p - 2.0 * q + 4.0;

  const double sa_t1 = (p - q) * x * (1.0 + s2);
  const double sa_t2 = p * q * x * x;
  const double sa_t3 = k * s2;
  rep.sa = sa_t1 + sa_t2 - sa_t3;

  const double pq2_lhs = (p - q) * (x + x / s2) + p * q * (x * x / s2 - 1.0) +
                         2.0 * p + 2.0 * q - 4.0;
  rep.pq2 = pq2_lhs * s2;

  const double dd = (1.0 + x) * (1.0 + x) + y * y;
  const double u = 1.0 - s2;
  const double v = u * u + 4.0 * y * y;
  const double e1 = (q - 1.0) * v * v;
  const double e2 = (2.0 - p - q) * u * u * dd * dd;
  const double e3 = (2.0 - p - q + p * q) * 4.0 * y * y * dd * dd;
  const double e4 = (p - 1.0) * dd * dd * dd * dd;
  const double denom = 4.0 * dd * dd;
  rep.quartic = (e1 + e2 - e3 + e4) / denom;

  const double sa_scale = std::abs(sa_t1) + std::abs(sa_t2) + std::abs(sa_t3);
  const double quartic_scale =
      (std::abs(e1) + std::abs(e2) + std::abs(e3) + std::abs(e4)) / denom;
  rep.scale = std::max(sa_scale, quartic_scale);

  rep.rel_sa_pq2 = relative_difference(rep.sa, rep.pq2, rep.scale);
  rep.rel_sa_quartic = relative_difference(rep.sa, rep.quartic, rep.scale);
  rep.rel_pq2_quartic = relative_difference(rep.pq2, rep.quartic, rep.scale);
  return rep;
}

namespace {

struct PqSample {
  double x, y, p, q;
};

std::vector<PqSample> draw_pq_samples(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(std::nextafter(0.0, 1.0), 3.0);
  std::uniform_real_distribution<double> uy(-3.0, 3.0);
  std::uniform_real_distribution<double> upq(1.0, 4.0);
  std::vector<PqSample> out(n);
  for (auto& smp : out) {
    smp.x = ux(rng);
    smp.y = uy(rng);
    smp.p = upq(rng);
    smp.q = upq(rng);
  }
  return out;
}

PqFuzzSummary reduce_pq(const std::vector<PqSample>& samples,
                        const std::vector<double>& rel) {
  PqFuzzSummary sum;
  sum.samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (rel[i] > sum.max_relative) {
      sum.max_relative = rel[i];
      sum.worst_x = samples[i].x;
      sum.worst_y = samples[i].y;
      sum.worst_p = samples[i].p;
      sum.worst_q = samples[i].q;
    }
  }
  return sum;
}

}  // namespace

PqFuzzSummary fuzz_pq_identities(std::size_t samples, std::uint64_t seed) {
  const auto pts = draw_pq_samples(samples, seed);
  std::vector<double> rel(pts.size());
  const auto n = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& s = pts[i];
    rel[i] = check_pq_identities(s.x, s.y, s.p, s.q).max_relative();
  }
  return reduce_pq(pts, rel);
}

namespace serial {

PqFuzzSummary fuzz_pq_identities(std::size_t samples, std::uint64_t seed) {
  const auto pts = draw_pq_samples(samples, seed);
  std::vector<double> rel(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& s = pts[i];
    rel[i] = check_pq_identities(s.x, s.y, s.p, s.q).max_relative();
  }
  return reduce_pq(pts, rel);
}

}  // namespace serial

}  // namespace gaussweyl
