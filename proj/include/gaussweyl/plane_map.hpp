#pragma once

// Geometry of the complex time plane: the time change z <-> s, the region
// predicates used by the boundedness results, and the algebraic identities
// that tie them together.

#include <cstdint>
#include <variant>
#include <vector>

#include "gaussweyl/numerics.hpp"

namespace gaussweyl {

/// A point z of the semigroup time plane with Re z > 0.
class ComplexTime {
 public:
  /// Throws DomainError unless Re z > 0.
  explicit ComplexTime(cplx z);
  explicit ComplexTime(double t) : ComplexTime(cplx{t, 0.0}) {}

  cplx value() const { return z_; }
  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }

 private:
  cplx z_;
};

/// The Weyl time s (Re s > 0) together with the scalars derived from it.
///
///   r_plus  = Re(1/s + s) / 2,    r_minus = Re(1/s - s) / 2,
///   b       = (1 - s)^2 / (8 s),  c       = (1/s - s) / 4.
class WeylParameter {
 public:
  /// Throws DomainError unless Re s > 0.
  explicit WeylParameter(cplx s);

  cplx s() const { return s_; }
  double r_plus() const { return r_plus_; }
  double r_minus() const { return r_minus_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }

  /// (Re s)^2 / |s|^2, which equals r_plus^2 - r_minus^2 without cancellation.
  double cos2_arg() const;

 private:
  cplx s_;
  double r_plus_;
  double r_minus_;
  cplx b_;
  cplx c_;
};

/// The exponent tuple (p, q, alpha, beta, d) of a restricted L^p(gamma_alpha)
/// -> L^q(gamma_beta) question, with Schur exponent 1/r = 1 - (1/p - 1/q).
class ExponentConfig {
 public:
  /// Throws DomainError unless 1 <= p <= q < inf, alpha, beta > 0 and d >= 1.
  ExponentConfig(double p, double q, double alpha, double beta, int d);

  double p() const { return p_; }
  double q() const { return q_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  int d() const { return d_; }
  double r() const { return r_; }

 private:
  double p_, q_, alpha_, beta_;
  int d_;
  double r_;
};

/// arccos|2/p - 1|; zero at p = 1 and maximal (pi/2) at p = 2.
double theta_p(double p);

/// s = (1 - e^{-z}) / (1 + e^{-z}).
WeylParameter z_to_s(ComplexTime z);

/// Inverse of z_to_s onto the strip Re z > 0, |Im z| < pi. Throws
/// BranchCutError for real s >= 1.
ComplexTime s_to_z(const WeylParameter& s);

/// s != 0 and |arg s| < theta.
bool in_sector(cplx s, double theta);

/// Epperson region: |sin y| < tan(theta_p) sinh x for z = x + iy, x >= 0.
/// At p = 2 this is the open half plane x > 0.
bool in_epperson(cplx z, double p);

/// Region of L^p -> L^q boundedness of exp(-zL) for 1 < p <= q, written in
/// omega = e^{-z}. Throws DomainError when p > q or p <= 1.
bool in_epq(cplx z, double p, double q);

/// The three conditions of the restricted boundedness criterion:
///   A1 = 1 - 2/(alpha p) + r_plus > 0,  A2 = 2/(beta q) - 1 + r_plus > 0,
///   r_minus^2 <= A1 * A2.
/// `boundary_eps` widens the quadratic condition by an absolute amount (for
/// plotting); a rounding allowance of a few ulps is always applied.
bool theorem_main_feasible(const WeylParameter& s, const ExponentConfig& cfg,
                           double boundary_eps = 0.0);

/// 1 - 2/p + r_plus(s) > 0 (first positivity condition with alpha = 1).
bool in_rp(cplx s, double p);

struct IdentityReport {
  double sa;        // (p-q)x(1+x^2+y^2) + pq x^2 - (pq-2p-2q+4)(x^2+y^2)
  double pq2;       // quadratic-condition LHS times (x^2+y^2)
  double quartic;   // omega-quartic in (x, y) divided by 4((1+x)^2+y^2)^2
  double scale;     // term magnitude used as a relative-difference floor
  double rel_sa_pq2;
  double rel_sa_quartic;
  double rel_pq2_quartic;

  double max_relative() const;
};

/// Evaluates three algebraically equal forms of the quadratic condition at
/// s = x + iy. Throws DomainError for x <= 0.
IdentityReport check_pq_identities(double x, double y, double p, double q);

struct PqFuzzSummary {
  std::size_t samples = 0;
  double max_relative = 0.0;
  double worst_x = 0.0, worst_y = 0.0, worst_p = 0.0, worst_q = 0.0;
};

/// Fuzzes check_pq_identities over (0,3) x (-3,3) x (1,4) x (1,4).
PqFuzzSummary fuzz_pq_identities(std::size_t samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Region sampling

namespace region {
struct Epperson { double p; };
struct Sector { double theta; };
struct Rp { double p; };
struct TheoremMain { ExponentConfig cfg; };
struct Epq { double p; double q; };
}  // namespace region

/// Epperson and Epq live in the z-plane; Sector, Rp and TheoremMain in the
/// s-plane.
using Region = std::variant<region::Epperson, region::Sector, region::Rp,
                            region::TheoremMain, region::Epq>;

bool region_contains(const Region& region, cplx point);

struct Window {
  double x0, x1, y0, y1;
};

struct RegionPoint {
  double re;
  double im;
  bool member;
};

/// Row-major grid: row j holds im = y_j, column i holds re = x_i, with both
/// axes sampled at `resolution` points including the window edges.
struct RegionSample {
  Window window;
  int resolution = 0;
  std::vector<RegionPoint> points;

  const RegionPoint& at(int i, int j) const {
    return points[static_cast<std::size_t>(j) * resolution + i];
  }
  double member_fraction() const;
};

/// Grid coordinate k of n points on [lo, hi]; exact mirror symmetry when
/// lo = -hi.
double grid_coordinate(double lo, double hi, int k, int n);

/// OpenMP point-parallel sampling; output order is independent of threads.
RegionSample sample_region(const Region& region, const Window& window,
                           int resolution);

namespace serial {
RegionSample sample_region(const Region& region, const Window& window,
                           int resolution);
PqFuzzSummary fuzz_pq_identities(std::size_t samples, std::uint64_t seed);
}  // namespace serial

}  // namespace gaussweyl
