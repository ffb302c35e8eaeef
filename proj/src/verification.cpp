#include "gaussweyl/verification.hpp"

#include <cmath>
#include <random>

#include "gaussweyl/errors.hpp"
#include "gaussweyl/polynomial.hpp"
#include "gaussweyl/probe.hpp"
#include "gaussweyl/serialize.hpp"
#include "gaussweyl/spectral_oracle.hpp"
#include "gaussweyl/weyl_kernel.hpp"

namespace gaussweyl {

namespace {

using Checks = std::vector<CheckResult>;

void add(Checks& out, std::string name, double measured, double tolerance) {
  out.push_back({std::move(name), measured, tolerance, measured <= tolerance});
}

std::string time_label(cplx t) {
  std::string s = "t=" + format_double(t.real());
  if (t.imag() != 0.0) s += (t.imag() > 0 ? "+" : "") + format_double(t.imag()) + "i";
  return s;
}

Checks kernel_identity_suite() {
  Checks out;
  for (double t : {0.01, 0.1, 1.0, 5.0}) {
    for (int d = 1; d <= 3; ++d) {
      add(out, "kernel-identity " + time_label(t) + " d=" + std::to_string(d),
          verify_kernel_identity(ComplexTime(t), d).max(), 1e-12);
    }
  }
  for (cplx t : {cplx{0.5, 2.0}, cplx{0.5, -2.0}, cplx{0.2, 1.0}, cplx{0.2, -1.0}}) {
    add(out, "kernel-identity " + time_label(t) + " d=1", verify_kernel_identity(ComplexTime(t), 1).max(),
        1e-10);
  }
  return out;
}

Checks spectral_cross_suite() {
  Checks out;
  const GaussianMeasure gamma{1.0, 1};
  const QuadratureSpec quad = QuadratureSpec::gauss_hermite(200, 1);
  for (double t : {0.1, 0.5, 1.0}) {
    const GaussianKernelForm m = mehler_kernel(ComplexTime(t), 1);
    for (int n = 0; n <= 10; ++n) {
      Field hn = field_1d([n](double x) { return cplx{hermite_basis(n, x), 0.0}; });
      Field image = apply_kernel(m, hn, quad);
      const double decay = std::exp(-t * n);
      Field err = [image, hn, decay](std::span<const double> x) { return image(x) - decay * hn(x); };
      add(out, "mehler-vs-spectral " + time_label(t) + " n=" + std::to_string(n),
          lp_norm(err, 2.0, gamma, quad, kInf), 1e-8);
    }
  }
  return out;
}

Checks commutation_suite() {
  Checks out;
  const cplx i{0.0, 1.0};

  // Commutator on a Gaussian.
  Field f = field_1d([](double x) { return cplx{std::exp(-(x - 0.3) * (x - 0.3) / 3.0), 0.0}; });
  Field qp = apply_position(0, apply_momentum(0, f));
  Field pq = apply_momentum(0, apply_position(0, f));
  double err_plus = 0.0, err_minus = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double y[1] = {grid_coordinate(-3.0, 3.0, k, 100)};
    const cplx c = (qp(y) - pq(y)) / f(y);
    err_plus = std::max(err_plus, std::abs(c - i));
    err_minus = std::max(err_minus, std::abs(c + i));
  }
  if (err_plus <= err_minus) {
    add(out, "commutator [q,p] = +i", err_plus, 1e-6);
  } else {
    add(out, "commutator [q,p] = -i", err_minus, 1e-6);
  }

  // (p^2 + q^2)/2 = L + 1/2 in d = 1.
  Field g = field_1d([](double x) { return cplx{std::exp(-x * x / 3.0), 0.0}; });
  Field pp = apply_momentum(0, apply_momentum(0, g));
  Field qq = apply_position(0, apply_position(0, g));
  Field lg = apply_ou_generator_1d(g);
  double ham = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double y[1] = {grid_coordinate(-3.0, 3.0, k, 50)};
    const cplx lhs = 0.5 * (pp(y) + qq(y));
    const cplx rhs = lg(y) + 0.5 * g(y);
    ham = std::max(ham, std::abs(lhs - rhs));
  }
  add(out, "hamiltonian (p^2+q^2)/2 = L + 1/2", ham, 1e-6);

  // Explicit forms against the literal conjugation by U.
  Field u = field_1d([](double x) { return (1.0 + 0.5 * x) * std::exp(-x * x / 3.0); });
  Field du = field_1d([](double x) {
    return (0.5 - (1.0 + 0.5 * x) * (2.0 * x / 3.0)) * std::exp(-x * x / 3.0);
  });
  Field q_explicit = apply_position(0, u);
  Field q_conj = position_by_conjugation(0, u);
  Field p_explicit = apply_momentum_exact(0, u, du);
  Field p_conj = momentum_by_conjugation(0, u);
  double dq = 0.0, dp = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double y[1] = {grid_coordinate(-3.0, 3.0, k, 50)};
    dq = std::max(dq, std::abs(q_explicit(y) - q_conj(y)));
    dp = std::max(dp, std::abs(p_explicit(y) - p_conj(y)));
  }
  add(out, "position explicit vs conjugation", dq, 1e-6);
  add(out, "momentum explicit vs conjugation", dp, 1e-6);

  // Intertwining with the Wiener-Plancherel transform.
  std::vector<double> pts;
  for (int k = 0; k < 20; ++k) pts.push_back(grid_coordinate(-2.0, 2.0, k, 20));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<cplx> random5(6);
  for (cplx& c : random5) c = {coef(rng), coef(rng)};
  const std::pair<const char*, Polynomial> polys[] = {
      {"h0", probabilists_hermite(0)}, {"h1", probabilists_hermite(1)}, {"random deg 5", Polynomial(random5)}};
  for (const auto& [label, poly] : polys) {
    const SwapReport rep = swap_relations_check(poly, pts);
    add(out, std::string("qW = Wp on ") + label, rep.q_after_w, 1e-8);
    add(out, std::string("pW = -Wq on ") + label, rep.p_after_w, 1e-8);
  }
  return out;
}

double max_coeff_diff(const Polynomial& a, const Polynomial& b) {
  const auto& u = a.coeffs();
  const auto& v = b.coeffs();
  double m = 0.0;
  for (std::size_t k = 0; k < std::max(u.size(), v.size()); ++k) {
    const cplx x = k < u.size() ? u[k] : cplx{};
    const cplx y = k < v.size() ? v[k] : cplx{};
    m = std::max(m, std::abs(x - y));
  }
  return m;
}

Checks wiener_suite() {
  Checks out;
  cplx phase{1.0, 0.0};
  for (int n = 0; n <= 10; ++n) {
    const Polynomial he = probabilists_hermite(n);
    add(out, "W He_" + std::to_string(n) + " = (-i)^" + std::to_string(n) + " He_" + std::to_string(n),
        max_coeff_diff(wiener_plancherel(he), he * phase), 0.0);
    phase *= cplx{0.0, -1.0};
  }
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<cplx> c(11);
    for (cplx& x : c) x = {static_cast<double>(coef(rng)), static_cast<double>(coef(rng))};
    const Polynomial f(c);
    Polynomial w = f;
    for (int k = 0; k < 4; ++k) w = wiener_plancherel(w);
    add(out, "W^4 = id, integer polynomial #" + std::to_string(trial), max_coeff_diff(w, f), 0.0);
  }
  return out;
}

Checks pq_suite() {
  Checks out;
  const PqFuzzSummary s = fuzz_pq_identities(100000, 20240601);
  add(out, "pq identities, 1e5-point fuzz", s.max_relative, 1e-9);
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"kernel-identity", "spectral-cross", "commutation",
                                                 "wiener", "pq-identities"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, std::optional<double> tol) {
  Checks out;
  auto run_one = [&](const std::string& n) {
    Checks part;
    if (n == "kernel-identity") part = kernel_identity_suite();
    else if (n == "spectral-cross") part = spectral_cross_suite();
    else if (n == "commutation") part = commutation_suite();
    else if (n == "wiener") part = wiener_suite();
    else if (n == "pq-identities") part = pq_suite();
    else throw DomainError("unknown verification suite '" + n + "'");
    out.insert(out.end(), part.begin(), part.end());
  };
  if (name == "all") {
    for (const std::string& n : suite_names()) run_one(n);
  } else {
    run_one(name);
  }
  if (tol) {
    for (CheckResult& c : out) {
      c.tolerance = *tol;
      c.pass = c.measured <= *tol;
    }
  }
  return out;
}

}  // namespace gaussweyl
