#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "gaussweyl/bounds.hpp"
#include "gaussweyl/errors.hpp"
#include "gaussweyl/parallel.hpp"
#include "gaussweyl/plane_map.hpp"
#include "gaussweyl/probe.hpp"
#include "gaussweyl/serialize.hpp"
#include "gaussweyl/spectral_oracle.hpp"
#include "gaussweyl/verification.hpp"
#include "gaussweyl/weyl_kernel.hpp"

namespace gaussweyl::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_plain(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  const auto res = std::from_chars(first, t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw UsageError("not a number: '" + text + "'");
  }
  return v;
}

}  // namespace

double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_plain(text);
  const double num = parse_plain(text.substr(0, slash));
  const double den = parse_plain(text.substr(slash + 1));
  if (den == 0.0) throw UsageError("zero denominator in '" + text + "'");
  return num / den;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

namespace {

cplx parse_complex(const std::string& text) {
  const std::vector<double> v = parse_list(text);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() != 2) throw UsageError("expected re,im but got '" + text + "'");
  return {v[0], v[1]};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void atomic_write(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << data;
    f.close();
    if (!f) {
      std::filesystem::remove(tmp);
      throw IoError("failed writing '" + path + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("invalid JSON in '" + origin + "': " + e.what());
  }
}

// State shared by all subcommands of one invocation.
struct Run {
  std::ostream& out;
  std::ostream& err;
  CLI::App* sub = nullptr;
  std::string out_path;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(const std::string& text) {
    if (out_path.empty()) {
      out << text;
      return;
    }
    atomic_write(out_path, text);
    Json params = Json::object();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->count() == 0 || opt->get_single_name() == "help") continue;
      params[opt->get_single_name()] = opt->as<std::string>();
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    Json manifest;
    manifest["command"] = sub->get_name();
    manifest["parameters"] = std::move(params);
    manifest["tool_version"] = kToolVersion;
    manifest["outputs"] = Json::array({out_path});
    manifest["wall_time_ms"] = elapsed.count();
    atomic_write(out_path + ".manifest.json", dump(manifest));
  }
};

// Options shared by bound and probe.
struct ExponentFlags {
  std::string p = "2", q = "2", alpha = "1", beta = "1";
  int d = 1;

  void attach(CLI::App* app) {
    app->add_option("--p", p, "input exponent (decimal or rational)")->capture_default_str();
    app->add_option("--q", q, "output exponent")->capture_default_str();
    app->add_option("--alpha", alpha, "input variance, or auto-bbg for (1+e^{-2t})/p")->capture_default_str();
    app->add_option("--beta", beta, "output variance")->capture_default_str();
    app->add_option("--d", d, "dimension")->capture_default_str();
  }

  ExponentConfig config(std::optional<double> t) const {
    const double pv = parse_real(p);
    double a;
    if (alpha == "auto-bbg") {
      if (!t) throw UsageError("--alpha auto-bbg needs a real time --t");
      a = alpha_hyperbounded(pv, *t);
    } else {
      a = parse_real(alpha);
    }
    return ExponentConfig(pv, parse_real(q), a, parse_real(beta), d);
  }
};

Json config_json(const ExponentConfig& c) {
  return {{"p", c.p()}, {"q", c.q()}, {"alpha", c.alpha()}, {"beta", c.beta()}, {"d", c.d()}};
}

struct TimeFlags {
  std::string s, z, t;

  void attach(CLI::App* app) {
    app->add_option("--s", s, "Weyl time re,im");
    app->add_option("--z", z, "semigroup time re,im");
    app->add_option("--t", t, "real semigroup time");
  }
  int given() const { return !s.empty() + !z.empty() + !t.empty(); }
  std::optional<double> real_time() const {
    if (!t.empty()) return parse_real(t);
    return std::nullopt;
  }
};

Region make_region(const std::string& name, double p, double q, double alpha, double beta, int d) {
  if (name == "epperson") return region::Epperson{p};
  if (name == "sector") return region::Sector{theta_p(p)};
  if (name == "rp") return region::Rp{p};
  if (name == "thm-main") return region::TheoremMain{ExponentConfig(p, q, alpha, beta, d)};
  if (name == "epq") return region::Epq{p, q};
  throw UsageError("unknown region '" + name + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian kernels, complex-time regions and Schur bounds for the Ornstein-Uhlenbeck semigroup"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Run run{out, err, nullptr, {}, std::chrono::steady_clock::now()};

  // region
  auto* region_cmd = app.add_subcommand("region", "sample a region of the complex plane to CSV or SVG");
  std::string region_name, overlay_name, window = "0,3,-3,3", format = "csv", title;
  std::string rp_ = "2", rq_, ralpha = "1", rbeta = "1";
  int rd = 1, res = 200;
  region_cmd->add_option("--region", region_name, "epperson|sector|rp|thm-main|epq")
      ->required()
      ->check(CLI::IsMember({"epperson", "sector", "rp", "thm-main", "epq"}));
  region_cmd->add_option("--p", rp_, "exponent p")->capture_default_str();
  region_cmd->add_option("--q", rq_, "exponent q (defaults to p)");
  region_cmd->add_option("--alpha", ralpha)->capture_default_str();
  region_cmd->add_option("--beta", rbeta)->capture_default_str();
  region_cmd->add_option("--d", rd)->capture_default_str();
  region_cmd->add_option("--window", window, "x0,x1,y0,y1")->capture_default_str();
  region_cmd->add_option("--res", res, "points per axis")->capture_default_str();
  region_cmd->add_option("--out", run.out_path, "output file (stdout when omitted)");
  region_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "svg"}))->capture_default_str();
  region_cmd->add_option("--overlay", overlay_name, "second region drawn on the same grid")
      ->check(CLI::IsMember({"epperson", "sector", "rp", "thm-main", "epq"}));
  region_cmd->add_option("--title", title, "SVG caption");

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "restricted Lp-Lq bound for exp(-s(P^2+Q^2)) or exp(-zL)");
  ExponentFlags bflags;
  TimeFlags btime;
  std::string method = "closed";
  bflags.attach(bound_cmd);
  btime.attach(bound_cmd);
  bound_cmd->add_option("--method", method, "closed|numeric (numeric needs d = 1 and --s)")
      ->check(CLI::IsMember({"closed", "numeric"}))
      ->capture_default_str();
  bound_cmd->add_option("--out", run.out_path);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite");
  std::string suite = "all";
  std::optional<double> tol;
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify_cmd->add_option("--suite", suite)->check(CLI::IsMember(suites))->capture_default_str();
  verify_cmd->add_option("--tol", tol, "override every tolerance");
  verify_cmd->add_option("--out", run.out_path);

  // probe
  auto* probe_cmd = app.add_subcommand("probe", "Gaussian trial ratios against the closed-form bound");
  ExponentFlags pflags;
  TimeFlags ptime;
  std::string nelson, lambdas;
  pflags.attach(probe_cmd);
  ptime.attach(probe_cmd);
  probe_cmd->add_option("--nelson", nelson, "t = c * t*(p, q)");
  probe_cmd->add_option("--lambda", lambdas, "comma-separated trial exponents");
  probe_cmd->add_option("--out", run.out_path);

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "Gaussian kernel coefficients as JSON");
  TimeFlags ktime;
  int kd = 1;
  std::string kin, keval;
  ktime.attach(kernel_cmd);
  kernel_cmd->add_option("--d", kd)->capture_default_str();
  kernel_cmd->add_option("--in", kin, "read a kernel JSON instead of building one");
  kernel_cmd->add_option("--eval", keval, "y,x: also evaluate K(y,x) (d = 1)");
  kernel_cmd->add_option("--out", run.out_path);

  // semigroup
  auto* semi_cmd = app.add_subcommand("semigroup", "apply exp(-zL) or (I+L)^{-1} to a Hermite expansion JSON");
  std::string sin_path, sz;
  bool resolvent = false;
  semi_cmd->add_option("--in", sin_path, "expansion JSON")->required();
  semi_cmd->add_option("--z", sz, "time re,im (Re z >= 0)");
  semi_cmd->add_flag("--resolvent", resolvent, "apply (I+L)^{-1}");
  semi_cmd->add_option("--out", run.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    configure_threads_from_env();

    if (region_cmd->parsed()) {
      run.sub = region_cmd;
      const std::vector<double> w = parse_list(window);
      if (w.size() != 4) throw UsageError("--window needs x0,x1,y0,y1");
      const double p = parse_real(rp_);
      const double q = rq_.empty() ? p : parse_real(rq_);
      const double a = parse_real(ralpha), b = parse_real(rbeta);
      const Window win{w[0], w[1], w[2], w[3]};
      const RegionSample sample = sample_region(make_region(region_name, p, q, a, b, rd), win, res);
      std::optional<RegionSample> overlay;
      if (!overlay_name.empty()) overlay = sample_region(make_region(overlay_name, p, q, a, b, rd), win, res);
      const RegionSample* ov = overlay ? &*overlay : nullptr;
      run.emit(format == "csv" ? region_csv(sample, ov) : region_svg(sample, ov, title));
      return 0;
    }

    if (bound_cmd->parsed()) {
      run.sub = bound_cmd;
      if (btime.given() != 1) throw UsageError("give exactly one of --s, --z, --t");
      const ExponentConfig cfg = bflags.config(btime.real_time());
      Json j;
      if (!btime.s.empty()) {
        const WeylParameter s(parse_complex(btime.s));
        if (method == "numeric") {
          const GaussianKernelForm k = kernel_of_gaussian_symbol(s, cfg.d());
          j = to_json(numeric_schur(log_kernel(k), log_weight(GaussianMeasure{cfg.alpha(), 1}),
                                    log_weight(GaussianMeasure{cfg.beta(), 1}), cfg,
                                    QuadratureSpec::trapezoid(24.0, 4801)));
        } else {
          j = to_json(closed_form_bound(s, cfg));
        }
      } else {
        if (method == "numeric") throw UsageError("--method numeric needs --s");
        const cplx z = btime.z.empty() ? cplx{parse_real(btime.t), 0.0} : parse_complex(btime.z);
        j = to_json(exp_zL_bound(ComplexTime(z), cfg));
        j["z"] = {z.real(), z.imag()};
      }
      j["config"] = config_json(cfg);
      run.emit(dump(j));
      return 0;
    }

    if (verify_cmd->parsed()) {
      run.sub = verify_cmd;
      const std::vector<CheckResult> checks = run_suite(suite, tol);
      Json list = Json::array();
      int failed = 0;
      for (const CheckResult& c : checks) {
        list.push_back({{"name", c.name}, {"measured", json_number(c.measured)},
                        {"tolerance", json_number(c.tolerance)}, {"pass", c.pass}});
        failed += c.pass ? 0 : 1;
        err << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  measured " << format_double(c.measured)
            << "  tol " << format_double(c.tolerance) << "\n";
      }
      Json j;
      j["suite"] = suite;
      j["checks"] = std::move(list);
      j["passed"] = static_cast<int>(checks.size()) - failed;
      j["failed"] = failed;
      run.emit(dump(j));
      return failed == 0 ? 0 : 1;
    }

    if (probe_cmd->parsed()) {
      run.sub = probe_cmd;
      if (ptime.given() + !nelson.empty() != 1) throw UsageError("give exactly one of --s, --z, --t, --nelson");
      std::optional<double> t = ptime.real_time();
      if (!nelson.empty()) {
        t = parse_real(nelson) * nelson_threshold(parse_real(pflags.p), parse_real(pflags.q));
      }
      const ExponentConfig cfg = pflags.config(t);
      std::optional<std::vector<double>> grid;
      if (!lambdas.empty()) {
        grid = parse_list(lambdas);
        for (double lam : *grid) {
          if (!(lam < TrialFunction::window_edge(cfg.p(), cfg.alpha()))) {
            throw UsageError("trial exponent " + format_double(lam) + " is outside the window lambda < " +
                             format_double(TrialFunction::window_edge(cfg.p(), cfg.alpha())));
          }
        }
      }
      TimeOrWeyl op = ComplexTime(1.0);
      if (!ptime.s.empty()) {
        op = WeylParameter(parse_complex(ptime.s));
      } else if (!ptime.z.empty()) {
        op = ComplexTime(parse_complex(ptime.z));
      } else {
        op = ComplexTime(*t);
      }
      Json j = to_json(ratio_probe(op, cfg, grid));
      if (t) j["t"] = *t;
      run.emit(dump(j));
      return 0;
    }

    if (kernel_cmd->parsed()) {
      run.sub = kernel_cmd;
      GaussianKernelForm k;
      if (!kin.empty()) {
        if (ktime.given() != 0) throw UsageError("--in excludes --s, --z, --t");
        k = kernel_from_json(parse_json(read_file(kin), kin));
      } else {
        if (ktime.given() != 1) throw UsageError("give exactly one of --in, --s, --z, --t");
        if (!ktime.s.empty()) {
          k = kernel_of_gaussian_symbol(WeylParameter(parse_complex(ktime.s)), kd);
        } else {
          const cplx z = ktime.z.empty() ? cplx{parse_real(ktime.t), 0.0} : parse_complex(ktime.z);
          k = mehler_kernel(ComplexTime(z), kd);
        }
      }
      Json j = to_json(k);
      if (!keval.empty()) {
        const std::vector<double> yx = parse_list(keval);
        if (yx.size() != 2 || k.dim != 1) throw UsageError("--eval takes y,x for a one-dimensional kernel");
        const cplx v = k(yx[0], yx[1]);
        j["value"] = {json_number(v.real()), json_number(v.imag())};
      }
      run.emit(dump(j));
      return 0;
    }

    if (semi_cmd->parsed()) {
      run.sub = semi_cmd;
      if (resolvent == !sz.empty()) throw UsageError("give exactly one of --z, --resolvent");
      const HermiteExpansion f = expansion_from_json(parse_json(read_file(sin_path), sin_path));
      const HermiteExpansion g = resolvent ? apply_resolvent(f) : apply_semigroup_spectral(parse_complex(sz), f);
      run.emit(dump(to_json(g)));
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("gaussweyl");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gaussweyl::cli
