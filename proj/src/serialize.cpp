#include "gaussweyl/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "gaussweyl/errors.hpp"

namespace gaussweyl {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

void check_same_grid(const RegionSample& a, const RegionSample& b) {
  const Window& u = a.window;
  const Window& v = b.window;
  if (a.resolution != b.resolution || u.x0 != v.x0 || u.x1 != v.x1 || u.y0 != v.y0 ||
      u.y1 != v.y1) {
    throw DomainError("overlay must be sampled on the same grid as the region");
  }
}

}  // namespace

std::string region_csv(const RegionSample& sample, const RegionSample* overlay) {
  if (overlay) check_same_grid(sample, *overlay);
  std::string out = overlay ? "re,im,member,overlay\n" : "re,im,member\n";
  for (std::size_t k = 0; k < sample.points.size(); ++k) {
    const RegionPoint& pt = sample.points[k];
    out += format_double(pt.re);
    out += ',';
    out += format_double(pt.im);
    out += pt.member ? ",1" : ",0";
    if (overlay) out += overlay->points[k].member ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

std::string region_svg(const RegionSample& sample, const RegionSample* overlay,
                       const std::string& title) {
  if (overlay) check_same_grid(sample, *overlay);
  const int res = sample.resolution;
  const int cell = std::max(1, 600 / res);
  const int size = cell * res;
  const int header = title.empty() ? 0 : 24;

  auto colour = [&](int i, int j) -> const char* {
    const bool in = sample.at(i, j).member;
    const bool ov = overlay && overlay->at(i, j).member;
    if (in && ov) return "#ff9f1c";
    if (in) return "#d62828";
    if (ov) return "#1d4ed8";
    return "#f1f1f1";
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
      << size + header << "\" viewBox=\"0 0 " << size << ' ' << size + header
      << "\" shape-rendering=\"crispEdges\">\n";
  if (!title.empty()) {
    svg << "<text x=\"4\" y=\"17\" font-family=\"sans-serif\" font-size=\"14\">" << title
        << "</text>\n";
  }
  // Row j holds im = y_j; the top of the picture is y1.
  for (int j = 0; j < res; ++j) {
    const int top = header + (res - 1 - j) * cell;
    int start = 0;
    for (int i = 1; i <= res; ++i) {
      if (i < res && colour(i, j) == colour(start, j)) continue;
      svg << "<rect x=\"" << start * cell << "\" y=\"" << top << "\" width=\""
          << (i - start) * cell << "\" height=\"" << cell << "\" fill=\"" << colour(start, j)
          << "\"/>\n";
      start = i;
    }
  }
  const Window& w = sample.window;
  auto px = [&](double re) { return (re - w.x0) / (w.x1 - w.x0) * size; };
  auto py = [&](double im) { return header + (w.y1 - im) / (w.y1 - w.y0) * size; };
  if (w.x0 <= 0.0 && w.x1 >= 0.0) {
    svg << "<line x1=\"" << format_double(px(0.0)) << "\" y1=\"" << header << "\" x2=\""
        << format_double(px(0.0)) << "\" y2=\"" << size + header
        << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  }
  if (w.y0 <= 0.0 && w.y1 >= 0.0) {
    svg << "<line x1=\"0\" y1=\"" << format_double(py(0.0)) << "\" x2=\"" << size << "\" y2=\""
        << format_double(py(0.0)) << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

Json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json to_json(const GaussianKernelForm& k) {
  Json j;
  j["prefactor_re"] = json_number(k.prefactor.real());
  j["prefactor_im"] = json_number(k.prefactor.imag());
  j["axx_re"] = json_number(k.coef_xx.real());
  j["axx_im"] = json_number(k.coef_xx.imag());
  j["ayy_re"] = json_number(k.coef_yy.real());
  j["ayy_im"] = json_number(k.coef_yy.imag());
  j["axy_re"] = json_number(k.coef_xy.real());
  j["axy_im"] = json_number(k.coef_xy.imag());
  j["dim"] = k.dim;
  return j;
}

namespace {

double read_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw DomainError(std::string("missing numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

}  // namespace

GaussianKernelForm kernel_from_json(const Json& j) {
  GaussianKernelForm k;
  k.prefactor = {read_number(j, "prefactor_re"), read_number(j, "prefactor_im")};
  k.coef_xx = {read_number(j, "axx_re"), read_number(j, "axx_im")};
  k.coef_yy = {read_number(j, "ayy_re"), read_number(j, "ayy_im")};
  k.coef_xy = {read_number(j, "axy_re"), read_number(j, "axy_im")};
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw DomainError("missing integer field 'dim'");
  }
  k.dim = j["dim"].get<int>();
  if (k.dim < 1) throw DomainError("kernel dimension must be >= 1");
  return k;
}

Json to_json(const HermiteExpansion& e) {
  Json coeffs = Json::array();
  for (const cplx& c : e.coeffs()) coeffs.push_back({json_number(c.real()), json_number(c.imag())});
  Json j;
  j["dim"] = e.dim();
  j["N"] = e.order();
  j["coeffs"] = std::move(coeffs);
  return j;
}

HermiteExpansion expansion_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("N") || !j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw DomainError("expansion JSON needs dim, N and coeffs");
  }
  std::vector<cplx> coeffs;
  for (const Json& c : j["coeffs"]) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      throw DomainError("coefficients must be [re, im] pairs");
    }
    coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return HermiteExpansion(j["dim"].get<int>(), j["N"].get<int>(), std::move(coeffs));
}

Json to_json(const SchurReport& r) {
  Json j;
  j["feasible"] = r.feasible;
  j["C1"] = json_number(r.C1);
  j["C2"] = json_number(r.C2);
  j["bound"] = json_number(r.bound);
  j["r"] = json_number(r.r);
  j["theta"] = json_number(r.interpolation_theta);
  j["provenance"] = r.provenance == Provenance::ClosedForm ? "ClosedForm" : "Numeric";
  if (r.grid) {
    j["grid"] = {{"sup_window", r.grid->sup_window},
                 {"sup_points", r.grid->sup_points},
                 {"int_window", r.grid->int_window},
                 {"int_nodes", r.grid->int_nodes}};
  } else {
    j["grid"] = Json::object();
  }
  return j;
}

Json to_json(const ExpBoundReport& r) {
  Json j = to_json(r.schur);
  j["s"] = {json_number(r.s.real()), json_number(r.s.imag())};
  j["feasible"] = r.feasible;
  // C1, C2 belong to the symbol exp(-s(P^2+Q^2)); "bound" is for exp(-zL).
  j["bound_symbol"] = j["bound"];
  j["bound"] = json_number(r.via_weyl);
  j["bound_direct"] = json_number(r.direct);
  j["bound_via_weyl"] = json_number(r.via_weyl);
  j["relative_gap"] = json_number(r.relative_gap);
  return j;
}

Json to_json(const RatioReport& r) {
  Json j;
  j["config"] = {{"p", r.p}, {"q", r.q}, {"alpha", r.alpha}, {"beta", r.beta}, {"d", r.d}};
  j["s"] = {json_number(r.s.real()), json_number(r.s.imag())};
  if (r.z) j["z"] = {json_number(r.z->real()), json_number(r.z->imag())};
  Json lam = Json::array();
  for (double x : r.lambda_grid) lam.push_back(json_number(x));
  Json ratios = Json::array();
  for (double x : r.ratios) ratios.push_back(json_number(x));
  j["lambda_grid"] = std::move(lam);
  j["ratios"] = std::move(ratios);
  j["max_ratio"] = json_number(r.max_ratio);
  j["argmax_lambda"] = json_number(r.argmax_lambda);
  j["bound"] = json_number(r.bound);
  j["feasible"] = r.feasible;
  j["ratio_at_zero"] = json_number(r.ratio_at_zero);
  j["ratio_at_edge"] = json_number(r.ratio_at_edge);
  j["blowup"] = r.blowup;
  return j;
}

}  // namespace gaussweyl
