#include <type_traits>

#include "gaussweyl/errors.hpp"
#include "gaussweyl/plane_map.hpp"

namespace gaussweyl {

bool region_contains(const Region& region, cplx point) {
  return std::visit(
      [point](const auto& r) -> bool {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, region::Epperson>) {
          return in_epperson(point, r.p);
        } else if constexpr (std::is_same_v<R, region::Sector>) {
          return in_sector(point, r.theta);
        } else if constexpr (std::is_same_v<R, region::Rp>) {
          return in_rp(point, r.p);
        } else if constexpr (std::is_same_v<R, region::TheoremMain>) {
          if (!(point.real() > 0.0)) return false;
          return theorem_main_feasible(WeylParameter(point), r.cfg);
        } else {
          return in_epq(point, r.p, r.q);
        }
      },
      region);
}

double RegionSample::member_fraction() const {
  if (points.empty()) return 0.0;
  std::size_t n = 0;
  for (const auto& pt : points) n += pt.member ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(points.size());
}

double grid_coordinate(double lo, double hi, int k, int n) {
  const double a = static_cast<double>(n - 1 - k);
  const double b = static_cast<double>(k);
  return (lo * a + hi * b) / static_cast<double>(n - 1);
}

namespace {

RegionSample empty_sample(const Region& region, const Window& window, int resolution) {
  if (resolution < 2) throw DomainError("region sampling needs resolution >= 2");
  if (!(window.x1 > window.x0) || !(window.y1 > window.y0)) {
    throw DomainError("region sampling needs a window of positive area");
  }
  // Surface argument errors here rather than inside a parallel loop.
  region_contains(region, {window.x0, window.y0});
  RegionSample out;
  out.window = window;
  out.resolution = resolution;
  out.points.resize(static_cast<std::size_t>(resolution) * resolution);
  return out;
}

RegionPoint sample_point(const Region& region, const Window& w, int res, std::size_t idx) {
  const int i = static_cast<int>(idx % res);
  const int j = static_cast<int>(idx / res);
  const double re = grid_coordinate(w.x0, w.x1, i, res);
  const double im = grid_coordinate(w.y0, w.y1, j, res);
  return {re, im, region_contains(region, {re, im})};
}

}  // namespace

RegionSample sample_region(const Region& region, const Window& window, int resolution) {
  RegionSample out = empty_sample(region, window, resolution);
  const auto n = static_cast<std::ptrdiff_t>(out.points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    out.points[k] = sample_point(region, window, resolution, static_cast<std::size_t>(k));
  }
  return out;
}

namespace serial {

RegionSample sample_region(const Region& region, const Window& window, int resolution) {
  RegionSample out = empty_sample(region, window, resolution);
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    out.points[k] = sample_point(region, window, resolution, k);
  }
  return out;
}

}  // namespace serial

}  // namespace gaussweyl
