#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"

namespace hopspan {

using Params = std::map<std::string, double>;

inline constexpr std::array<std::string_view, 10> kFamilies = {
    "disks", "balls_d", "boxes_d", "squares", "rects", "hv_segments", "seg_lines", "polylines", "nested_rects", "clique_point"};

namespace detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // 53 random bits in [0,1); the same on every platform, unlike
  // std::uniform_real_distribution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 eng_;
};

inline double param(const Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

inline int dim_param(const Params& p, int fallback) {
  const double d = param(p, "d", fallback);
  if (d < 1 || d > 8 || d != std::floor(d)) throw InputError("generator: d must be an integer in [1, 8]");
  return static_cast<int>(d);
}

}  // namespace detail

// Deterministic random instance. Planar families live in a square region
// of side sqrt(n) by default (parameter "region"); the d-dimensional fat
// families live in the unit cube with sizes scaled by n^(-1/d).
inline std::vector<GeometricObject> generate_instance(std::string_view family, std::size_t n, const Params& params,
                                                      std::uint64_t seed) {
  using detail::param;
  detail::Rng rng(seed);
  std::vector<GeometricObject> out;
  out.reserve(n);
  const double region = param(params, "region", std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1))));
  auto planar_pt = [&] { return std::array<double, 2>{rng.uniform(0, region), rng.uniform(0, region)}; };

  if (family == "disks") {
    const double r0 = param(params, "r_min", 0.5), r1 = param(params, "r_max", 2.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto [x, y] = planar_pt();
      out.push_back(GeometricObject::disk(x, y, rng.uniform(r0, r1)));
    }
  } else if (family == "balls_d" || family == "boxes_d") {
    const int d = detail::dim_param(params, 3);
    const double unit = std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), -1.0 / d);
    const double s0 = param(params, "size_min", 0.25) * unit, s1 = param(params, "size_max", 1.0) * unit;
    for (std::size_t i = 0; i < n; ++i) {
      Point c(static_cast<std::size_t>(d));
      for (auto& v : c) v = rng.uniform();
      if (family == "balls_d") {
        out.push_back(GeometricObject::ball(std::move(c), rng.uniform(s0, s1) / 2));
      } else {
        Point lo(c), hi(c);
        const double s = rng.uniform(s0, s1);
        for (int a = 0; a < d; ++a) {
          const double w = s * rng.uniform(0.5, 1.0);
          lo[a] -= w / 2;
          hi[a] += w / 2;
        }
        out.push_back(GeometricObject::box(std::move(lo), std::move(hi)));
      }
    }
  } else if (family == "squares") {
    const double unit = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
    const double s0 = param(params, "size_min", 0.5) * unit, s1 = param(params, "size_max", 2.0) * unit;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = rng.uniform(), y = rng.uniform(), s = rng.uniform(s0, s1);
      out.push_back(GeometricObject::axis_rect(x, y, x + s, y + s));
    }
  } else if (family == "rects") {
    const double w0 = param(params, "size_min", 0.2), w1 = param(params, "size_max", 3.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto [x, y] = planar_pt();
      const double w = rng.uniform(w0, w1), h = rng.uniform(w0, w1);
      out.push_back(GeometricObject::axis_rect(x, y, x + w, y + h));
    }
  } else if (family == "hv_segments") {
    const double l0 = param(params, "len_min", 0.5), l1 = param(params, "len_max", 4.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto [x, y] = planar_pt();
      const double len = rng.uniform(l0, l1);
      out.push_back(rng.uniform() < 0.5 ? GeometricObject::h_segment(y, x, x + len)
                                        : GeometricObject::v_segment(x, y, y + len));
    }
  } else if (family == "seg_lines") {
    const double l0 = param(params, "len_min", 0.5), l1 = param(params, "len_max", 4.0);
    const double frac = param(params, "line_fraction", 0.25);
    for (std::size_t i = 0; i < n; ++i) {
      auto [x, y] = planar_pt();
      if (rng.uniform() < frac) {
        out.push_back(GeometricObject::v_line(x));
      } else {
        out.push_back(GeometricObject::h_segment(y, x, x + rng.uniform(l0, l1)));
      }
    }
  } else if (family == "polylines") {
    const auto verts = static_cast<std::size_t>(std::max(1.0, param(params, "vertices", 4)));
    const double step = param(params, "step", 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto [x, y] = planar_pt();
      std::vector<Point> vs{{x, y}};
      for (std::size_t j = 1; j < verts; ++j) {
        const double a = rng.uniform(0, 2 * std::numbers::pi), len = rng.uniform(0.2, 1.0) * step;
        x += len * std::cos(a);
        y += len * std::sin(a);
        vs.push_back({x, y});
      }
      out.push_back(GeometricObject::polyline(std::move(vs)));
    }
  } else if (family == "nested_rects") {
    const double p_nest = param(params, "nest_probability", 0.5);
    std::vector<AxisBox> boxes;
    for (std::size_t i = 0; i < n; ++i) {
      double x0, y0, x1, y1;
      if (!boxes.empty() && rng.uniform() < p_nest) {
        const auto& par = boxes[rng.below(boxes.size())];
        const double w = (par.hi[0] - par.lo[0]) * rng.uniform(0.3, 0.9);
        const double h = (par.hi[1] - par.lo[1]) * rng.uniform(0.3, 0.9);
        x0 = par.lo[0] + rng.uniform() * (par.hi[0] - par.lo[0] - w);
        y0 = par.lo[1] + rng.uniform() * (par.hi[1] - par.lo[1] - h);
        x1 = x0 + w;
        y1 = y0 + h;
      } else {
        auto [x, y] = planar_pt();
        x0 = x;
        y0 = y;
        x1 = x + rng.uniform(0.5, 3.0);
        y1 = y + rng.uniform(0.5, 3.0);
      }
      out.push_back(GeometricObject::axis_rect(x0, y0, x1, y1));
      boxes.push_back(out.back().bounds());
    }
  } else if (family == "clique_point") {
    // Every disk keeps (0.5, 0.5) at distance at most 0.9 r from its center.
    for (std::size_t i = 0; i < n; ++i) {
      const double r = rng.uniform(0.05, 0.25);
      const double a = rng.uniform(0, 2 * std::numbers::pi), rho = 0.9 * r * rng.uniform();
      out.push_back(GeometricObject::disk(0.5 + rho * std::cos(a), 0.5 + rho * std::sin(a), r));
    }
  } else {
    throw InputError("unknown instance family: " + std::string(family));
  }
  return out;
}

}  // namespace hopspan
