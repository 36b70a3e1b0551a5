#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "io.hpp"

namespace hopspan {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0 ? 0.0 : v);
  return buf;
}

// Finite part of the bounding box; lines contribute only their x.
inline std::optional<AxisBox> drawing_bounds(std::span<const GeometricObject> objects) {
  if (objects.empty()) return std::nullopt;
  AxisBox b{{0, 0}, {0, 0}};
  for (int a = 0; a < 2; ++a) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& u : objects) {
      if (u.kind() == Kind::v_line && a == 1) continue;
      lo = std::min(lo, u.lo()[a]);
      hi = std::max(hi, u.hi()[a]);
    }
    if (lo > hi) lo = hi = 0;
    b.lo[a] = lo;
    b.hi[a] = hi;
  }
  return b;
}

inline Point representative(const GeometricObject& u, const AxisBox& view) {
  switch (u.shape()) {
    case Shape::ball: return u.center();
    case Shape::line: return {u.line_x(), (view.lo[1] + view.hi[1]) / 2};
    case Shape::polyline: return u.vertices().front();
    case Shape::union_set: return representative(u.members().front(), view);
    case Shape::box: break;
  }
  return {(u.lo()[0] + u.hi()[0]) / 2, (u.lo()[1] + u.hi()[1]) / 2};
}

}  // namespace detail

// Objects as outlines, spanner edges as segments between representative
// points (ball centers, box centers, first polyline vertex). The y axis is
// flipped so the picture has the usual orientation.
inline std::string render_svg(const Instance& inst, const Spanner& s) {
  if (inst.dimension != 2) throw InputError("render_svg: only planar instances can be drawn");
  using detail::num;
  constexpr double kSize = 800;
  AxisBox view{{0, 0}, {1, 1}};
  if (auto b = detail::drawing_bounds(inst.objects)) view = *b;
  const double ext = std::max(view.max_extent(), 1e-9);
  const double pad = 0.05 * ext;
  view.lo[0] -= pad;
  view.lo[1] -= pad;
  view.hi[0] = view.lo[0] + ext + 2 * pad;
  view.hi[1] = view.lo[1] + ext + 2 * pad;
  const double scale = kSize / (ext + 2 * pad);
  auto X = [&](double x) { return num((x - view.lo[0]) * scale); };
  auto Y = [&](double y) { return num((view.hi[1] - y) * scale); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" + num(kSize) +
         "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n";
  out += "<g fill=\"none\" stroke=\"#34495e\" stroke-width=\"1\">\n";
  auto draw = [&](auto&& self, const GeometricObject& u) -> void {
    switch (u.shape()) {
      case Shape::ball:
        out += "<circle cx=\"" + X(u.center()[0]) + "\" cy=\"" + Y(u.center()[1]) + "\" r=\"" +
               num(u.radius() * scale) + "\"/>\n";
        break;
      case Shape::box:
        if (u.lo()[0] == u.hi()[0] || u.lo()[1] == u.hi()[1]) {
          out += "<line x1=\"" + X(u.lo()[0]) + "\" y1=\"" + Y(u.lo()[1]) + "\" x2=\"" + X(u.hi()[0]) + "\" y2=\"" +
                 Y(u.hi()[1]) + "\"/>\n";
        } else {
          out += "<rect x=\"" + X(u.lo()[0]) + "\" y=\"" + Y(u.hi()[1]) + "\" width=\"" +
                 num((u.hi()[0] - u.lo()[0]) * scale) + "\" height=\"" + num((u.hi()[1] - u.lo()[1]) * scale) +
                 "\"/>\n";
        }
        break;
      case Shape::line:
        out += "<line x1=\"" + X(u.line_x()) + "\" y1=\"0\" x2=\"" + X(u.line_x()) + "\" y2=\"" + num(kSize) +
               "\"/>\n";
        break;
      case Shape::polyline: {
        out += "<polyline points=\"";
        bool first = true;
        for (const auto& v : u.vertices()) {
          if (!first) out += ' ';
          first = false;
          out += X(v[0]) + "," + Y(v[1]);
        }
        out += "\"/>\n";
        break;
      }
      case Shape::union_set:
        for (const auto& m : u.members()) self(self, m);
        break;
    }
  };
  for (const auto& u : inst.objects) draw(draw, u);
  out += "</g>\n<g stroke=\"#c0392b\" stroke-width=\"1.5\">\n";
  for (auto [a, b] : s.edges) {
    if (a >= inst.objects.size() || b >= inst.objects.size())
      throw InputError("render_svg: spanner edge refers to a missing object");
    const auto p = detail::representative(inst.objects[a], view), q = detail::representative(inst.objects[b], view);
    out += "<line x1=\"" + X(p[0]) + "\" y1=\"" + Y(p[1]) + "\" x2=\"" + X(q[0]) + "\" y2=\"" + Y(q[1]) + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

inline void save_svg(const Instance& inst, const Spanner& s, const std::string& path) {
  detail::write_text_file(path, render_svg(inst, s));
}

}  // namespace hopspan
