#pragma once

// Geometric objects, closed-set intersection predicates, quadtree cells and
// the shifting machinery used by the fat-object constructions.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hopspan {

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StructuralError : std::logic_error {
  using std::logic_error::logic_error;
};

using Point = std::vector<double>;

enum class Kind {
  disk,
  ball_d,
  box_d,
  axis_rect,
  h_segment,
  v_segment,
  v_line,
  polyline,
  union_object,
};

// Geometric category that decides which predicate applies.
enum class Shape { ball, box, line, polyline, union_set };

inline std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::disk: return "disk";
    case Kind::ball_d: return "ball_d";
    case Kind::box_d: return "box_d";
    case Kind::axis_rect: return "axis_rect";
    case Kind::h_segment: return "h_segment";
    case Kind::v_segment: return "v_segment";
    case Kind::v_line: return "v_line";
    case Kind::polyline: return "polyline";
    case Kind::union_object: return "union_object";
  }
  return "?";
}

inline std::optional<Kind> kind_from_name(std::string_view s) {
  for (Kind k : {Kind::disk, Kind::ball_d, Kind::box_d, Kind::axis_rect, Kind::h_segment,
                 Kind::v_segment, Kind::v_line, Kind::polyline, Kind::union_object}) {
    if (kind_name(k) == s) return k;
  }
  return std::nullopt;
}

struct AxisBox {
  Point lo, hi;

  int dimension() const noexcept { return static_cast<int>(lo.size()); }
  double extent(int axis) const { return hi[axis] - lo[axis]; }
  double max_extent() const {
    double e = 0;
    for (int i = 0; i < dimension(); ++i) e = std::max(e, extent(i));
    return e;
  }
  bool contains(const Point& p) const {
    for (int i = 0; i < dimension(); ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }
  bool overlaps(const AxisBox& o) const {
    for (int i = 0; i < dimension(); ++i)
      if (lo[i] > o.hi[i] || o.lo[i] > hi[i]) return false;
    return true;
  }
  void merge(const AxisBox& o) {
    for (int i = 0; i < dimension(); ++i) {
      lo[i] = std::min(lo[i], o.lo[i]);
      hi[i] = std::max(hi[i], o.hi[i]);
    }
  }
};

class GeometricObject {
 public:
  static GeometricObject disk(double cx, double cy, double radius) {
    auto o = ball({cx, cy}, radius);
    o.kind_ = Kind::disk;
    return o;
  }

  static GeometricObject ball(Point center, double radius) {
    require_finite(center, "ball center");
    if (!(radius > 0) || !std::isfinite(radius)) throw InputError("ball radius must be positive");
    if (center.empty()) throw InputError("ball needs at least one coordinate");
    GeometricObject o(Kind::ball_d, Shape::ball, static_cast<int>(center.size()));
    o.radius_ = radius;
    o.bounds_.lo = center;
    o.bounds_.hi = center;
    for (auto& v : o.bounds_.lo) v -= radius;
    for (auto& v : o.bounds_.hi) v += radius;
    o.center_ = std::move(center);
    return o;
  }

  static GeometricObject box(Point lo, Point hi) {
    require_finite(lo, "box lo");
    require_finite(hi, "box hi");
    if (lo.size() != hi.size() || lo.empty()) throw InputError("box corners must share a dimension");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (lo[i] > hi[i]) throw InputError("box requires lo <= hi on every axis");
    GeometricObject o(Kind::box_d, Shape::box, static_cast<int>(lo.size()));
    o.bounds_ = {std::move(lo), std::move(hi)};
    return o;
  }

  static GeometricObject axis_rect(double x0, double y0, double x1, double y1) {
    auto o = box({x0, y0}, {x1, y1});
    o.kind_ = Kind::axis_rect;
    return o;
  }

  static GeometricObject h_segment(double y, double x0, double x1) {
    auto o = box({x0, y}, {x1, y});
    o.kind_ = Kind::h_segment;
    return o;
  }

  static GeometricObject v_segment(double x, double y0, double y1) {
    auto o = box({x, y0}, {x, y1});
    o.kind_ = Kind::v_segment;
    return o;
  }

  static GeometricObject v_line(double x) {
    if (!std::isfinite(x)) throw InputError("line coordinate must be finite");
    GeometricObject o(Kind::v_line, Shape::line, 2);
    const double inf = std::numeric_limits<double>::infinity();
    o.bounds_ = {{x, -inf}, {x, inf}};
    return o;
  }

  static GeometricObject polyline(std::vector<Point> vertices) {
    if (vertices.empty()) throw InputError("polyline needs at least one vertex");
    for (const auto& v : vertices) {
      if (v.size() != 2) throw InputError("polyline vertices must be planar");
      require_finite(v, "polyline vertex");
    }
    GeometricObject o(Kind::polyline, Shape::polyline, 2);
    o.bounds_ = {vertices.front(), vertices.front()};
    for (const auto& v : vertices) o.bounds_.merge({v, v});
    o.vertices_ = std::move(vertices);
    return o;
  }

  // Nested unions are flattened; the result always lists base objects.
  static GeometricObject union_of(std::vector<GeometricObject> members) {
    if (members.empty()) throw InputError("union_object needs at least one member");
    const int d = members.front().dimension();
    GeometricObject o(Kind::union_object, Shape::union_set, d);
    for (auto& m : members) {
      if (m.dimension() != d) throw InputError("union members must share a dimension");
      if (m.shape_ == Shape::union_set) {
        for (auto& mm : m.members_) o.members_.push_back(std::move(mm));
      } else {
        o.members_.push_back(std::move(m));
      }
    }
    o.bounds_ = o.members_.front().bounds_;
    for (const auto& m : o.members_) o.bounds_.merge(m.bounds_);
    return o;
  }

  Kind kind() const noexcept { return kind_; }
  Shape shape() const noexcept { return shape_; }
  int dimension() const noexcept { return dim_; }

  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  const Point& lo() const { return bounds_.lo; }
  const Point& hi() const { return bounds_.hi; }
  double line_x() const { return bounds_.lo[0]; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<GeometricObject>& members() const { return members_; }
  const AxisBox& bounds() const { return bounds_; }

 private:
  GeometricObject(Kind k, Shape s, int d) : kind_(k), shape_(s), dim_(d) {}

  static void require_finite(const Point& p, const char* what) {
    for (double v : p)
      if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
  }

  Kind kind_;
  Shape shape_;
  int dim_;
  Point center_;
  double radius_ = 0;
  std::vector<Point> vertices_;
  std::vector<GeometricObject> members_;
  AxisBox bounds_;
};

namespace detail {

inline double sq(double v) { return v * v; }

struct Vec2 {
  double x, y;
};

inline Vec2 vec2(const Point& p) { return {p[0], p[1]}; }

inline double cross(Vec2 o, Vec2 a, Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline int sign(double v) { return (v > 0) - (v < 0); }

// r is collinear with pq; is it inside the bounding box of pq?
inline bool within(Vec2 p, Vec2 q, Vec2 r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
         r.y <= std::max(p.y, q.y);
}

inline bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const int o1 = sign(cross(p1, p2, q1));
  const int o2 = sign(cross(p1, p2, q2));
  const int o3 = sign(cross(q1, q2, p1));
  const int o4 = sign(cross(q1, q2, p2));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && within(p1, p2, q1)) return true;
  if (o2 == 0 && within(p1, p2, q2)) return true;
  if (o3 == 0 && within(q1, q2, p1)) return true;
  if (o4 == 0 && within(q1, q2, p2)) return true;
  return false;
}

inline double dist2_point_segment(Vec2 p, Vec2 a, Vec2 b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0;
  if (len2 > 0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return sq(p.x - (a.x + t * dx)) + sq(p.y - (a.y + t * dy));
}

inline double dist2_point_box(const Point& p, const AxisBox& b) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < b.lo[i]) s += sq(b.lo[i] - p[i]);
    else if (p[i] > b.hi[i]) s += sq(p[i] - b.hi[i]);
  }
  return s;
}

inline double maxdist2_point_box(const Point& p, const AxisBox& b) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    s += sq(std::max(std::abs(p[i] - b.lo[i]), std::abs(p[i] - b.hi[i])));
  return s;
}

inline bool point_in_box(Vec2 p, const AxisBox& b) {
  return b.lo[0] <= p.x && p.x <= b.hi[0] && b.lo[1] <= p.y && p.y <= b.hi[1];
}

inline bool segment_meets_box(Vec2 a, Vec2 b, const AxisBox& box) {
  if (point_in_box(a, box) || point_in_box(b, box)) return true;
  const Vec2 c00{box.lo[0], box.lo[1]}, c10{box.hi[0], box.lo[1]};
  const Vec2 c11{box.hi[0], box.hi[1]}, c01{box.lo[0], box.hi[1]};
  return segments_intersect(a, b, c00, c10) || segments_intersect(a, b, c10, c11) ||
         segments_intersect(a, b, c11, c01) || segments_intersect(a, b, c01, c00);
}

template <typename F>
void for_each_segment(const GeometricObject& poly, F&& f) {
  const auto& v = poly.vertices();
  if (v.size() == 1) {
    f(vec2(v[0]), vec2(v[0]));
    return;
  }
  for (std::size_t i = 0; i + 1 < v.size(); ++i) f(vec2(v[i]), vec2(v[i + 1]));
}

inline int shape_rank(Shape s) { return static_cast<int>(s); }

inline bool intersects_base(const GeometricObject& a, const GeometricObject& b) {
  if (shape_rank(a.shape()) > shape_rank(b.shape())) return intersects_base(b, a);
  if (!a.bounds().overlaps(b.bounds())) return false;
  switch (a.shape()) {
    case Shape::ball:
      switch (b.shape()) {
        case Shape::ball: {
          double s = 0;
          for (int i = 0; i < a.dimension(); ++i) s += sq(a.center()[i] - b.center()[i]);
          return s <= sq(a.radius() + b.radius());
        }
        case Shape::box: return dist2_point_box(a.center(), b.bounds()) <= sq(a.radius());
        case Shape::line: return std::abs(a.center()[0] - b.line_x()) <= a.radius();
        case Shape::polyline: {
          bool hit = false;
          const Vec2 c = vec2(a.center());
          const double r2 = sq(a.radius());
          for_each_segment(b, [&](Vec2 p, Vec2 q) { hit = hit || dist2_point_segment(c, p, q) <= r2; });
          return hit;
        }
        default: break;
      }
      break;
    case Shape::box:
      switch (b.shape()) {
        case Shape::box: return true;  // bounding boxes overlap
        case Shape::line: return a.lo()[0] <= b.line_x() && b.line_x() <= a.hi()[0];
        case Shape::polyline: {
          bool hit = false;
          for_each_segment(b, [&](Vec2 p, Vec2 q) { hit = hit || segment_meets_box(p, q, a.bounds()); });
          return hit;
        }
        default: break;
      }
      break;
    case Shape::line:
      switch (b.shape()) {
        case Shape::line: return a.line_x() == b.line_x();
        case Shape::polyline: return b.lo()[0] <= a.line_x() && a.line_x() <= b.hi()[0];
        default: break;
      }
      break;
    case Shape::polyline: {
      bool hit = false;
      for_each_segment(a, [&](Vec2 p1, Vec2 p2) {
        if (hit) return;
        for_each_segment(b, [&](Vec2 q1, Vec2 q2) { hit = hit || segments_intersect(p1, p2, q1, q2); });
      });
      return hit;
    }
    default: break;
  }
  return false;
}

}  // namespace detail

// Closed-set intersection test.
inline bool intersects(const GeometricObject& a, const GeometricObject& b) {
  if (a.dimension() != b.dimension()) throw InputError("intersects: dimension mismatch");
  if (!a.bounds().overlaps(b.bounds())) return false;
  if (a.shape() == Shape::union_set) {
    for (const auto& m : a.members())
      if (intersects(m, b)) return true;
    return false;
  }
  if (b.shape() == Shape::union_set) {
    for (const auto& m : b.members())
      if (detail::intersects_base(a, m)) return true;
    return false;
  }
  return detail::intersects_base(a, b);
}

inline bool contains_point(const GeometricObject& u, const Point& p) {
  if (static_cast<int>(p.size()) != u.dimension()) throw InputError("contains_point: dimension mismatch");
  if (!u.bounds().contains(p)) return false;
  switch (u.shape()) {
    case Shape::ball: {
      double s = 0;
      for (int i = 0; i < u.dimension(); ++i) s += detail::sq(p[i] - u.center()[i]);
      return s <= detail::sq(u.radius());
    }
    case Shape::box: return true;
    case Shape::line: return true;
    case Shape::polyline: {
      bool hit = false;
      const detail::Vec2 q = detail::vec2(p);
      detail::for_each_segment(u, [&](detail::Vec2 a, detail::Vec2 b) {
        hit = hit || (detail::cross(a, b, q) == 0 && detail::within(a, b, q));
      });
      return hit;
    }
    case Shape::union_set:
      for (const auto& m : u.members())
        if (contains_point(m, p)) return true;
      return false;
  }
  return false;
}

// Edge length of the smallest enclosing axis-aligned hypercube.
inline double side_length(const GeometricObject& u) { return u.bounds().max_extent(); }

// Number of objects containing p.
inline std::size_t depth(const Point& p, std::span<const GeometricObject> objects) {
  std::size_t c = 0;
  for (const auto& u : objects) c += contains_point(u, p) ? 1 : 0;
  return c;
}

// Lexicographically smallest point of u.
inline Point leftmost_point(const GeometricObject& u) {
  switch (u.shape()) {
    case Shape::ball: {
      Point p = u.center();
      p[0] -= u.radius();
      return p;
    }
    case Shape::box: return u.lo();
    case Shape::line: throw InputError("a vertical line has no leftmost point");
    case Shape::polyline: return *std::min_element(u.vertices().begin(), u.vertices().end());
    case Shape::union_set: {
      Point best = leftmost_point(u.members().front());
      for (const auto& m : u.members()) best = std::min(best, leftmost_point(m));
      return best;
    }
  }
  return {};
}

// Translation by the same offset on every axis.
inline GeometricObject translate(const GeometricObject& u, double offset) {
  auto shifted = [offset](Point p) {
    for (auto& v : p) v += offset;
    return p;
  };
  switch (u.kind()) {
    case Kind::disk:
      return GeometricObject::disk(u.center()[0] + offset, u.center()[1] + offset, u.radius());
    case Kind::ball_d: return GeometricObject::ball(shifted(u.center()), u.radius());
    case Kind::box_d: return GeometricObject::box(shifted(u.lo()), shifted(u.hi()));
    case Kind::axis_rect:
      return GeometricObject::axis_rect(u.lo()[0] + offset, u.lo()[1] + offset, u.hi()[0] + offset,
                                        u.hi()[1] + offset);
    case Kind::h_segment:
      return GeometricObject::h_segment(u.lo()[1] + offset, u.lo()[0] + offset, u.hi()[0] + offset);
    case Kind::v_segment:
      return GeometricObject::v_segment(u.lo()[0] + offset, u.lo()[1] + offset, u.hi()[1] + offset);
    case Kind::v_line: return GeometricObject::v_line(u.line_x() + offset);
    case Kind::polyline: {
      std::vector<Point> vs;
      vs.reserve(u.vertices().size());
      for (const auto& v : u.vertices()) vs.push_back(shifted(v));
      return GeometricObject::polyline(std::move(vs));
    }
    case Kind::union_object: {
      std::vector<GeometricObject> ms;
      ms.reserve(u.members().size());
      for (const auto& m : u.members()) ms.push_back(translate(m, offset));
      return GeometricObject::union_of(std::move(ms));
    }
  }
  return u;
}

// u + tau^(j) with tau^(j) = (j/d_star, ..., j/d_star).
inline GeometricObject shift_object(const GeometricObject& u, int j, int d_star) {
  if (d_star % 2 == 0 || d_star <= u.dimension())
    throw InputError("shift_object: d_star must be odd and larger than the dimension");
  if (j < 0 || j >= d_star) throw InputError("shift_object: shift index out of range");
  if (j == 0) return u;
  return translate(u, static_cast<double>(j) / d_star);
}

// ---------------------------------------------------------------------------
// Quadtree cells

// Levels may be negative: level -1 is the cell [0,2)^d. Indices are exact
// in double precision up to kMaxCellLevel for coordinates below 2.
inline constexpr int kMinCellLevel = -60;
inline constexpr int kMaxCellLevel = 52;

struct QuadtreeCell {
  int level = 0;
  std::vector<std::int64_t> index;

  int dimension() const noexcept { return static_cast<int>(index.size()); }
  double side() const { return std::ldexp(1.0, -level); }
  double lo(int axis) const { return std::ldexp(static_cast<double>(index[axis]), -level); }
  double hi(int axis) const { return std::ldexp(static_cast<double>(index[axis] + 1), -level); }

  AxisBox box() const {
    AxisBox b{Point(index.size()), Point(index.size())};
    for (int i = 0; i < dimension(); ++i) {
      b.lo[i] = lo(i);
      b.hi[i] = hi(i);
    }
    return b;
  }

  static std::int64_t coord_index(double x, int level) {
    return static_cast<std::int64_t>(std::floor(std::ldexp(x, level)));
  }

  // Half-open membership.
  bool contains(const Point& p) const {
    for (int i = 0; i < dimension(); ++i)
      if (coord_index(p[i], level) != index[i]) return false;
    return true;
  }

  bool contains(const QuadtreeCell& c) const {
    if (c.level < level) return false;
    const int shift = c.level - level;
    for (int i = 0; i < dimension(); ++i)
      if ((c.index[i] >> shift) != index[i]) return false;
    return true;
  }

  bool disjoint(const QuadtreeCell& c) const { return !contains(c) && !c.contains(*this); }

  QuadtreeCell child(unsigned mask) const {
    QuadtreeCell c{level + 1, index};
    for (int i = 0; i < dimension(); ++i) c.index[i] = 2 * index[i] + ((mask >> i) & 1u);
    return c;
  }

  QuadtreeCell parent() const {
    QuadtreeCell c{level - 1, index};
    for (auto& v : c.index) v >>= 1;
    return c;
  }

  // Which child of this cell holds p (p must be inside).
  unsigned child_mask(const Point& p) const {
    unsigned m = 0;
    for (int i = 0; i < dimension(); ++i)
      if (coord_index(p[i], level + 1) & 1) m |= 1u << i;
    return m;
  }

  static QuadtreeCell containing(const Point& p, int level) {
    QuadtreeCell c{level, std::vector<std::int64_t>(p.size())};
    for (std::size_t i = 0; i < p.size(); ++i) c.index[i] = coord_index(p[i], level);
    return c;
  }

  friend bool operator==(const QuadtreeCell&, const QuadtreeCell&) = default;
};

// Smallest common ancestor of two cells.
inline QuadtreeCell common_ancestor(QuadtreeCell a, QuadtreeCell b) {
  while (a.level > b.level) a = a.parent();
  while (b.level > a.level) b = b.parent();
  while (!(a == b)) {
    a = a.parent();
    b = b.parent();
  }
  return a;
}

struct GeneralizedCell {
  QuadtreeCell outer;
  std::optional<QuadtreeCell> inner;

  bool contains(const Point& p) const { return outer.contains(p) && !(inner && inner->contains(p)); }
};

namespace detail {
inline bool box_in_cell_at(const AxisBox& b, int level) {
  for (int i = 0; i < b.dimension(); ++i)
    if (QuadtreeCell::coord_index(b.lo[i], level) != QuadtreeCell::coord_index(b.hi[i], level))
      return false;
  return true;
}
}  // namespace detail

// Smallest quadtree cell containing the closed box, or nothing when the box
// straddles a cell boundary at every level (e.g. it crosses a coordinate
// hyperplane through the origin). Containment is monotone in the level, so a
// binary search finds the deepest level.
inline std::optional<QuadtreeCell> smallest_containing_cell(const AxisBox& b) {
  for (int i = 0; i < b.dimension(); ++i)
    if (!std::isfinite(b.lo[i]) || !std::isfinite(b.hi[i])) return std::nullopt;
  if (!detail::box_in_cell_at(b, kMinCellLevel)) return std::nullopt;
  int good = kMinCellLevel, bad = kMaxCellLevel + 1;
  if (detail::box_in_cell_at(b, kMaxCellLevel)) good = kMaxCellLevel;
  else {
    while (bad - good > 1) {
      const int mid = good + (bad - good) / 2;
      if (detail::box_in_cell_at(b, mid)) good = mid;
      else bad = mid;
    }
  }
  return QuadtreeCell::containing(b.lo, good);
}

// C-alignment without the unit-cube domain restriction; used for shifted
// objects that live in [0,2)^d.
inline bool aligned_in_quadtree(const GeometricObject& u, double C) {
  const auto cell = smallest_containing_cell(u.bounds());
  return cell && cell->side() <= C * side_length(u);
}

inline bool inside_unit_cube(const AxisBox& b) {
  for (int i = 0; i < b.dimension(); ++i)
    if (!(b.lo[i] >= 0.0) || !(b.hi[i] < 1.0)) return false;
  return true;
}

inline bool is_aligned(const GeometricObject& u, double C) {
  if (!inside_unit_cube(u.bounds())) throw InputError("is_aligned: object must lie in [0,1)^d");
  return aligned_in_quadtree(u, C);
}

// Half-open classification of an object against a quadtree cell.
inline bool inside_cell(const GeometricObject& u, const QuadtreeCell& c) {
  const auto& b = u.bounds();
  for (int i = 0; i < c.dimension(); ++i) {
    if (QuadtreeCell::coord_index(b.lo[i], c.level) != c.index[i]) return false;
    if (QuadtreeCell::coord_index(b.hi[i], c.level) != c.index[i]) return false;
  }
  return true;
}

inline bool outside_cell(const GeometricObject& u, const QuadtreeCell& c) {
  const auto& b = u.bounds();
  for (int i = 0; i < c.dimension(); ++i)
    if (b.hi[i] < c.lo(i) || b.lo[i] >= c.hi(i)) return true;
  switch (u.shape()) {
    case Shape::ball: return detail::dist2_point_box(u.center(), c.box()) > detail::sq(u.radius());
    case Shape::union_set:
      for (const auto& m : u.members())
        if (!outside_cell(m, c)) return false;
      return true;
    default: return false;
  }
}

inline bool meets_cell_boundary(const GeometricObject& u, const QuadtreeCell& c) {
  return !inside_cell(u, c) && !outside_cell(u, c);
}

inline bool inside_cell(const GeometricObject& u, const GeneralizedCell& g) {
  return inside_cell(u, g.outer) && !(g.inner && !outside_cell(u, *g.inner));
}

// ---------------------------------------------------------------------------
// Rescaling into the unit cube

// x -> (x - offset) * scale, uniform on all axes.
struct AffineMap {
  Point offset;
  double scale = 1.0;

  bool identity() const {
    return scale == 1.0 && std::all_of(offset.begin(), offset.end(), [](double v) { return v == 0; });
  }
  Point apply(const Point& p) const {
    Point q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = (p[i] - offset[i]) * scale;
    return q;
  }
  Point invert(const Point& p) const {
    Point q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i] / scale + offset[i];
    return q;
  }
};

inline GeometricObject transform(const GeometricObject& u, const AffineMap& m) {
  if (m.identity()) return u;
  auto ax = [&](double v, int axis) { return (v - m.offset[axis]) * m.scale; };
  switch (u.kind()) {
    case Kind::disk: {
      const Point c = m.apply(u.center());
      return GeometricObject::disk(c[0], c[1], u.radius() * m.scale);
    }
    case Kind::ball_d: return GeometricObject::ball(m.apply(u.center()), u.radius() * m.scale);
    case Kind::box_d: return GeometricObject::box(m.apply(u.lo()), m.apply(u.hi()));
    case Kind::axis_rect:
      return GeometricObject::axis_rect(ax(u.lo()[0], 0), ax(u.lo()[1], 1), ax(u.hi()[0], 0), ax(u.hi()[1], 1));
    case Kind::h_segment:
      return GeometricObject::h_segment(ax(u.lo()[1], 1), ax(u.lo()[0], 0), ax(u.hi()[0], 0));
    case Kind::v_segment:
      return GeometricObject::v_segment(ax(u.lo()[0], 0), ax(u.lo()[1], 1), ax(u.hi()[1], 1));
    case Kind::v_line: return GeometricObject::v_line(ax(u.line_x(), 0));
    case Kind::polyline: {
      std::vector<Point> vs;
      for (const auto& v : u.vertices()) vs.push_back(m.apply(v));
      return GeometricObject::polyline(std::move(vs));
    }
    case Kind::union_object: {
      std::vector<GeometricObject> ms;
      for (const auto& x : u.members()) ms.push_back(transform(x, m));
      return GeometricObject::union_of(std::move(ms));
    }
  }
  return u;
}

// Maps the objects into [0,1)^d. Instances already inside the unit cube
// keep their coordinates (identity map) so no rounding is introduced.
inline AffineMap unit_cube_map(std::span<const GeometricObject> objects) {
  if (objects.empty()) return {};
  const int d = objects.front().dimension();
  AffineMap m{Point(d, 0.0), 1.0};
  AxisBox all = objects.front().bounds();
  for (const auto& u : objects) {
    if (u.dimension() != d) throw InputError("mixed dimensions in one instance");
    all.merge(u.bounds());
  }
  if (inside_unit_cube(all)) return m;
  const double extent = all.max_extent();
  if (!std::isfinite(extent)) throw InputError("unbounded objects cannot be rescaled");
  m.offset = all.lo;
  m.scale = extent > 0 ? 0.75 / extent : 1.0;
  return m;
}

}  // namespace hopspan
