#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graph.hpp"

namespace hopspan {

inline constexpr int kFormatVersion = 1;

struct Instance {
  int dimension = 2;
  std::vector<GeometricObject> objects;
};

using nlohmann::json;

namespace detail {

inline json object_to_json(const GeometricObject& u) {
  json j;
  j["kind"] = std::string(kind_name(u.kind()));
  switch (u.kind()) {
    case Kind::disk:
    case Kind::ball_d:
      j["center"] = u.center();
      j["radius"] = u.radius();
      break;
    case Kind::box_d:
    case Kind::axis_rect:
      j["lo"] = u.lo();
      j["hi"] = u.hi();
      break;
    case Kind::h_segment:
      j["y"] = u.lo()[1];
      j["x0"] = u.lo()[0];
      j["x1"] = u.hi()[0];
      break;
    case Kind::v_segment:
      j["x"] = u.lo()[0];
      j["y0"] = u.lo()[1];
      j["y1"] = u.hi()[1];
      break;
    case Kind::v_line: j["x"] = u.line_x(); break;
    case Kind::polyline: j["vertices"] = u.vertices(); break;
    case Kind::union_object: {
      json ms = json::array();
      for (const auto& m : u.members()) ms.push_back(object_to_json(m));
      j["members"] = std::move(ms);
      break;
    }
  }
  return j;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("object is missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad field '") + key + "': " + e.what());
  }
}

// Union members are inline objects or indices of earlier non-union objects.
inline GeometricObject object_from_json(const json& j, const std::vector<GeometricObject>& earlier) {
  if (!j.is_object()) throw InputError("each object must be a JSON object");
  const auto kind = kind_from_name(field<std::string>(j, "kind"));
  if (!kind) throw InputError("unknown object kind: " + j.at("kind").get<std::string>());
  switch (*kind) {
    case Kind::disk: {
      const auto c = field<Point>(j, "center");
      if (c.size() != 2) throw InputError("disk center must have two coordinates");
      return GeometricObject::disk(c[0], c[1], field<double>(j, "radius"));
    }
    case Kind::ball_d: return GeometricObject::ball(field<Point>(j, "center"), field<double>(j, "radius"));
    case Kind::box_d: return GeometricObject::box(field<Point>(j, "lo"), field<Point>(j, "hi"));
    case Kind::axis_rect: {
      const auto lo = field<Point>(j, "lo"), hi = field<Point>(j, "hi");
      if (lo.size() != 2 || hi.size() != 2) throw InputError("axis_rect corners must be planar");
      return GeometricObject::axis_rect(lo[0], lo[1], hi[0], hi[1]);
    }
    case Kind::h_segment:
      return GeometricObject::h_segment(field<double>(j, "y"), field<double>(j, "x0"), field<double>(j, "x1"));
    case Kind::v_segment:
      return GeometricObject::v_segment(field<double>(j, "x"), field<double>(j, "y0"), field<double>(j, "y1"));
    case Kind::v_line: return GeometricObject::v_line(field<double>(j, "x"));
    case Kind::polyline: return GeometricObject::polyline(field<std::vector<Point>>(j, "vertices"));
    case Kind::union_object: {
      if (!j.contains("members") || !j["members"].is_array()) throw InputError("union_object needs a members array");
      std::vector<GeometricObject> ms;
      for (const auto& m : j["members"]) {
        if (m.is_number_integer()) {
          const auto idx = m.get<long long>();
          if (idx < 0 || static_cast<std::size_t>(idx) >= earlier.size())
            throw InputError("union member index must refer to an earlier object");
          ms.push_back(earlier[static_cast<std::size_t>(idx)]);
        } else {
          ms.push_back(object_from_json(m, earlier));
        }
      }
      return GeometricObject::union_of(std::move(ms));
    }
  }
  throw InputError("unhandled object kind");
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace detail

inline json instance_to_json(const Instance& inst) {
  json objs = json::array();
  for (const auto& u : inst.objects) objs.push_back(detail::object_to_json(u));
  return json{{"format_version", kFormatVersion}, {"dimension", inst.dimension}, {"objects", std::move(objs)}};
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("objects") || !j["objects"].is_array())
    throw InputError("instance must be an object with an 'objects' array");
  Instance inst;
  inst.dimension = j.value("dimension", 0);
  for (const auto& o : j["objects"]) inst.objects.push_back(detail::object_from_json(o, inst.objects));
  if (inst.dimension == 0) inst.dimension = inst.objects.empty() ? 2 : inst.objects.front().dimension();
  for (const auto& u : inst.objects)
    if (u.dimension() != inst.dimension) throw InputError("object dimension does not match the instance dimension");
  return inst;
}

inline Instance make_instance(std::vector<GeometricObject> objects, int fallback_dimension = 2) {
  Instance inst;
  inst.dimension = objects.empty() ? fallback_dimension : objects.front().dimension();
  inst.objects = std::move(objects);
  return inst;
}

inline json spanner_to_json(const Spanner& s) {
  json edges = json::array();
  for (auto [u, v] : s.edges) edges.push_back({u, v});
  json params = json::object();
  for (const auto& [k, v] : s.parameters) params[k] = v;
  return json{{"format_version", kFormatVersion},
              {"t", s.stretch},
              {"construction", s.construction},
              {"parameters", std::move(params)},
              {"edges", std::move(edges)}};
}

inline Spanner spanner_from_json(const json& j) {
  if (!j.is_object()) throw InputError("spanner must be a JSON object");
  Spanner s;
  s.stretch = detail::field<int>(j, "t");
  if (s.stretch < 1) throw InputError("spanner stretch must be at least 1");
  s.construction = j.value("construction", std::string{});
  if (j.contains("parameters"))
    for (const auto& [k, v] : j["parameters"].items()) s.parameters[k] = v.get<std::int64_t>();
  for (const auto& e : detail::field<std::vector<std::vector<std::int64_t>>>(j, "edges")) {
    if (e.size() != 2 || e[0] < 0 || e[1] < 0) throw InputError("spanner edges must be pairs of vertex indices");
    s.edges.push_back(normalized(static_cast<Vertex>(e[0]), static_cast<Vertex>(e[1])));
  }
  s.canonicalize();
  return s;
}

inline std::string dump(const json& j) { return j.dump() + "\n"; }

inline Instance load_instance(const std::string& path) { return instance_from_json(detail::read_json_file(path)); }
inline Spanner load_spanner(const std::string& path) { return spanner_from_json(detail::read_json_file(path)); }
inline void save_instance(const Instance& inst, const std::string& path) {
  detail::write_text_file(path, dump(instance_to_json(inst)));
}
inline void save_spanner(const Spanner& s, const std::string& path) {
  detail::write_text_file(path, dump(spanner_to_json(s)));
}

}  // namespace hopspan
