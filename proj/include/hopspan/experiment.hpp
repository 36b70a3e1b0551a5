#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fat_spanner.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "rect_spanner.hpp"
#include "separator.hpp"
#include "string_spanner.hpp"
#include "union_spanner.hpp"
#include "verify.hpp"

namespace hopspan {

inline constexpr std::array<std::string_view, 9> kConstructions = {
    "string-I", "string-II", "string-III", "fat-I", "fat-II", "union-2hop", "seg-line", "seg", "rect"};

struct BuildOptions {
  int k = 2;  // string-III and fat-II only
  std::uint64_t seed = 1;
  StringOptions string;
};

inline bool needs_k(std::string_view tag) { return tag == "string-III" || tag == "fat-II"; }

inline Spanner build_spanner(std::string_view tag, std::span<const GeometricObject> objects,
                             const IntersectionGraph& g, const BuildOptions& opt = {}) {
  if (tag == "string-I") return string_spanner_3hop(g, opt.string);
  if (tag == "string-II") return string_spanner_7hop(g, opt.string);
  if (tag == "string-III") return string_spanner_tk(g, opt.k, opt.string);
  if (tag == "fat-I" || tag == "fat-II") {
    FatOptions fo;
    fo.jitter_seed = opt.seed;
    return fat_spanner(objects, g, tag == "fat-I" ? 1 : std::max(opt.k, 2), fo);
  }
  if (tag == "union-2hop") return two_hop_spanner_union(objects, g);
  if (tag == "seg-line") return seg_line_spanner(objects);
  if (tag == "seg") return seg_spanner(objects);
  if (tag == "rect") return rect_spanner(objects);
  throw InputError("unknown construction: " + std::string(tag));
}

// Families a construction accepts. The string constructions only look at
// the graph, so every planar family qualifies.
inline bool applicable(std::string_view tag, std::string_view family) {
  auto any = [&](std::initializer_list<std::string_view> fs) { return std::find(fs.begin(), fs.end(), family) != fs.end(); };
  if (tag.starts_with("string-")) return family != "balls_d" && family != "boxes_d";
  if (tag.starts_with("fat-")) return any({"disks", "balls_d", "boxes_d", "squares", "clique_point"});
  if (tag == "union-2hop") return any({"disks", "squares", "clique_point"});
  if (tag == "seg-line") return family == "seg_lines";
  if (tag == "seg") return any({"hv_segments", "seg_lines"});
  if (tag == "rect") return any({"rects", "squares", "nested_rects"});
  return false;
}

struct ExperimentSpec {
  std::string family;
  std::string construction;
  int k = 2;
  std::vector<std::size_t> ladder;
  std::vector<std::uint64_t> seeds;
  Params parameters;
  VerifyOptions verify;
  std::size_t workers = 1;
  bool record_timing = true;  // timing columns are the only run-dependent output
  std::string spanner_dir;    // when set, each row's spanner JSON lands here

  void validate() const {
    if (seeds.empty()) throw InputError("experiment needs at least one seed");
    for (std::size_t i = 1; i < ladder.size(); ++i)
      if (ladder[i] <= ladder[i - 1]) throw InputError("n ladder must be strictly increasing");
    if (std::find(kConstructions.begin(), kConstructions.end(), construction) == kConstructions.end())
      throw InputError("unknown construction: " + construction);
    if (std::find(kFamilies.begin(), kFamilies.end(), family) == kFamilies.end())
      throw InputError("unknown instance family: " + family);
  }
};

inline ExperimentSpec spec_from_json(const json& j) {
  ExperimentSpec s;
  try {
    s.family = j.at("family").get<std::string>();
    s.construction = j.at("construction").get<std::string>();
    s.k = j.value("k", 2);
    s.ladder = j.value("n", std::vector<std::size_t>{});
    s.seeds = j.value("seeds", std::vector<std::uint64_t>{});
    s.parameters = j.value("parameters", Params{});
    s.workers = j.value("workers", std::size_t{1});
    s.record_timing = j.value("timing", true);
    s.spanner_dir = j.value("spanner_dir", std::string{});
    const auto mode = j.value("verify", std::string("auto"));
    if (mode == "exact") s.verify.mode = VerifyMode::exact;
    else if (mode == "sampled") s.verify.mode = VerifyMode::sampled;
    else if (mode != "auto") throw InputError("verify must be auto, exact or sampled");
  } catch (const json::exception& e) {
    throw InputError(std::string("bad experiment spec: ") + e.what());
  }
  s.validate();
  return s;
}

struct ResultRow {
  std::string family, construction;
  int k = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t m = 0;
  std::size_t spanner_edges = 0;
  int declared_t = 0;
  bool verified_ok = false;
  int max_required_hops = 0;
  bool sampled = false;
  double build_ms = 0, verify_ms = 0;
  std::optional<double> separator_ratio;  // |X| / sqrt(m + 1), string constructions
  std::string aux;                        // construction parameters, key=value;...
  std::string error;
  Spanner spanner;
};

inline constexpr int kCsvVersion = 1;
inline constexpr const char* kCsvHeader =
    "csv_version,family,construction,k,n,seed,m,spanner_edges,declared_t,verified_ok,max_required_hops,"
    "verify_mode,build_ms,verify_ms,separator_ratio,aux,error";

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

inline std::string csv_row(const ResultRow& r) {
  std::ostringstream os;
  os << kCsvVersion << ',' << r.family << ',' << r.construction << ',' << r.k << ',' << r.n << ',' << r.seed << ','
     << r.m << ',' << r.spanner_edges << ',' << r.declared_t << ',' << (r.verified_ok ? "true" : "false") << ','
     << r.max_required_hops << ',' << (r.sampled ? "sampled" : "exact") << ',' << detail::fixed(r.build_ms, 3) << ','
     << detail::fixed(r.verify_ms, 3) << ',' << (r.separator_ratio ? detail::fixed(*r.separator_ratio, 4) : "") << ','
     << detail::csv_field(r.aux) << ',' << detail::csv_field(r.error);
  return os.str();
}

inline std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) out += csv_row(r) + "\n";
  return out;
}

inline ResultRow run_one(const ExperimentSpec& spec, std::size_t n, std::uint64_t seed) {
  ResultRow row;
  row.family = spec.family;
  row.construction = spec.construction;
  row.k = needs_k(spec.construction) ? spec.k : 0;
  row.n = n;
  row.seed = seed;
  try {
    const auto objects = generate_instance(spec.family, n, spec.parameters, seed);
    const auto g = build_intersection_graph(objects);
    row.m = g.edge_count();
    BuildOptions bo;
    bo.k = spec.k;
    bo.seed = seed;
    auto t0 = std::chrono::steady_clock::now();
    row.spanner = build_spanner(spec.construction, objects, g, bo);
    row.build_ms = spec.record_timing ? detail::ms_since(t0) : 0;
    row.spanner_edges = row.spanner.edges.size();
    row.declared_t = row.spanner.stretch;
    for (const auto& [key, v] : row.spanner.parameters) {
      if (!row.aux.empty()) row.aux += ';';
      row.aux += key + "=" + std::to_string(v);
    }
    if (spec.construction.starts_with("string-") && g.size() > 0) {
      const auto sep = balanced_separator(g);
      row.separator_ratio = static_cast<double>(sep.X.size()) / std::sqrt(static_cast<double>(g.edge_count() + 1));
    }
    VerifyOptions vo = spec.verify;
    vo.seed = seed;
    t0 = std::chrono::steady_clock::now();
    const auto rep = verify_hop_spanner(g, row.spanner.edges, row.declared_t, vo);
    row.verify_ms = spec.record_timing ? detail::ms_since(t0) : 0;
    row.verified_ok = rep.ok;
    row.max_required_hops = rep.worst_hops;
    row.sampled = rep.sampled;
  } catch (const std::exception& e) {
    row.verified_ok = false;
    row.error = e.what();
  }
  return row;
}

// Rows come out in (n, seed) order whatever the worker count.
inline std::vector<ResultRow> run_suite(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (std::size_t n : spec.ladder)
    for (std::uint64_t s : spec.seeds) jobs.emplace_back(n, s);
  std::vector<ResultRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) rows[i] = run_one(spec, jobs[i].first, jobs[i].second);
  };
  const std::size_t w = std::clamp<std::size_t>(spec.workers, 1, std::max<std::size_t>(jobs.size(), 1));
  if (w == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < w; ++i) pool.emplace_back(worker);
  }
  if (!spec.spanner_dir.empty())
    for (const auto& r : rows)
      if (r.error.empty())
        save_spanner(r.spanner, spec.spanner_dir + "/" + r.family + "_" + r.construction + "_n" + std::to_string(r.n) +
                                    "_s" + std::to_string(r.seed) + ".json");
  return rows;
}

inline bool all_verified(const std::vector<ResultRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.verified_ok; });
}

}  // namespace hopspan
