#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hopspan/hopspan.hpp"

using namespace hopspan;

namespace {

Params parse_params(const std::vector<std::string>& kv) {
  Params p;
  for (const auto& s : kv) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects key=value, got '" + s + "'");
    try {
      p[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw InputError("--param value must be a number: '" + s + "'");
    }
  }
  return p;
}

void print_report(const VerifyReport& rep, int t) {
  std::cout << (rep.ok ? "ok" : "FAILED") << ": " << rep.checked_edges << " edges checked"
            << (rep.sampled ? " (sampled)" : "") << ", t=" << t << ", worst=" ;
  if (rep.worst_hops > t) std::cout << ">" << t;
  else std::cout << rep.worst_hops;
  if (rep.worst_edge) std::cout << " at (" << rep.worst_edge->first << "," << rep.worst_edge->second << ")";
  std::cout << "\nhops:";
  for (std::size_t h = 1; h < rep.histogram.size(); ++h) {
    if (!rep.histogram[h]) continue;
    std::cout << ' ' << (static_cast<int>(h) > t ? ">" + std::to_string(t) : std::to_string(h)) << ':' << rep.histogram[h];
  }
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hop spanners for geometric intersection graphs"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  std::string family, out_path, in_path, span_path;
  std::size_t n = 100;
  std::vector<std::string> kv;
  gen->add_option("--family", family, "instance family")->required();
  gen->add_option("--n", n, "object count")->required();
  gen->add_option("--seed", seed, "random seed")->envname("HOPSPAN_SEED");
  gen->add_option("--param", kv, "generator parameter key=value");
  gen->add_option("-o,--out", out_path, "instance JSON")->required();

  auto* build = app.add_subcommand("build", "construct a spanner");
  std::string tag;
  int k = 2;
  build->add_option("--construction", tag, "construction tag")->required();
  build->add_option("--k", k, "recursion level for string-III and fat-II");
  build->add_option("--seed", seed, "jitter seed for the fat constructions")->envname("HOPSPAN_SEED");
  build->add_option("-i,--instance", in_path, "instance JSON")->required();
  build->add_option("-o,--out", out_path, "spanner JSON")->required();

  auto* verify = app.add_subcommand("verify", "check a spanner against its instance");
  int t = 0;
  std::string mode = "auto";
  verify->add_option("-i,--instance", in_path, "instance JSON")->required();
  verify->add_option("-s,--spanner", span_path, "spanner JSON")->required();
  verify->add_option("--t", t, "hop bound (default: the spanner's declared stretch)");
  verify->add_option("--mode", mode, "auto, exact or sampled")->check(CLI::IsMember({"auto", "exact", "sampled"}));
  verify->add_option("--seed", seed, "seed for sampled verification")->envname("HOPSPAN_SEED");

  auto* bench = app.add_subcommand("bench", "run an experiment ladder");
  std::string spec_path;
  bench->add_option("--spec", spec_path, "experiment spec JSON")->required();
  bench->add_option("-o,--out", out_path, "results CSV")->required();

  auto* render = app.add_subcommand("render", "draw a planar instance and spanner as SVG");
  render->add_option("-i,--instance", in_path, "instance JSON")->required();
  render->add_option("-s,--spanner", span_path, "spanner JSON")->required();
  render->add_option("-o,--out", out_path, "SVG file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      auto objs = generate_instance(family, n, parse_params(kv), seed);
      save_instance(make_instance(std::move(objs), family == "balls_d" || family == "boxes_d" ? 3 : 2), out_path);
      return 0;
    }
    if (build->parsed()) {
      const auto inst = load_instance(in_path);
      const auto g = build_intersection_graph(inst.objects);
      BuildOptions bo;
      bo.k = k;
      bo.seed = seed;
      const auto s = build_spanner(tag, inst.objects, g, bo);
      save_spanner(s, out_path);
      std::cout << s.construction << ": n=" << g.size() << " m=" << g.edge_count() << " edges=" << s.edges.size()
                << " t=" << s.stretch << '\n';
      return 0;
    }
    if (verify->parsed()) {
      const auto inst = load_instance(in_path);
      const auto s = load_spanner(span_path);
      const auto g = build_intersection_graph(inst.objects);
      for (auto [a, b] : s.edges)
        if (b >= g.size()) throw InputError("spanner edge refers to a vertex outside the instance");
      VerifyOptions vo;
      vo.mode = mode == "exact" ? VerifyMode::exact : mode == "sampled" ? VerifyMode::sampled : VerifyMode::automatic;
      vo.seed = seed;
      const int bound = t > 0 ? t : s.stretch;
      const auto rep = verify_hop_spanner(g, s.edges, bound, vo);
      print_report(rep, bound);
      return rep.ok ? 0 : 1;
    }
    if (bench->parsed()) {
      const auto spec = spec_from_json(detail::read_json_file(spec_path));
      const auto rows = run_suite(spec);
      detail::write_text_file(out_path, to_csv(rows));
      std::size_t bad = 0;
      for (const auto& r : rows) {
        if (r.verified_ok) continue;
        ++bad;
        std::cerr << "n=" << r.n << " seed=" << r.seed << ": " << (r.error.empty() ? "verification failed" : r.error)
                  << '\n';
      }
      std::cout << rows.size() - bad << "/" << rows.size() << " rows verified\n";
      return bad == 0 ? 0 : 1;
    }
    if (render->parsed()) {
      save_svg(load_instance(in_path), load_spanner(span_path), out_path);
      return 0;
    }
  } catch (const StructuralError& e) {
    std::cerr << "structural error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
