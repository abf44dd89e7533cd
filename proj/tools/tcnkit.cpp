#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tcnkit/driver.hpp"
#include "tcnkit/json_io.hpp"
#include "tcnkit/svg_render.hpp"

using namespace tcnkit;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitAudit = 4;

std::string default_cache() {
  const char* env = std::getenv("TCNKIT_CACHE");
  return env ? env : "";
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw input_error("cannot open " + path);
  return parse_json_stream(in);
}

json level_to_json(const LevelReport& lvl) {
  json polys = json::array();
  for (auto& p : lvl.polygons) {
    polys.push_back(json{{"polygon", polygon_to_json(p.polygon)},
                         {"triangulations", p.stats.triangulations},
                         {"nodal_unique", p.stats.nodal_unique},
                         {"checked", p.stats.checked},
                         {"exhausted", p.exhausted}});
  }
  return json{{"c", lvl.c},
              {"polygon_genus", lvl.polygon_genus},
              {"exhausted", lvl.exhausted},
              {"partial", lvl.partial},
              {"coverage", lvl.coverage()},
              {"connected_skeletons", lvl.connected},
              {"polygons", polys}};
}

json audit_to_json(const AuditReport& rep) {
  return json{{"polygon_genus", rep.polygon_genus},
              {"c", rep.c},
              {"subdivisions", rep.subdivisions},
              {"connected", rep.connected},
              {"disconnected", rep.disconnected},
              {"trivial", rep.trivial},
              {"shared_component_pairs", rep.shared_pairs},
              {"exhausted", rep.exhausted},
              {"violations", rep.violations}};
}

int run(int argc, char** argv) {
  CLI::App app{"tcnkit: tropical crossing numbers of trivalent graphs via nodal subdivisions"};
  app.require_subcommand(1);

  std::string cache_dir = default_cache();
  int jobs = 2;
  app.add_option("--cache", cache_dir, "cache directory (default: $TCNKIT_CACHE)");
  app.add_option("--jobs", jobs, "worker threads");

  // polygons
  auto* polygons_cmd = app.add_subcommand("polygons", "maximal non-hyperelliptic polygon catalog");
  int pg_genus = 3;
  std::string pg_svg_dir;
  bool pg_json = false;
  polygons_cmd->add_option("--genus", pg_genus)->required();
  polygons_cmd->add_flag("--json", pg_json, "emit the catalog as JSON");
  polygons_cmd->add_option("--svg", pg_svg_dir, "write an SVG per polygon into this directory");

  // triangulate
  auto* tri_cmd = app.add_subcommand("triangulate", "enumerate unimodular triangulations");
  std::string tri_polygon_file;
  bool tri_count_only = false;
  std::uint64_t tri_max = 100'000'000;
  tri_cmd->add_option("--polygon", tri_polygon_file)->required();
  tri_cmd->add_flag("--count-only", tri_count_only);
  tri_cmd->add_option("--max-triangulations", tri_max, "budget");

  // nodal
  auto* nodal_cmd = app.add_subcommand("nodal", "enumerate regular nodal subdivisions");
  std::string nodal_polygon_file;
  int nodal_c = 1;
  bool nodal_count_only = false;
  std::uint64_t nodal_max = 500'000'000;
  nodal_cmd->add_option("--polygon", nodal_polygon_file)->required();
  nodal_cmd->add_option("--nodes", nodal_c)->required();
  nodal_cmd->add_flag("--count-only", nodal_count_only);
  nodal_cmd->add_option("--max-nodal", nodal_max, "budget");

  // check-regular
  auto* reg_cmd = app.add_subcommand("check-regular", "regularity certificate for a subdivision");
  std::string reg_file;
  reg_cmd->add_option("--subdivision", reg_file)->required();

  // skeleton
  auto* skel_cmd = app.add_subcommand("skeleton", "skeleton of the dual tropical curve");
  std::string skel_file;
  skel_cmd->add_option("--subdivision", skel_file)->required();

  // check
  auto* check_cmd = app.add_subcommand("check", "multigraph predicates and bounds");
  std::string check_file;
  check_cmd->add_option("--graph", check_file)->required();

  // tcn
  auto* tcn_cmd = app.add_subcommand("tcn", "tropical crossing number sweep");
  std::string tcn_graph_file, tcn_checkpoint;
  int tcn_max_nodes = 2;
  bool tcn_deep = false;
  tcn_cmd->add_option("--graph", tcn_graph_file)->required();
  tcn_cmd->add_option("--max-nodes", tcn_max_nodes);
  tcn_cmd->add_option("--checkpoint", tcn_checkpoint, "write progress JSON here");
  tcn_cmd->add_flag("--deep", tcn_deep, "run every level exhaustively (no partial budgets)");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "troplanar classification per genus");
  int classify_genus = 3;
  classify_cmd->add_option("--genus", classify_genus)->required();

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "sweep audits");
  int audit_genus = 4, audit_c = 1;
  int audit_hyper_genus = 0, audit_hyper_cmax = 0;
  audit_cmd->add_option("--genus", audit_genus, "polygon genus for the nodal audit");
  audit_cmd->add_option("--nodes", audit_c, "node count for the nodal audit");
  bool audit_hyper = false;
  audit_cmd->add_flag("--hyperelliptic", audit_hyper, "run the hyperelliptic chain audit");
  audit_cmd->add_option("--hyper-genus", audit_hyper_genus);
  audit_cmd->add_option("--max-nodes", audit_hyper_cmax);

  // stitch
  auto* stitch_cmd = app.add_subcommand("stitch", "patched block constructions");
  int stitch_d = 1, stitch_k = 1;
  std::string blocks_dir = "data";
  bool stitch_search = false;
  int stitch_area = 12;
  stitch_cmd->add_option("--d", stitch_d)->required();
  stitch_cmd->add_option("--k", stitch_k)->required();
  stitch_cmd->add_option("--blocks", blocks_dir, "directory with block_np.json / block_cr.json");
  stitch_cmd->add_flag("--search", stitch_search, "search blocks instead of loading fixtures");
  stitch_cmd->add_option("--max-area", stitch_area, "search budget");

  // render
  auto* render_cmd = app.add_subcommand("render", "SVG of a subdivision and its dual curve");
  std::string render_file, render_out;
  int render_scale = 48;
  render_cmd->add_option("--subdivision", render_file)->required();
  render_cmd->add_option("--out", render_out, "output file (stdout when absent)");
  render_cmd->add_option("--scale", render_scale, "pixels per lattice unit");

  CLI11_PARSE(app, argc, argv);

  DriverOptions opt;
  opt.jobs = jobs;
  opt.cache_dir = cache_dir;
  opt.log = [](const std::string& s) { std::cerr << "# " << s << "\n"; };
  EnumerationOptions eopt;
  eopt.jobs = jobs;
  eopt.cache_dir = cache_dir;

  if (polygons_cmd->parsed()) {
    const auto& catalog = enumerate_maximal_nonhyperelliptic(pg_genus);
    if (!pg_svg_dir.empty()) {
      std::filesystem::create_directories(pg_svg_dir);
      int i = 0;
      for (auto& p : catalog) {
        auto tri = placing_triangulation(p);
        auto reg = check_regular(tri);
        RenderSpec spec;
        spec.show_dual = false;
        std::ofstream out(pg_svg_dir + "/genus" + std::to_string(pg_genus) + "-" +
                          std::to_string(i++) + ".svg");
        out << render_svg(tri, *reg.certificate, spec);
      }
    }
    json out;
    out["genus"] = pg_genus;
    out["count"] = catalog.size();
    json list = json::array();
    for (auto& p : catalog) list.push_back(polygon_to_json(p));
    out["polygons"] = list;
    std::cout << out.dump(pg_json ? -1 : 1) << "\n";
    return kExitOk;
  }

  if (tri_cmd->parsed()) {
    LatticePolygon p = polygon_from_json(load_json_file(tri_polygon_file));
    eopt.budget.max_triangulations = tri_max;
    json list = json::array();
    std::uint64_t count = 0, regular = 0;
    auto stats = enumerate_unimodular_triangulations(
        p, eopt, [&](const Subdivision& s, bool reg) {
          ++count;
          if (reg) ++regular;
          if (!tri_count_only) {
            json j = subdivision_to_json(s);
            j["regular"] = reg;
            list.push_back(std::move(j));
          }
          return true;
        });
    json out{{"triangulations", count}, {"regular", regular}, {"exhausted", stats.exhausted}};
    if (!tri_count_only) out["list"] = std::move(list);
    std::cout << out.dump(1) << "\n";
    return kExitOk;
  }

  if (nodal_cmd->parsed()) {
    LatticePolygon p = polygon_from_json(load_json_file(nodal_polygon_file));
    eopt.budget.max_nodal = nodal_max;
    json list = json::array();
    std::uint64_t count = 0;
    auto stats = enumerate_nodal_subdivisions(p, nodal_c, eopt, [&](const Subdivision& s) {
      ++count;
      if (!nodal_count_only) list.push_back(subdivision_to_json(s));
      return true;
    });
    json out{{"nodes", nodal_c},
             {"regular_nodal_subdivisions", count},
             {"exhausted", stats.exhausted}};
    if (!nodal_count_only) out["list"] = std::move(list);
    std::cout << out.dump(1) << "\n";
    return kExitOk;
  }

  if (reg_cmd->parsed()) {
    Subdivision s = subdivision_from_json(load_json_file(reg_file));
    auto r = check_regular(s);
    json out;
    out["regular"] = r.regular;
    if (r.regular) {
      out["certificate"] = height_certificate_to_json(*r.certificate);
    } else {
      out["farkas"] = farkas_to_json(*r.farkas);
      out["farkas_verified"] = verify_farkas(s, *r.farkas);
    }
    std::cout << out.dump(1) << "\n";
    return kExitOk;
  }

  if (skel_cmd->parsed()) {
    Subdivision s = subdivision_from_json(load_json_file(skel_file));
    auto sk = skeletonize(dualize(s));
    json out;
    switch (sk.kind) {
      case SkeletonResult::Kind::TrivialPoint: out["kind"] = "point"; break;
      case SkeletonResult::Kind::TrivialCycle: out["kind"] = "cycle"; break;
      case SkeletonResult::Kind::Connected: out["kind"] = "connected"; break;
      case SkeletonResult::Kind::Disconnected: out["kind"] = "disconnected"; break;
    }
    if (sk.kind == SkeletonResult::Kind::Connected ||
        sk.kind == SkeletonResult::Kind::TrivialCycle) {
      json g = graph_to_json(sk.graph);
      json prov = json::object();
      for (std::size_t e = 0; e < sk.graph.edge_provenance.size(); ++e) {
        if (!sk.graph.edge_provenance[e].empty())
          prov[std::to_string(e)] = sk.graph.edge_provenance[e];
      }
      g["provenance"] = prov;
      out["skeleton"] = g;
    }
    if (sk.kind == SkeletonResult::Kind::Disconnected)
      out["components"] = sk.components.size();
    json dropped = json::array();
    for (auto& d : sk.side_report)
      dropped.push_back(json{{"node", d.node}, {"reason", d.reason}});
    out["dropped_provenance"] = dropped;
    std::cout << out.dump(1) << "\n";
    return kExitOk;
  }

  if (check_cmd->parsed()) {
    Multigraph g = graph_from_json(load_json_file(check_file));
    json out;
    out["vertices"] = g.vertex_count;
    out["edges"] = g.edges.size();
    out["genus"] = g.genus();
    out["connected"] = g.is_connected();
    out["trivalent"] = g.is_trivalent();
    if (g.is_connected() && g.is_trivalent()) {
      out["chain"] = is_chain(g);
      out["sprawling"] = is_sprawling(g);
      bool planar = is_planar_multigraph(g);
      out["planar"] = planar;
      if (planar && g.vertex_count <= 12) out["crowded"] = is_crowded(g);
      out["treewidth"] = treewidth_exact(g);
      out["tcn_lower_bound"] = rational_to_string(tcn_lower_bound(g));
    }
    std::cout << out.dump(1) << "\n";
    return kExitOk;
  }

  if (tcn_cmd->parsed()) {
    Multigraph g = graph_from_json(load_json_file(tcn_graph_file));
    if (!tcn_deep) {
      // Genus 5 and above sweeps can be very large; cap the per-polygon
      // nodal budget at levels c >= 2 and report partial coverage.
      for (int c = 2; c <= tcn_max_nodes; ++c)
        opt.partial_levels.push_back({c, 2'000'000});
    }
    auto r = compute_tcn(g, tcn_max_nodes, opt);
    json out;
    out["graph"] = graph_to_json(g);
    if (r.tcn) out["tcn"] = *r.tcn;
    if (r.upper_bound) out["upper_bound"] = *r.upper_bound;
    out["proven_lower_bound"] = r.proven_lower_bound;
    out["chain_shortcut"] = r.chain_shortcut;
    out["resolved"] = r.tcn.has_value();
    json levels = json::array();
    for (auto& lvl : r.levels) levels.push_back(level_to_json(lvl));
    out["levels"] = levels;
    if (r.witness) {
      out["witness"] = json{{"subdivision", subdivision_to_json(r.witness->subdivision)},
                            {"certificate", height_certificate_to_json(r.witness->certificate)}};
    }
    if (!tcn_checkpoint.empty()) {
      std::ofstream f(tcn_checkpoint);
      f << out.dump(1) << "\n";
    }
    std::cout << out.dump(1) << "\n";
    return r.tcn.has_value() || r.chain_shortcut ? kExitOk : kExitBudget;
  }

  if (classify_cmd->parsed()) {
    auto r = troplanar_classify(classify_genus, opt);
    json out;
    out["genus"] = r.genus;
    out["graphs"] = r.entries.size();
    out["troplanar"] = r.troplanar_count;
    out["non_troplanar"] = r.non_troplanar_count;
    out["level"] = level_to_json(r.level);
    json entries = json::array();
    for (auto& e : r.entries) {
      json je;
      je["graph"] = graph_to_json(e.graph);
      je["chain"] = e.chain;
      je["troplanar"] = e.troplanar;
      if (e.witness) je["witness"] = subdivision_to_json(e.witness->subdivision);
      entries.push_back(std::move(je));
    }
    out["entries"] = entries;
    std::cout << out.dump(1) << "\n";
    return kExitOk;
  }

  if (audit_cmd->parsed()) {
    json out;
    bool violated = false;
    if (audit_hyper) {
      auto reports = hyperelliptic_chain_audit(audit_hyper_genus, audit_hyper_cmax, opt);
      json list = json::array();
      for (auto& rep : reports) {
        violated = violated || !rep.violations.empty();
        list.push_back(audit_to_json(rep));
      }
      out["hyperelliptic_chain_audit"] = list;
    } else {
      auto rep = audit_sweep(audit_genus, audit_c, opt);
      violated = !rep.violations.empty();
      out["audit"] = audit_to_json(rep);
    }
    std::cout << out.dump(1) << "\n";
    return violated ? kExitAudit : kExitOk;
  }

  if (stitch_cmd->parsed()) {
    Subdivision* np = nullptr;
    Subdivision* cr = nullptr;
    std::optional<Subdivision> np_s, cr_s;
    if (stitch_search) {
      auto blocks = find_stitch_blocks(opt, stitch_area);
      if (!blocks) throw budget_error("no stitch blocks found within the area budget");
      np_s = blocks->block_np;
      cr_s = blocks->block_cr;
    } else {
      np_s = subdivision_from_json(load_json_file(blocks_dir + "/block_np.json"));
      cr_s = subdivision_from_json(load_json_file(blocks_dir + "/block_cr.json"));
    }
    np = &*np_s;
    cr = &*cr_s;
    auto st = stitch_construction(stitch_d, stitch_k, *np, *cr);
    json out;
    out["d"] = stitch_d;
    out["k"] = stitch_k;
    out["nodes"] = st.subdivision.node_count();
    out["blocks"] = st.block_count;
    out["nonplanar_blocks"] = st.nonplanar_blocks;
    out["crowded_blocks"] = st.crowded_blocks;
    out["bridge_path"] = st.bridge_path;
    out["skeleton"] = graph_to_json(st.skeleton);
    out["subdivision"] = subdivision_to_json(st.subdivision);
    std::cout << out.dump(1) << "\n";
    return kExitOk;
  }

  if (render_cmd->parsed()) {
    Subdivision s = subdivision_from_json(load_json_file(render_file));
    auto r = check_regular(s);
    if (!r.regular) throw input_error("render requires a regular subdivision");
    RenderSpec spec;
    spec.scale = render_scale;
    std::string svg = render_svg(s, *r.certificate, spec);
    if (render_out.empty()) {
      std::cout << svg;
    } else {
      std::ofstream f(render_out);
      f << svg;
    }
    return kExitOk;
  }

  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const budget_error& e) {
    std::cout << json{{"error", {{"kind", "budget"}, {"message", e.what()}}}}.dump() << "\n";
    return kExitBudget;
  } catch (const input_error& e) {
    std::cout << json{{"error", {{"kind", "input"}, {"message", e.what()}}}}.dump() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << "\n";
    return kExitInput;
  }
}
