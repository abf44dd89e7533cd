#include "tcnkit/driver.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>

namespace tcnkit {

namespace {

void log_line(const DriverOptions& opt, const std::string& s) {
  if (opt.log) opt.log(s);
}

EnumerationOptions engine_options(const DriverOptions& opt, int c) {
  EnumerationOptions eo;
  eo.jobs = opt.jobs;
  eo.cache_dir = opt.cache_dir;
  eo.budget = opt.budget;
  for (auto& [level, cap] : opt.partial_levels) {
    if (level == c) eo.budget.max_nodal = cap;
  }
  return eo;
}

bool is_partial_level(const DriverOptions& opt, int c) {
  for (auto& [level, cap] : opt.partial_levels) {
    if (level == c) return true;
  }
  return false;
}

// Cheap invariant prefilter before canonical keys.
struct GraphInvariant {
  int vertices = 0;
  int edges = 0;
  int loops = 0;
  int multi = 0;  // unordered pairs with multiplicity >= 2
  friend bool operator==(const GraphInvariant&, const GraphInvariant&) = default;
};

GraphInvariant invariant_of(const Multigraph& g) {
  GraphInvariant inv;
  inv.vertices = g.vertex_count;
  inv.edges = static_cast<int>(g.edges.size());
  std::map<std::pair<int, int>, int> mult;
  for (auto& e : g.edges) {
    if (e.first == e.second)
      ++inv.loops;
    else
      ++mult[e];
  }
  for (auto& [e, m] : mult) {
    if (m >= 2) ++inv.multi;
  }
  return inv;
}

TcnWitness verify_witness(const PointContext& ctx, const CompactCells& cells,
                          const Multigraph& target, int c) {
  Subdivision s = subdivision_from_compact(ctx, cells);  // re-validates structure
  auto reg = check_regular(s);
  if (!reg.regular) throw std::logic_error("witness failed the regularity re-check");
  auto sk = skeletonize(dualize(s));
  if (sk.kind != SkeletonResult::Kind::Connected)
    throw std::logic_error("witness skeleton is not connected");
  if (!isomorphic(sk.graph, target))
    throw std::logic_error("witness skeleton does not match the target graph");
  if (s.node_count() != c) throw std::logic_error("witness node count mismatch");
  return TcnWitness{std::move(s), std::move(*reg.certificate)};
}

}  // namespace

std::optional<TcnWitness> find_skeleton_witness(const LatticePolygon& polygon, int c,
                                                const Multigraph& target,
                                                const DriverOptions& opt) {
  GraphInvariant target_inv = invariant_of(target);
  CanonicalKey target_key = canonical_key(target);
  std::mutex mu;
  std::optional<CompactCells> hit;
  std::optional<TcnWitness> out;
  PointContext ctx(polygon);
  engine::sweep(polygon, c, engine_options(opt, c),
                [&](const PointContext& cctx, const CompactCells& cells,
                    engine::LazyVerdict& verdict) {
                  auto sk = engine::skeletonize_cells(cctx, cells);
                  if (sk.kind != SkeletonResult::Kind::Connected) return true;
                  if (invariant_of(sk.graph) != target_inv) return true;
                  if (canonical_key(sk.graph) != target_key) return true;
                  if (!verdict.regular()) return true;
                  std::lock_guard<std::mutex> lock(mu);
                  if (!hit) hit = cells;
                  return false;  // first hit wins
                });
  if (hit) out = verify_witness(ctx, *hit, target, c);
  return out;
}

TcnResult compute_tcn(const Multigraph& g, int max_c, const DriverOptions& opt) {
  if (!g.is_connected() || !g.is_trivalent())
    throw input_error("tropical crossing number needs a connected trivalent graph");
  if (g.genus() < 2) throw input_error("tropical crossing number needs genus >= 2");
  TcnResult result;
  result.graph_key = canonical_key(g);
  if (is_chain(g)) {
    // Chains arise from hyperelliptic polygons without any nodes.
    result.tcn = 0;
    result.upper_bound = 0;
    result.chain_shortcut = true;
    return result;
  }
  const int genus = g.genus();
  GraphInvariant target_inv = invariant_of(g);
  CanonicalKey target_key = canonical_key(g);

  for (int c = 0; c <= max_c; ++c) {
    LevelReport level;
    level.c = c;
    level.polygon_genus = genus + c;
    level.partial = is_partial_level(opt, c);
    log_line(opt, "level c=" + std::to_string(c) + ": sweeping genus-" +
                      std::to_string(level.polygon_genus) + " catalog");
    const auto& catalog = enumerate_maximal_nonhyperelliptic(level.polygon_genus);
    std::optional<TcnWitness> witness;
    for (auto& polygon : catalog) {
      PolygonLevelReport pr{polygon, {}, false};
      std::mutex mu;
      std::optional<CompactCells> hit_cells;
      PointContext hit_ctx(polygon);
      std::atomic<std::uint64_t> connected{0};
      pr.stats = engine::sweep(
          polygon, c, engine_options(opt, c),
          [&](const PointContext& cctx, const CompactCells& cells,
              engine::LazyVerdict& verdict) {
            // Match the skeleton first; the exact regularity check runs only
            // on matches, keeping exhaustive levels cheap. Exhaustion is
            // sound: a level is empty when no subdivision at all, regular or
            // not, carries the target skeleton.
            auto sk = engine::skeletonize_cells(cctx, cells);
            if (sk.kind != SkeletonResult::Kind::Connected) return true;
            connected.fetch_add(1, std::memory_order_relaxed);
            if (invariant_of(sk.graph) != target_inv) return true;
            if (canonical_key(sk.graph) != target_key) return true;
            if (!verdict.regular()) return true;
            std::lock_guard<std::mutex> lock(mu);
            if (!hit_cells) hit_cells = cells;
            return false;
          });
      pr.exhausted = pr.stats.exhausted;
      level.connected += connected.load();
      level.polygons.push_back(pr);
      if (hit_cells) {
        witness = verify_witness(hit_ctx, *hit_cells, g, c);
        level.matched = 1;
        break;
      }
      if (!pr.exhausted && !level.partial) break;
    }
    level.exhausted = !level.polygons.empty();
    for (auto& p : level.polygons) level.exhausted = level.exhausted && p.exhausted;
    if (level.polygons.size() != catalog.size()) level.exhausted = false;
    result.levels.push_back(level);
    if (witness) {
      result.upper_bound = c;
      if (result.proven_lower_bound == c) result.tcn = c;
      result.witness = std::move(witness);
      return result;
    }
    if (level.exhausted) {
      result.proven_lower_bound = c + 1;
    } else if (!level.partial) {
      // Budget hit on a non-partial level: unresolved.
      return result;
    }
  }
  return result;
}

ClassifyResult troplanar_classify(int g, const DriverOptions& opt) {
  if (g < 3 || g > 5) throw budget_error("classification supports genus 3..5");
  ClassifyResult out;
  out.genus = g;
  const auto& graphs = enumerate_trivalent(g);
  std::map<CanonicalKey, std::size_t> index_of_key;
  for (auto& graph : graphs) {
    ClassifyEntry e;
    e.graph = graph;
    e.key = canonical_key(graph);
    e.chain = is_chain(graph);
    index_of_key[e.key] = out.entries.size();
    out.entries.push_back(std::move(e));
  }

  LevelReport level;
  level.c = 0;
  level.polygon_genus = g;
  std::mutex mu;
  std::map<std::size_t, std::pair<CompactCells, LatticePolygon>> hits;
  for (auto& polygon : enumerate_maximal_nonhyperelliptic(g)) {
    PolygonLevelReport pr{polygon, {}, false};
    std::atomic<std::uint64_t> connected{0};
    pr.stats = engine::sweep(
        polygon, 0, engine_options(opt, 0),
        [&](const PointContext& cctx, const CompactCells& cells, engine::LazyVerdict& verdict) {
          if (!verdict.regular()) return true;
          auto sk = engine::skeletonize_cells(cctx, cells);
          if (sk.kind != SkeletonResult::Kind::Connected) return true;
          connected.fetch_add(1, std::memory_order_relaxed);
          auto it = index_of_key.find(canonical_key(sk.graph));
          if (it == index_of_key.end()) return true;
          std::lock_guard<std::mutex> lock(mu);
          hits.emplace(it->second, std::make_pair(cells, cctx.polygon));
          return true;
        });
    pr.exhausted = pr.stats.exhausted;
    level.connected += connected.load();
    level.polygons.push_back(pr);
  }
  level.exhausted = true;
  for (auto& p : level.polygons) level.exhausted = level.exhausted && p.exhausted;
  out.level = level;

  for (auto& [idx, cellpoly] : hits) {
    PointContext ctx(cellpoly.second);
    out.entries[idx].witness = verify_witness(ctx, cellpoly.first, out.entries[idx].graph, 0);
  }
  // Chains without a catalog witness pick one up from the hyperelliptic
  // rectangle of the same genus.
  for (auto& e : out.entries) {
    if (e.chain && !e.witness) {
      e.witness = find_skeleton_witness(hyperelliptic_rectangle(g), 0, e.graph, opt);
    }
    e.troplanar = e.chain || e.witness.has_value();
    if (e.troplanar)
      ++out.troplanar_count;
    else
      ++out.non_troplanar_count;
  }
  return out;
}

namespace {

std::string hex_code(const CompactCells& cells) {
  static const char* digits = "0123456789abcdef";
  std::string code = cells_code(cells);
  std::string out;
  out.reserve(code.size() * 2);
  for (unsigned char ch : code) {
    out.push_back(digits[ch >> 4]);
    out.push_back(digits[ch & 15]);
  }
  return out;
}

void audit_one(const PointContext& ctx, const CompactCells& cells, AuditReport& report,
               std::mutex& mu) {
  auto sk = engine::skeletonize_cells(ctx, cells);
  int nodes = 0;
  for (auto& c : cells)
    if (c.kind == 1) ++nodes;
  std::lock_guard<std::mutex> lock(mu);
  ++report.subdivisions;
  if (sk.kind == SkeletonResult::Kind::Disconnected) {
    ++report.disconnected;
    return;
  }
  if (sk.kind != SkeletonResult::Kind::Connected) {
    ++report.trivial;
    return;
  }
  ++report.connected;
  // (a) genus identity g = i - n.
  if (sk.graph.genus() != ctx.interior_count - nodes) {
    report.violations.push_back("genus identity failed on subdivision " + hex_code(cells));
  }
  // (b) no two distinct 2-connected components share exactly one node.
  auto blocks = two_connected_components(sk.graph);
  std::map<int, std::vector<int>> node_components;
  if (!sk.graph.edge_provenance.empty()) {
    for (std::size_t e = 0; e < sk.graph.edges.size(); ++e) {
      for (int n : sk.graph.edge_provenance[e]) {
        node_components[n].push_back(blocks.edge_component[e]);
      }
    }
  }
  std::map<std::pair<int, int>, int> pair_counts;
  for (auto& [node, comps] : node_components) {
    if (comps.size() != 2) continue;
    int a = comps[0], b = comps[1];
    if (a < 0 || b < 0 || a == b) continue;
    pair_counts[{std::min(a, b), std::max(a, b)}] += 1;
  }
  for (auto& [pair, count] : pair_counts) {
    ++report.shared_pairs;
    if (count == 1) {
      report.violations.push_back("components " + std::to_string(pair.first) + "," +
                                  std::to_string(pair.second) +
                                  " share exactly one node in subdivision " + hex_code(cells));
    }
  }
}

}  // namespace

AuditReport audit_sweep(int polygon_genus, int c, const DriverOptions& opt) {
  AuditReport report;
  report.polygon_genus = polygon_genus;
  report.c = c;
  std::mutex mu;
  for (auto& polygon : enumerate_maximal_nonhyperelliptic(polygon_genus)) {
    log_line(opt, "audit: polygon " + to_string(polygon) + " c=" + std::to_string(c));
    auto stats = engine::sweep(polygon, c, engine_options(opt, c),
                               [&](const PointContext& cctx, const CompactCells& cells,
                                   engine::LazyVerdict& verdict) {
                                 if (!verdict.regular()) return true;
                                 audit_one(cctx, cells, report, mu);
                                 return true;
                               });
    report.exhausted = report.exhausted && stats.exhausted;
  }
  return report;
}

std::vector<AuditReport> hyperelliptic_chain_audit(int g, int c_max, const DriverOptions& opt) {
  if (g < 3) throw input_error("hyperelliptic chain audit needs genus >= 3");
  if (c_max > g - 2) throw input_error("chain audit requires c <= g - 2");
  LatticePolygon rect = hyperelliptic_rectangle(g);
  std::vector<AuditReport> reports;
  for (int c = 0; c <= c_max; ++c) {
    AuditReport report;
    report.polygon_genus = g;
    report.c = c;
    std::mutex mu;
    auto stats = engine::sweep(
        rect, c, engine_options(opt, c),
        [&](const PointContext& cctx, const CompactCells& cells, engine::LazyVerdict& verdict) {
          if (!verdict.regular()) return true;
          auto sk = engine::skeletonize_cells(cctx, cells);
          std::lock_guard<std::mutex> lock(mu);
          ++report.subdivisions;
          if (sk.kind == SkeletonResult::Kind::Disconnected) {
            ++report.disconnected;
            return true;
          }
          if (sk.kind != SkeletonResult::Kind::Connected) {
            ++report.trivial;
            return true;
          }
          ++report.connected;
          if (!is_chain(sk.graph)) {
            report.violations.push_back("non-chain skeleton from hyperelliptic polygon");
          }
          return true;
        });
    report.exhausted = stats.exhausted;
    log_line(opt, "chain audit c=" + std::to_string(c) + ": " +
                      std::to_string(report.connected) + " connected skeletons");
    reports.push_back(std::move(report));
  }
  return reports;
}

namespace {

// The block polygons stack along their long side; consecutive copies share
// the primitive (0,1) side.
UnimodularMap stack_translation(LatticePoint u, int j) {
  return UnimodularMap::translation(j * u.x, j * u.y);
}

bool two_connected(const Multigraph& g) {
  auto blocks = two_connected_components(g);
  return blocks.components.size() == 1 && blocks.bridge_edges.empty();
}

}  // namespace

StitchResult stitch_construction(int d, int k, const Subdivision& block_np,
                                 const Subdivision& block_cr) {
  if (k < 1 || d < 0 || d > k) throw input_error("stitch needs 0 <= d <= k, k >= 1");
  // Both blocks live on a common parallelogram polygon whose stacking vector
  // is the vertex following the origin vertex.
  if (!(block_np.polygon() == block_cr.polygon()))
    throw input_error("stitch blocks must share a polygon");
  const auto& verts = block_np.polygon().vertices();
  if (verts.size() != 4) throw input_error("stitch blocks must live on a parallelogram");
  LatticePoint u = verts[1] - verts[0];
  {
    LatticePoint w = verts[3] - verts[0];
    if (gcd_ll(w.x, w.y) != 1)
      throw input_error("stitch polygon's short side must be primitive");
    if (!(verts[2] == verts[0] + u + w)) throw input_error("stitch polygon is not a parallelogram");
  }
  auto block = [&](int i) -> const Subdivision& { return i < d ? block_np : block_cr; };
  Subdivision acc = block(0);
  for (int i = 1; i < k; ++i) {
    acc = patch(acc, block(i), stack_translation(u, i));
  }
  auto reg = check_regular(acc);
  if (!reg.regular) throw std::logic_error("stitched subdivision is not regular");

  StitchResult out{acc, *reg.certificate, Multigraph{}, 0, 0, 0, false};
  auto sk = skeletonize(dualize(acc));
  if (sk.kind != SkeletonResult::Kind::Connected)
    throw std::logic_error("stitched skeleton is not connected");
  out.skeleton = sk.graph;
  auto blocks = two_connected_components(sk.graph);
  out.block_count = static_cast<int>(blocks.components.size());
  for (auto& comp : blocks.components) {
    // Bridge attachment points are degree-2 inside their component; smooth
    // them away before classifying the block.
    Multigraph block = smoothed(comp);
    if (is_planar_multigraph(block)) {
      if (is_crowded(block)) ++out.crowded_blocks;
    } else {
      ++out.nonplanar_blocks;
    }
  }
  // Path check: components joined consecutively by the bridges.
  const int B = static_cast<int>(blocks.bridge_edges.size());
  if (B == out.block_count - 1) {
    std::vector<int> vertex_component(sk.graph.vertex_count, -1);
    for (std::size_t ci = 0; ci < blocks.component_vertices.size(); ++ci) {
      for (int v : blocks.component_vertices[ci]) vertex_component[v] = static_cast<int>(ci);
    }
    std::map<int, int> deg;
    bool ok = true;
    for (int e : blocks.bridge_edges) {
      int a = vertex_component[sk.graph.edges[e].first];
      int b = vertex_component[sk.graph.edges[e].second];
      if (a < 0 || b < 0 || a == b) {
        ok = false;
        break;
      }
      deg[a]++;
      deg[b]++;
    }
    int ends = 0;
    for (auto& [comp, dg] : deg) {
      if (dg > 2) ok = false;
      if (dg == 1) ++ends;
    }
    out.bridge_path = ok && (out.block_count == 1 || ends == 2);
  }
  return out;
}

std::optional<StitchBlocks> find_stitch_blocks(const DriverOptions& opt, int max_area) {
  for (int area = 2; area <= max_area; ++area) {
    for (int b = 0; b < area; ++b) {
      LatticePoint u{area, b};
      LatticePolygon p({{0, 0}, u, u + LatticePoint{0, 1}, {0, 1}});
      if (genus(p) < 5) continue;  // skeleton genus = interior - 1
      log_line(opt, "block search: parallelogram area " + std::to_string(area) + " shear " +
                        std::to_string(b));
      std::mutex mu;
      std::optional<CompactCells> np_cells, cr_cells;
      PointContext ctx(p);
      engine::sweep(p, 1, engine_options(opt, 1),
                    [&](const PointContext& cctx, const CompactCells& cells,
                        engine::LazyVerdict& verdict) {
                      auto sk = engine::skeletonize_cells(cctx, cells);
                      if (sk.kind != SkeletonResult::Kind::Connected) return true;
                      if (!sk.graph.is_trivalent()) return true;
                      if (!two_connected(sk.graph)) return true;
                      std::lock_guard<std::mutex> lock(mu);
                      if (!is_planar_multigraph(sk.graph)) {
                        if (!np_cells && verdict.regular()) np_cells = cells;
                      } else if (!cr_cells && sk.graph.vertex_count <= 12 &&
                                 is_crowded(sk.graph) && verdict.regular()) {
                        cr_cells = cells;
                      }
                      return !(np_cells && cr_cells);
                    });
      if (np_cells && cr_cells) {
        StitchBlocks out{subdivision_from_compact(ctx, *np_cells),
                         subdivision_from_compact(ctx, *cr_cells), u};
        return out;
      }
    }
  }
  return std::nullopt;
}

}  // namespace tcnkit
