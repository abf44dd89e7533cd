#include "tcnkit/subdivision.hpp"

#include <algorithm>
#include <set>

#include "tcnkit/regularity.hpp"

namespace tcnkit {

namespace {

// Rotate a ccw vertex cycle so it starts at the lex-smallest vertex.
template <std::size_t N>
void rotate_to_min(std::array<LatticePoint, 4>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < N; ++i)
    if (v[i] < v[best]) best = i;
  std::array<LatticePoint, 4> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = v[(best + i) % N];
  v = out;
}

}  // namespace

Cell Cell::triangle(LatticePoint a, LatticePoint b, LatticePoint c) {
  long long o = orient(a, b, c);
  if (o == 0) throw input_error("degenerate triangle cell");
  Cell cell;
  cell.kind = CellKind::Triangle;
  cell.v = {a, b, c, LatticePoint{}};
  if (o < 0) std::swap(cell.v[1], cell.v[2]);
  rotate_to_min<3>(cell.v);
  cell.v[3] = LatticePoint{};
  if (orient(cell.v[0], cell.v[1], cell.v[2]) != 1)
    throw input_error("triangle cell is not unimodular");
  return cell;
}

Cell Cell::parallelogram(LatticePoint a, LatticePoint b, LatticePoint c, LatticePoint d) {
  // Expect a cycle (in either orientation) of a parallelogram: a + c = b + d.
  if (!(a + c == b + d)) throw input_error("parallelogram cell: opposite vertices must agree");
  Cell cell;
  cell.kind = CellKind::Parallelogram;
  cell.v = {a, b, c, d};
  long long o = orient(a, b, c);
  if (o == 0) throw input_error("degenerate parallelogram cell");
  if (o < 0) std::swap(cell.v[1], cell.v[3]);
  rotate_to_min<4>(cell.v);
  if (orient(cell.v[0], cell.v[1], cell.v[2]) != 1)
    throw input_error("parallelogram cell is not unit area");
  return cell;
}

PointContext::PointContext(LatticePolygon poly) : polygon(std::move(poly)) {
  points = lattice_points(polygon);
  if (points.size() > 254) throw budget_error("polygon has too many lattice points");
  boundary.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    boundary[i] = !polygon.contains_strictly(points[i]);
    if (!boundary[i]) ++interior_count;
  }
}

int PointContext::index_of(LatticePoint p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || !(*it == p)) return -1;
  return static_cast<int>(it - points.begin());
}

std::vector<std::vector<std::uint8_t>> PointContext::automorphism_perms() const {
  std::vector<std::vector<std::uint8_t>> perms;
  for (auto& u : automorphisms(polygon)) {
    std::vector<std::uint8_t> perm(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      int j = index_of(u.apply(points[i]));
      if (j < 0) throw std::logic_error("automorphism does not permute lattice points");
      perm[i] = static_cast<std::uint8_t>(j);
    }
    perms.push_back(std::move(perm));
  }
  return perms;
}

std::array<LatticePoint, 4> cell_vertices_ccw(const PointContext& ctx, const CompactCell& c) {
  std::array<LatticePoint, 4> out{};
  if (c.kind == 0) {
    LatticePoint a = ctx.points[c.idx[0]], b = ctx.points[c.idx[1]], d = ctx.points[c.idx[2]];
    if (orient(a, b, d) > 0) {
      out = {a, b, d, LatticePoint{}};
    } else {
      out = {a, d, b, LatticePoint{}};
    }
  } else {
    // Sorted indices of a parallelogram: find the diagonal pairing, then
    // order the cycle ccw starting at the smallest vertex.
    LatticePoint p[4];
    for (int i = 0; i < 4; ++i) p[i] = ctx.points[c.idx[i]];
    int opp = -1;
    for (int j = 1; j < 4; ++j) {
      int k1 = (j == 1) ? 2 : 1;
      int k2 = (j == 3) ? 2 : 3;
      if (p[0] + p[j] == p[k1] + p[k2]) {
        opp = j;
        break;
      }
    }
    if (opp < 0) throw input_error("compact cell is not a parallelogram");
    int n1 = (opp == 1) ? 2 : 1;
    int n2 = (opp == 3) ? 2 : 3;
    if (orient(p[0], p[n1], p[opp]) < 0) std::swap(n1, n2);
    out = {p[0], p[n1], p[opp], p[n2]};
  }
  return out;
}

std::string cells_code(const CompactCells& cells) {
  std::string code;
  code.reserve(cells.size() * 5);
  for (auto& c : cells) {
    code.push_back(static_cast<char>(c.kind));
    for (int i = 0; i < 4; ++i) code.push_back(static_cast<char>(c.idx[i]));
  }
  return code;
}

CompactCells cells_from_code(const std::string& code, std::size_t point_count) {
  if (code.size() % 5 != 0) throw input_error("bad cell code length");
  CompactCells cells(code.size() / 5);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto& c = cells[i];
    c.kind = static_cast<std::uint8_t>(code[5 * i]);
    if (c.kind > 1) throw input_error("bad cell kind in code");
    for (int j = 0; j < 4; ++j) c.idx[j] = static_cast<std::uint8_t>(code[5 * i + 1 + j]);
    int n = c.kind == 0 ? 3 : 4;
    for (int j = 0; j < n; ++j) {
      if (c.idx[j] >= point_count) throw input_error("cell index out of range");
      if (j && c.idx[j] <= c.idx[j - 1]) throw input_error("cell indices not sorted");
    }
    if (c.kind == 0 && c.idx[3] != CompactCell::kNoIndex)
      throw input_error("triangle code has four indices");
  }
  if (!std::is_sorted(cells.begin(), cells.end())) throw input_error("cell code not canonical");
  return cells;
}

void validate_cells(const PointContext& ctx, const CompactCells& cells) {
  if (cells.empty()) throw input_error("subdivision has no cells");
  long long area2 = 0;
  // side -> number of incidences
  std::map<std::pair<std::uint8_t, std::uint8_t>, int> side_count;
  std::vector<bool> used(ctx.points.size(), false);
  for (auto& c : cells) {
    auto vs = cell_vertices_ccw(ctx, c);
    int n = c.kind == 0 ? 3 : 4;
    for (int i = 0; i < n; ++i) {
      int j = ctx.index_of(vs[i]);
      if (j < 0) throw input_error("cell vertex is not a lattice point of the polygon");
      used[j] = true;
    }
    long long a2 = 0;
    for (int i = 0; i < n; ++i) a2 += cross(vs[i], vs[(i + 1) % n]);
    if (a2 != (c.kind == 0 ? 1 : 2)) throw input_error("cell has wrong area");
    area2 += a2;
    for (int i = 0; i < n; ++i) {
      std::uint8_t u = static_cast<std::uint8_t>(ctx.index_of(vs[i]));
      std::uint8_t v = static_cast<std::uint8_t>(ctx.index_of(vs[(i + 1) % n]));
      if (u > v) std::swap(u, v);
      if (++side_count[{u, v}] > 2) throw input_error("edge shared by more than two cells");
    }
  }
  if (area2 != ctx.polygon.area2()) throw input_error("cell areas do not tile the polygon");
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) throw input_error("lattice point unused by subdivision");
  }
  // Unpaired sides must lie on the polygon boundary; with matching area and
  // positive orientation this pins the cells to an exact tiling.
  const auto& vs = ctx.polygon.vertices();
  const std::size_t nv = vs.size();
  long long boundary_sides = 0;
  for (auto& [edge, count] : side_count) {
    if (count == 2) continue;
    LatticePoint a = ctx.points[edge.first], b = ctx.points[edge.second];
    bool on_boundary = false;
    for (std::size_t i = 0; i < nv && !on_boundary; ++i) {
      LatticePoint p = vs[i], q = vs[(i + 1) % nv];
      if (orient(p, q, a) == 0 && orient(p, q, b) == 0 && dot(a - p, q - a) >= 0 &&
          dot(b - p, q - b) >= 0)
        on_boundary = true;
    }
    if (!on_boundary) throw input_error("interior edge bounded by a single cell");
    ++boundary_sides;
  }
  if (boundary_sides != boundary_point_count(ctx.polygon))
    throw input_error("boundary sides do not traverse the polygon boundary");
}

Subdivision::Subdivision(LatticePolygon polygon, std::vector<Cell> cells)
    : polygon_(std::move(polygon)) {
  PointContext ctx(polygon_);
  CompactCells compact;
  compact.reserve(cells.size());
  for (auto& c : cells) {
    CompactCell cc;
    cc.kind = c.kind == CellKind::Triangle ? 0 : 1;
    int n = c.size();
    for (int i = 0; i < n; ++i) {
      int j = ctx.index_of(c.v[i]);
      if (j < 0) throw input_error("cell vertex outside polygon lattice points");
      cc.idx[i] = static_cast<std::uint8_t>(j);
    }
    std::sort(cc.idx.begin(), cc.idx.begin() + n);
    compact.push_back(cc);
  }
  std::sort(compact.begin(), compact.end());
  if (std::adjacent_find(compact.begin(), compact.end()) != compact.end())
    throw input_error("duplicate cells");
  validate_cells(ctx, compact);
  cells_.clear();
  cells_.reserve(compact.size());
  for (auto& cc : compact) {
    auto v = cell_vertices_ccw(ctx, cc);
    cells_.push_back(cc.kind == 0 ? Cell::triangle(v[0], v[1], v[2])
                                  : Cell::parallelogram(v[0], v[1], v[2], v[3]));
  }
}

int Subdivision::node_count() const {
  int n = 0;
  for (auto& c : cells_)
    if (c.kind == CellKind::Parallelogram) ++n;
  return n;
}

Subdivision subdivision_from_compact(const PointContext& ctx, const CompactCells& cells) {
  std::vector<Cell> out;
  out.reserve(cells.size());
  for (auto& cc : cells) {
    auto v = cell_vertices_ccw(ctx, cc);
    out.push_back(cc.kind == 0 ? Cell::triangle(v[0], v[1], v[2])
                               : Cell::parallelogram(v[0], v[1], v[2], v[3]));
  }
  return Subdivision(ctx.polygon, std::move(out));
}

CompactCells compact_from_subdivision(const PointContext& ctx, const Subdivision& s) {
  CompactCells compact;
  compact.reserve(s.cells().size());
  for (auto& c : s.cells()) {
    CompactCell cc;
    cc.kind = c.kind == CellKind::Triangle ? 0 : 1;
    int n = c.size();
    for (int i = 0; i < n; ++i) {
      int j = ctx.index_of(c.v[i]);
      if (j < 0) throw input_error("cell vertex outside polygon lattice points");
      cc.idx[i] = static_cast<std::uint8_t>(j);
    }
    std::sort(cc.idx.begin(), cc.idx.begin() + n);
    compact.push_back(cc);
  }
  std::sort(compact.begin(), compact.end());
  return compact;
}

namespace engine {

CellAdjacency CellAdjacency::build(const CompactCells& cells) {
  // Triangulations only; nodal adjacency is built where parallelogram side
  // geometry is available.
  std::vector<std::pair<std::uint16_t, std::int16_t>> inc;
  inc.reserve(cells.size() * 3);
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const auto& c = cells[ci];
    if (c.kind != 0) throw input_error("adjacency requires a triangulation");
    auto key = [](std::uint8_t a, std::uint8_t b) {
      return static_cast<std::uint16_t>((a << 8) | b);
    };
    inc.push_back({key(c.idx[0], c.idx[1]), static_cast<std::int16_t>(ci)});
    inc.push_back({key(c.idx[0], c.idx[2]), static_cast<std::int16_t>(ci)});
    inc.push_back({key(c.idx[1], c.idx[2]), static_cast<std::int16_t>(ci)});
  }
  std::sort(inc.begin(), inc.end());
  CellAdjacency adj;
  adj.edges.reserve(inc.size());
  for (std::size_t i = 0; i < inc.size(); ++i) {
    EdgeRef e{static_cast<std::uint8_t>(inc[i].first >> 8),
              static_cast<std::uint8_t>(inc[i].first & 0xff)};
    if (i + 1 < inc.size() && inc[i + 1].first == inc[i].first) {
      adj.edges.push_back({e, {inc[i].second, inc[i + 1].second}});
      ++i;
    } else {
      adj.edges.push_back({e, {inc[i].second, -1}});
    }
  }
  return adj;
}

std::vector<CompactFlip> triangulation_flips(const PointContext& ctx, const CompactCells& cells,
                                             const CellAdjacency& adj, bool parallelogram_only) {
  std::vector<CompactFlip> out;
  for (auto& [e, cs] : adj.edges) {
    if (cs[1] < 0) continue;  // boundary edge
    const auto& t1 = cells[cs[0]];
    const auto& t2 = cells[cs[1]];
    auto third = [&](const CompactCell& t) -> std::uint8_t {
      for (int i = 0; i < 3; ++i)
        if (t.idx[i] != e.a && t.idx[i] != e.b) return t.idx[i];
      return CompactCell::kNoIndex;
    };
    std::uint8_t p = third(t1), q = third(t2);
    LatticePoint P = ctx.points[p], Q = ctx.points[q];
    LatticePoint U = ctx.points[e.a], V = ctx.points[e.b];
    if (parallelogram_only) {
      if (!(P + Q == U + V)) continue;
    } else {
      // Strictly convex quadrilateral U, P, V, Q.
      long long o1 = orient(U, P, V), o2 = orient(P, V, Q), o3 = orient(V, Q, U),
                o4 = orient(Q, U, P);
      bool pos = o1 > 0 && o2 > 0 && o3 > 0 && o4 > 0;
      bool neg = o1 < 0 && o2 < 0 && o3 < 0 && o4 < 0;
      if (!pos && !neg) continue;
    }
    CompactFlip f;
    f.edge = e;
    f.p = p;
    f.q = q;
    f.c1 = cs[0];
    f.c2 = cs[1];
    out.push_back(f);
  }
  return out;
}

CompactCells apply_flip(const CompactCells& cells, const CompactFlip& f) {
  CompactCells out;
  out.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (static_cast<std::int16_t>(i) == f.c1 || static_cast<std::int16_t>(i) == f.c2) continue;
    out.push_back(cells[i]);
  }
  auto mk = [&](std::uint8_t a, std::uint8_t b, std::uint8_t c) {
    CompactCell cc;
    cc.kind = 0;
    std::array<std::uint8_t, 3> v{a, b, c};
    std::sort(v.begin(), v.end());
    cc.idx = {v[0], v[1], v[2], CompactCell::kNoIndex};
    return cc;
  };
  out.push_back(mk(f.p, f.q, f.edge.a));
  out.push_back(mk(f.p, f.q, f.edge.b));
  std::sort(out.begin(), out.end());
  return out;
}

CompactCells coarsen(const CompactCells& cells, const std::vector<CompactFlip>& picks) {
  std::set<std::int16_t> removed;
  for (auto& f : picks) {
    if (!removed.insert(f.c1).second || !removed.insert(f.c2).second)
      throw input_error("coarsen picks overlap");
  }
  CompactCells out;
  out.reserve(cells.size() - picks.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (removed.count(static_cast<std::int16_t>(i))) continue;
    out.push_back(cells[i]);
  }
  for (auto& f : picks) {
    CompactCell cc;
    cc.kind = 1;
    std::array<std::uint8_t, 4> v{f.edge.a, f.edge.b, f.p, f.q};
    std::sort(v.begin(), v.end());
    cc.idx = v;
    out.push_back(cc);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace engine

namespace {

engine::CellAdjacency build_triangulation_adjacency(const CompactCells& cells) {
  for (auto& c : cells) {
    if (c.kind != 0) throw input_error("operation requires a triangulation without nodes");
  }
  return engine::CellAdjacency::build(cells);
}

}  // namespace

std::vector<Flip> flips(const Subdivision& t) {
  PointContext ctx(t.polygon());
  CompactCells cells = compact_from_subdivision(ctx, t);
  auto adj = build_triangulation_adjacency(cells);
  std::vector<Flip> out;
  for (auto& f : engine::triangulation_flips(ctx, cells, adj, false)) {
    out.push_back({{ctx.points[f.edge.a], ctx.points[f.edge.b]},
                   {ctx.points[f.p], ctx.points[f.q]}});
  }
  return out;
}

std::vector<Flip> unit_parallelogram_candidates(const Subdivision& t) {
  PointContext ctx(t.polygon());
  CompactCells cells = compact_from_subdivision(ctx, t);
  auto adj = build_triangulation_adjacency(cells);
  std::vector<Flip> out;
  for (auto& f : engine::triangulation_flips(ctx, cells, adj, true)) {
    out.push_back({{ctx.points[f.edge.a], ctx.points[f.edge.b]},
                   {ctx.points[f.p], ctx.points[f.q]}});
  }
  return out;
}

namespace {

engine::CompactFlip locate_flip(const PointContext& ctx, const CompactCells& cells,
                                const engine::CellAdjacency& adj, const Flip& f,
                                bool parallelogram_only) {
  int ea = ctx.index_of(f.shared_edge.first), eb = ctx.index_of(f.shared_edge.second);
  if (ea < 0 || eb < 0) throw input_error("flip edge is not a lattice point pair");
  for (auto& cf : engine::triangulation_flips(ctx, cells, adj, parallelogram_only)) {
    if ((cf.edge.a == std::min(ea, eb)) && (cf.edge.b == std::max(ea, eb))) return cf;
  }
  throw input_error("edge is not flippable in this triangulation");
}

}  // namespace

Subdivision apply_flip(const Subdivision& t, const Flip& f) {
  PointContext ctx(t.polygon());
  CompactCells cells = compact_from_subdivision(ctx, t);
  auto adj = build_triangulation_adjacency(cells);
  auto cf = locate_flip(ctx, cells, adj, f, false);
  return subdivision_from_compact(ctx, engine::apply_flip(cells, cf));
}

Subdivision coarsen(const Subdivision& t, const std::vector<Flip>& picks) {
  PointContext ctx(t.polygon());
  CompactCells cells = compact_from_subdivision(ctx, t);
  auto adj = build_triangulation_adjacency(cells);
  std::vector<engine::CompactFlip> cfs;
  cfs.reserve(picks.size());
  for (auto& f : picks) cfs.push_back(locate_flip(ctx, cells, adj, f, true));
  return subdivision_from_compact(ctx, engine::coarsen(cells, cfs));
}

Subdivision placing_triangulation(const LatticePolygon& p,
                                  const std::vector<LatticePoint>& order) {
  PointContext ctx(p);
  if (order.size() != ctx.points.size())
    throw input_error("placing order must be a permutation of the lattice points");
  std::vector<bool> seen(ctx.points.size(), false);
  for (auto& q : order) {
    int i = ctx.index_of(q);
    if (i < 0 || seen[i]) throw input_error("placing order must be a permutation");
    seen[i] = true;
  }
  // Heights from a concave paraboloid plus an order-dependent perturbation:
  // every point stays on the upper hull, generic jitter forces triangles.
  for (std::uint64_t seed = 0x9e3779b97f4a7c15ull;; ++seed) {
    std::map<LatticePoint, Rational> heights;
    std::uint64_t s = seed;
    auto next = [&s]() {
      s += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    };
    for (auto& q : order) {
      long long jitter = static_cast<long long>(next() % 65536);
      heights[q] = rat(-(q.x * q.x + q.y * q.y)) + rat(jitter, 65536 * 4);
    }
    GeneralSubdivision g = subdivision_from_heights(p, heights);
    bool all_triangles = true;
    std::vector<Cell> cells;
    for (auto& gc : g.cells) {
      if (gc.size() != 3) {
        all_triangles = false;
        break;
      }
      cells.push_back(Cell::triangle(gc[0], gc[1], gc[2]));
    }
    if (all_triangles) return Subdivision(p, std::move(cells));
  }
}

Subdivision placing_triangulation(const LatticePolygon& p) {
  return placing_triangulation(p, lattice_points(p));
}

Subdivision patch(const Subdivision& s1, const Subdivision& s2, const UnimodularMap& map) {
  // Transform s2, merge the cell lists, and validate the union.
  std::vector<Cell> cells;
  for (auto& c : s1.cells()) cells.push_back(c);
  for (auto& c : s2.cells()) {
    if (c.kind == CellKind::Triangle) {
      cells.push_back(Cell::triangle(map.apply(c.v[0]), map.apply(c.v[1]), map.apply(c.v[2])));
    } else {
      cells.push_back(Cell::parallelogram(map.apply(c.v[0]), map.apply(c.v[1]),
                                          map.apply(c.v[2]), map.apply(c.v[3])));
    }
  }
  std::vector<LatticePoint> all;
  for (auto& v : s1.polygon().vertices()) all.push_back(v);
  for (auto& v : s2.polygon().vertices()) all.push_back(map.apply(v));
  auto hull = convex_hull(all);
  if (!hull) throw input_error("patch: degenerate union");
  // The glued boundary edge must have lattice length 1: the polygons must
  // share exactly two lattice points, joined by a primitive segment.
  LatticePolygon p2 = s2.polygon().transformed(map);
  std::vector<LatticePoint> shared;
  for (auto& q : lattice_points(s1.polygon())) {
    if (p2.contains(q)) shared.push_back(q);
  }
  if (shared.size() != 2) throw input_error("patch: polygons must share exactly one edge");
  LatticePoint d = shared[1] - shared[0];
  if (gcd_ll(d.x, d.y) != 1) throw input_error("patch: shared edge must have lattice length 1");
  long long a2_sum = s1.polygon().area2() + p2.area2();
  if (hull->area2() != a2_sum) throw input_error("patch: union is not convex");
  Subdivision out(*hull, std::move(cells));
  auto check = check_regular(out);
  if (!check.regular) throw std::logic_error("patched subdivision is unexpectedly non-regular");
  return out;
}

}  // namespace tcnkit
