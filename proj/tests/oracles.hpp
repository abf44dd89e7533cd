#pragma once

// Test-only oracles, independent of the enumeration engine under test.

#include <set>
#include <string>
#include <vector>

#include "tcnkit/geometry.hpp"
#include "tcnkit/subdivision.hpp"

namespace tcnkit::oracle {

// Exhaustive recursive enumeration of all unimodular triangulations: fill
// the lexicographically smallest directed edge that still needs a triangle
// on its left. Complete by construction; no flips involved.
inline std::set<std::string> all_triangulations(const LatticePolygon& poly) {
  PointContext ctx(poly);
  const auto& pts = ctx.points;
  const int n = static_cast<int>(pts.size());

  auto proper_cross = [&](LatticePoint a, LatticePoint b, LatticePoint c, LatticePoint d) {
    // Segments ab, cd sharing an endpoint never properly cross.
    if (a == c || a == d || b == c || b == d) return false;
    long long o1 = orient(a, b, c), o2 = orient(a, b, d);
    long long o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
           o4 != 0;
  };

  std::set<std::pair<int, int>> need;  // directed: triangle required on the left
  std::set<std::pair<int, int>> used;  // undirected segments present
  const auto& verts = poly.vertices();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    LatticePoint a = verts[i], b = verts[(i + 1) % verts.size()];
    // Split the polygon edge at its lattice points, oriented ccw.
    LatticePoint step = primitive(b - a);
    LatticePoint cur = a;
    while (!(cur == b)) {
      LatticePoint nxt = cur + step;
      int u = ctx.index_of(cur), v = ctx.index_of(nxt);
      need.insert({u, v});
      used.insert({std::min(u, v), std::max(u, v)});
      cur = nxt;
    }
  }

  std::set<std::string> out;
  CompactCells cells;
  std::function<void()> rec = [&]() {
    if (need.empty()) {
      CompactCells sorted = cells;
      std::sort(sorted.begin(), sorted.end());
      out.insert(cells_code(sorted));
      return;
    }
    auto [u, v] = *need.begin();
    for (int w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      if (orient(pts[u], pts[v], pts[w]) != 1) continue;  // unimodular, left
      bool ok = true;
      for (auto seg : {std::pair<int, int>{u, w}, {v, w}}) {
        auto key = std::pair<int, int>{std::min(seg.first, seg.second),
                                       std::max(seg.first, seg.second)};
        if (used.count(key)) continue;
        for (auto& [a, b] : used) {
          if (proper_cross(pts[seg.first], pts[seg.second], pts[a], pts[b])) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) continue;
      // Apply: cover (u,v); sides (v,w),(w,u) either match an existing need
      // or open the opposite side.
      std::vector<std::pair<int, int>> added_need, removed_need;
      std::vector<std::pair<int, int>> added_used;
      auto add_side = [&](int x, int y) {
        if (need.count({x, y})) {
          need.erase({x, y});
          removed_need.push_back({x, y});
        } else {
          need.insert({y, x});
          added_need.push_back({y, x});
        }
        auto key = std::pair<int, int>{std::min(x, y), std::max(x, y)};
        if (!used.count(key)) {
          used.insert(key);
          added_used.push_back(key);
        }
      };
      add_side(u, v);
      add_side(v, w);
      add_side(w, u);
      CompactCell cell;
      cell.kind = 0;
      std::array<int, 3> ids{u, v, w};
      std::sort(ids.begin(), ids.end());
      cell.idx = {static_cast<std::uint8_t>(ids[0]), static_cast<std::uint8_t>(ids[1]),
                  static_cast<std::uint8_t>(ids[2]), CompactCell::kNoIndex};
      cells.push_back(cell);
      rec();
      cells.pop_back();
      for (auto& e : added_need) need.erase(e);
      for (auto& e : removed_need) need.insert(e);
      for (auto& e : added_used) used.erase(e);
    }
  };
  rec();
  return out;
}

}  // namespace tcnkit::oracle
