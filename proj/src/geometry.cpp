#include "tcnkit/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tcnkit {

long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

LatticePoint primitive(LatticePoint v) {
  long long g = gcd_ll(v.x, v.y);
  if (g == 0) throw input_error("primitive: zero vector");
  return {v.x / g, v.y / g};
}

UnimodularMap UnimodularMap::compose(const UnimodularMap& inner) const {
  UnimodularMap r;
  r.m00 = m00 * inner.m00 + m01 * inner.m10;
  r.m01 = m00 * inner.m01 + m01 * inner.m11;
  r.m10 = m10 * inner.m00 + m11 * inner.m10;
  r.m11 = m10 * inner.m01 + m11 * inner.m11;
  LatticePoint t = apply({inner.tx, inner.ty});
  r.tx = t.x;
  r.ty = t.y;
  return r;
}

UnimodularMap UnimodularMap::inverse() const {
  long long d = det();
  if (d != 1 && d != -1) throw input_error("UnimodularMap: determinant not +-1");
  UnimodularMap r;
  r.m00 = m11 * d;
  r.m01 = -m01 * d;
  r.m10 = -m10 * d;
  r.m11 = m00 * d;
  r.tx = -(r.m00 * tx + r.m01 * ty);
  r.ty = -(r.m10 * tx + r.m11 * ty);
  return r;
}

LatticePolygon::LatticePolygon(std::vector<LatticePoint> vertices) : verts_(std::move(vertices)) {
  if (verts_.size() < 3) throw input_error("polygon needs at least 3 vertices");
  std::set<LatticePoint> distinct(verts_.begin(), verts_.end());
  if (distinct.size() != verts_.size()) throw input_error("polygon has repeated vertices");

  long long a2 = 0;
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    const auto& p = verts_[i];
    const auto& q = verts_[(i + 1) % verts_.size()];
    a2 += cross(p, q);
  }
  if (a2 == 0) throw input_error("polygon is degenerate");
  if (a2 < 0) std::reverse(verts_.begin(), verts_.end());

  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    long long turn = orient(verts_[i], verts_[(i + 1) % n], verts_[(i + 2) % n]);
    if (turn <= 0) throw input_error("polygon is not strictly convex");
  }
  std::size_t start = std::min_element(verts_.begin(), verts_.end()) - verts_.begin();
  std::rotate(verts_.begin(), verts_.begin() + start, verts_.end());
}

long long LatticePolygon::area2() const {
  long long a2 = 0;
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    a2 += cross(verts_[i], verts_[(i + 1) % verts_.size()]);
  }
  return a2;
}

bool LatticePolygon::contains(LatticePoint p) const {
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(verts_[i], verts_[(i + 1) % n], p) < 0) return false;
  }
  return true;
}

bool LatticePolygon::contains_strictly(LatticePoint p) const {
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(verts_[i], verts_[(i + 1) % n], p) <= 0) return false;
  }
  return true;
}

LatticePolygon LatticePolygon::transformed(const UnimodularMap& u) const {
  std::vector<LatticePoint> vs;
  vs.reserve(verts_.size());
  for (auto& v : verts_) vs.push_back(u.apply(v));
  return LatticePolygon(std::move(vs));
}

std::vector<LatticePoint> lattice_points(const LatticePolygon& p) {
  long long ymin = p.vertices()[0].y, ymax = ymin;
  for (auto& v : p.vertices()) {
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  std::vector<LatticePoint> out;
  const auto& vs = p.vertices();
  const std::size_t n = vs.size();
  for (long long y = ymin; y <= ymax; ++y) {
    // Intersect the horizontal line with every edge to get the x-interval,
    // tracked as exact fractions.
    bool any = false;
    long long lo_num = 0, lo_den = 0, hi_num = 0, hi_den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      LatticePoint a = vs[i], b = vs[(i + 1) % n];
      if (a.y == b.y) {
        if (a.y == y) {
          for (long long xx : {a.x, b.x}) {
            if (!any) {
              lo_num = hi_num = xx;
              lo_den = hi_den = 1;
              any = true;
            } else {
              if (xx * lo_den < lo_num) lo_num = xx, lo_den = 1;
              if (xx * hi_den > hi_num) hi_num = xx, hi_den = 1;
            }
          }
        }
        continue;
      }
      long long y0 = std::min(a.y, b.y), y1 = std::max(a.y, b.y);
      if (y < y0 || y > y1) continue;
      // x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y)
      long long den = b.y - a.y;
      long long num = a.x * den + (y - a.y) * (b.x - a.x);
      if (den < 0) {
        den = -den;
        num = -num;
      }
      if (!any) {
        lo_num = hi_num = num;
        lo_den = hi_den = den;
        any = true;
      } else {
        if (num * lo_den < lo_num * den) lo_num = num, lo_den = den;
        if (num * hi_den > hi_num * den) hi_num = num, hi_den = den;
      }
    }
    if (!any) continue;
    auto ceil_div = [](long long a, long long b) {
      return a / b + ((a % b != 0 && (a ^ b) > 0) ? 1 : 0);
    };
    auto floor_div = [](long long a, long long b) {
      return a / b - ((a % b != 0 && (a ^ b) < 0) ? 1 : 0);
    };
    long long x0 = ceil_div(lo_num, lo_den), x1 = floor_div(hi_num, hi_den);
    for (long long x = x0; x <= x1; ++x) out.push_back({x, y});
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long boundary_point_count(const LatticePolygon& p) {
  long long b = 0;
  const auto& vs = p.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    LatticePoint d = vs[(i + 1) % vs.size()] - vs[i];
    b += gcd_ll(d.x, d.y);
  }
  return b;
}

long long genus(const LatticePolygon& p) {
  long long interior = 0;
  for (auto& q : lattice_points(p)) {
    if (p.contains_strictly(q)) ++interior;
  }
  // Pick cross-check: A = I + B/2 - 1, so 2A = 2I + B - 2.
  long long b = boundary_point_count(p);
  if (p.area2() != 2 * interior + b - 2) {
    throw std::logic_error("Pick's theorem violated (geometry bug)");
  }
  return interior;
}

std::optional<LatticePolygon> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return std::nullopt;
  auto build = [&](bool lower) {
    std::vector<LatticePoint> h;
    for (auto p : pts) {
      while (h.size() >= 2) {
        long long o = orient(h[h.size() - 2], h.back(), p);
        if (lower ? o <= 0 : o >= 0)
          h.pop_back();
        else
          break;
      }
      h.push_back(p);
    }
    return h;
  };
  auto lower = build(true), upper = build(false);
  std::vector<LatticePoint> hull(lower.begin(), lower.end() - 1);
  for (std::size_t i = upper.size(); i-- > 1;) hull.push_back(upper[i]);
  if (hull.size() < 3) return std::nullopt;
  long long a2 = 0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    a2 += cross(hull[i], hull[(i + 1) % hull.size()]);
  if (a2 == 0) return std::nullopt;
  return LatticePolygon(hull);
}

InteriorHull interior_hull(const LatticePolygon& p) {
  std::vector<LatticePoint> interior;
  for (auto& q : lattice_points(p)) {
    if (p.contains_strictly(q)) interior.push_back(q);
  }
  InteriorHull out;
  if (interior.empty()) {
    out.value = InteriorHull::Empty{};
  } else if (interior.size() == 1) {
    out.value = InteriorHull::Point{interior[0]};
  } else if (auto hull = convex_hull(interior)) {
    out.value = *hull;
  } else {
    std::sort(interior.begin(), interior.end());
    out.value = InteriorHull::Segment{interior.front(), interior.back()};
  }
  return out;
}

bool is_hyperelliptic(const LatticePolygon& p) {
  if (genus(p) < 1) throw input_error("hyperellipticity undefined for genus 0");
  return !interior_hull(p).is_two_dimensional();
}

namespace {

// Extended gcd: returns (g, a, b) with a*x + b*y = g.
std::array<long long, 3> ext_gcd(long long x, long long y) {
  if (y == 0) return {x, 1, 0};
  auto [g, a, b] = ext_gcd(y, x % y);
  return {g, b, a - (x / y) * b};
}

// Map with det +1 sending the primitive vector p to (1, 0).
UnimodularMap row_map(LatticePoint p) {
  auto [g, a, b] = ext_gcd(p.x, p.y);
  if (g < 0) {
    g = -g;
    a = -a;
    b = -b;
  }
  // (a, b) . p = 1; second row (-p.y, p.x) keeps det = +1.
  UnimodularMap u;
  u.m00 = a;
  u.m01 = b;
  u.m10 = -p.y;
  u.m11 = p.x;
  return u;
}

struct Candidate {
  std::vector<LatticePoint> verts;  // image vertex cycle, starts at origin
  UnimodularMap map;                // the map realizing it (applied to input)
};

// One candidate per (starting vertex, mirror) pair: start vertex to the
// origin, first edge onto the positive x-axis, shear reduced by the second
// edge. The lexicographic minimum over candidates is the normal form.
std::vector<Candidate> candidates(const LatticePolygon& p) {
  std::vector<Candidate> out;
  for (int mirror = 0; mirror < 2; ++mirror) {
    std::vector<LatticePoint> vs = p.vertices();
    UnimodularMap pre;
    if (mirror) {
      pre = UnimodularMap{1, 0, 0, -1, 0, 0};
      for (auto& v : vs) v = pre.apply(v);
      std::reverse(vs.begin(), vs.end());
    }
    const std::size_t n = vs.size();
    for (std::size_t s = 0; s < n; ++s) {
      LatticePoint v0 = vs[s];
      LatticePoint e = vs[(s + 1) % n] - v0;
      UnimodularMap u = row_map(primitive(e));
      u.tx = -(u.m00 * v0.x + u.m01 * v0.y);
      u.ty = -(u.m10 * v0.x + u.m11 * v0.y);
      LatticePoint w2 = u.apply(vs[(s + 2) % n]);
      long long t = w2.x >= 0 ? w2.x / w2.y : -((-w2.x + w2.y - 1) / w2.y);
      UnimodularMap shear{1, -t, 0, 1, 0, 0};
      UnimodularMap full = shear.compose(u);
      Candidate c;
      c.map = full.compose(pre);
      c.verts.reserve(n);
      for (std::size_t i = 0; i < n; ++i) c.verts.push_back(full.apply(vs[(s + i) % n]));
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

LatticePolygon normal_form(const LatticePolygon& p) {
  auto cands = candidates(p);
  const std::vector<LatticePoint>* best = nullptr;
  for (auto& c : cands) {
    if (!best || c.verts < *best) best = &c.verts;
  }
  return LatticePolygon(*best);
}

std::vector<UnimodularMap> automorphisms(const LatticePolygon& p) {
  auto cands = candidates(p);
  const std::vector<LatticePoint>* best = nullptr;
  for (auto& c : cands) {
    if (!best || c.verts < *best) best = &c.verts;
  }
  std::vector<UnimodularMap> out;
  UnimodularMap to_nf;
  bool first = true;
  for (auto& c : cands) {
    if (c.verts == *best) {
      if (first) {
        to_nf = c.map;
        first = false;
      }
      out.push_back(to_nf.inverse().compose(c.map));
    }
  }
  return out;
}

std::optional<LatticePolygon> relax(const LatticePolygon& q) {
  const auto& vs = q.vertices();
  const std::size_t n = vs.size();
  struct HalfPlane {
    LatticePoint a;   // primitive outward normal
    long long b = 0;  // a . x <= b
  };
  std::vector<HalfPlane> hp(n);
  for (std::size_t i = 0; i < n; ++i) {
    LatticePoint d = vs[(i + 1) % n] - vs[i];
    LatticePoint nrm = primitive({d.y, -d.x});  // outward for ccw
    hp[i] = {nrm, dot(nrm, vs[i]) + 1};
  }
  // Candidate vertices: pairwise line intersections feasible for all planes,
  // then the hull of that set.
  std::vector<LatticePoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      long long det = cross(hp[i].a, hp[j].a);
      if (det == 0) continue;
      long long xn = hp[i].b * hp[j].a.y - hp[j].b * hp[i].a.y;
      long long yn = hp[i].a.x * hp[j].b - hp[j].a.x * hp[i].b;
      if (xn % det != 0 || yn % det != 0) {
        // Non-lattice corner: feasible ones disqualify the relaxation.
        long long x2 = 2 * xn, y2 = 2 * yn, d2 = 2 * det;
        bool feasible = true;
        for (auto& h : hp) {
          long long lhs = h.a.x * x2 + h.a.y * y2;  // compare to b * d2
          if (d2 > 0 ? lhs > h.b * d2 : lhs < h.b * d2) {
            feasible = false;
            break;
          }
        }
        if (feasible) return std::nullopt;
        continue;
      }
      LatticePoint v{xn / det, yn / det};
      bool feasible = true;
      for (auto& h : hp) {
        if (dot(h.a, v) > h.b) {
          feasible = false;
          break;
        }
      }
      if (feasible) pts.push_back(v);
    }
  }
  auto hull = convex_hull(pts);
  if (!hull) return std::nullopt;
  // The interior hull of the relaxation must reproduce q exactly.
  std::vector<LatticePoint> interior;
  for (auto& pt : lattice_points(*hull)) {
    if (hull->contains_strictly(pt)) interior.push_back(pt);
  }
  std::vector<LatticePoint> qpts = lattice_points(q);
  std::sort(interior.begin(), interior.end());
  if (interior != qpts) return std::nullopt;
  return hull;
}

namespace {

// Lattice-convex configurations with k points, tracked up to equivalence.
// Dimension <= 1 classes are segments; 2-dimensional ones are polygons.
struct Config {
  std::vector<LatticePoint> pts;  // lattice points, sorted
  bool two_dim = false;
  std::string key;
};

std::string config_key(const std::vector<LatticePoint>& pts, bool two_dim) {
  if (!two_dim) return "seg:" + std::to_string(pts.size());
  auto hull = convex_hull(pts);
  return to_string(normal_form(*hull));
}

Config make_config(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  Config c;
  c.two_dim = convex_hull(pts).has_value();
  if (c.two_dim) {
    auto nf = normal_form(*convex_hull(pts));
    c.pts = lattice_points(nf);
  } else {
    c.pts.clear();
    for (std::size_t i = 0; i < pts.size(); ++i) c.pts.push_back({(long long)i, 0});
  }
  c.key = config_key(c.pts, c.two_dim);
  return c;
}

}  // namespace

const std::vector<LatticePolygon>& polygon_classes_with_points(int target) {
  static std::map<int, std::vector<LatticePolygon>> cache;
  if (auto it = cache.find(target); it != cache.end()) return it->second;
  if (target < 3 || target > 12) throw budget_error("polygon classes support 3..12 points");

  const long long box = 2 * target + 2;
  // Grow lattice-convex configurations one point at a time. Removing a hull
  // vertex from a k-point configuration leaves a (k-1)-point one, so every
  // class with k points is reached.
  std::vector<Config> level;
  level.push_back(make_config({{0, 0}, {1, 0}}));
  for (int k = 3; k <= target; ++k) {
    std::map<std::string, Config> next;
    for (auto& c : level) {
      for (long long x = -box; x <= box; ++x) {
        for (long long y = -box; y <= box; ++y) {
          LatticePoint p{x, y};
          if (std::binary_search(c.pts.begin(), c.pts.end(), p)) continue;
          std::vector<LatticePoint> pts = c.pts;
          pts.push_back(p);
          auto hull = convex_hull(pts);
          std::vector<LatticePoint> closed;
          if (hull) {
            closed = lattice_points(*hull);
          } else {
            std::sort(pts.begin(), pts.end());
            LatticePoint a = pts.front(), b = pts.back();
            long long steps = gcd_ll(b.x - a.x, b.y - a.y);
            if (steps + 1 != (long long)k) continue;
            closed = pts;
          }
          if ((long long)closed.size() != k) continue;
          Config nc = make_config(closed);
          next.emplace(nc.key, std::move(nc));
        }
      }
    }
    level.clear();
    for (auto& [key, c] : next) level.push_back(std::move(c));
  }
  std::vector<LatticePolygon> out;
  for (auto& c : level) {
    if (!c.two_dim) continue;
    out.push_back(*convex_hull(c.pts));
  }
  std::sort(out.begin(), out.end(), [](const LatticePolygon& a, const LatticePolygon& b) {
    return a.vertices() < b.vertices();
  });
  return cache.emplace(target, std::move(out)).first->second;
}

const std::vector<LatticePolygon>& enumerate_maximal_nonhyperelliptic(int g) {
  static std::map<int, std::vector<LatticePolygon>> cache;
  if (auto it = cache.find(g); it != cache.end()) return it->second;
  if (g < 3 || g > 7) throw budget_error("maximal polygon catalog supports genus 3..7");

  std::map<std::string, LatticePolygon> found;
  for (auto& q : polygon_classes_with_points(g)) {
    if (auto p = relax(q)) {
      LatticePolygon nf = normal_form(*p);
      found.emplace(to_string(nf), nf);
    }
  }
  std::vector<LatticePolygon> out;
  for (auto& [key, p] : found) out.push_back(p);
  std::sort(out.begin(), out.end(), [](const LatticePolygon& a, const LatticePolygon& b) {
    return a.vertices() < b.vertices();
  });
  return cache.emplace(g, std::move(out)).first->second;
}

LatticePolygon hyperelliptic_rectangle(int g) {
  if (g < 1) throw input_error("hyperelliptic rectangle needs genus >= 1");
  return LatticePolygon({{0, 0}, {g + 1, 0}, {g + 1, 2}, {0, 2}});
}

std::string to_string(LatticePoint p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::string to_string(const LatticePolygon& p) {
  std::string s;
  for (auto& v : p.vertices()) s += to_string(v);
  return s;
}

}  // namespace tcnkit
