#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tcnkit {

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LatticePoint {
  long long x = 0;
  long long y = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  LatticePoint operator+(LatticePoint o) const { return {x + o.x, y + o.y}; }
  LatticePoint operator-(LatticePoint o) const { return {x - o.x, y - o.y}; }
};

inline long long cross(LatticePoint a, LatticePoint b) { return a.x * b.y - a.y * b.x; }
inline long long dot(LatticePoint a, LatticePoint b) { return a.x * b.x + a.y * b.y; }
// Orientation of c relative to the directed line a->b: >0 left, 0 on, <0 right.
inline long long orient(LatticePoint a, LatticePoint b, LatticePoint c) {
  return cross(b - a, c - a);
}
long long gcd_ll(long long a, long long b);
LatticePoint primitive(LatticePoint v);

// Unimodular affine map x |-> M x + t with det(M) = +-1.
struct UnimodularMap {
  long long m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  long long tx = 0, ty = 0;

  LatticePoint apply(LatticePoint p) const {
    return {m00 * p.x + m01 * p.y + tx, m10 * p.x + m11 * p.y + ty};
  }
  long long det() const { return m00 * m11 - m01 * m10; }
  UnimodularMap compose(const UnimodularMap& inner) const;  // this after inner
  UnimodularMap inverse() const;
  static UnimodularMap translation(long long dx, long long dy) {
    return {1, 0, 0, 1, dx, dy};
  }
};

// Convex lattice polygon. Vertices are stored counterclockwise, strictly
// convex (no collinear triple of consecutive vertices), starting at the
// lexicographically smallest vertex.
class LatticePolygon {
 public:
  explicit LatticePolygon(std::vector<LatticePoint> vertices);

  const std::vector<LatticePoint>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }

  long long area2() const;  // twice the area (shoelace)
  bool contains(LatticePoint p) const;           // closed polygon
  bool contains_strictly(LatticePoint p) const;  // interior only

  LatticePolygon transformed(const UnimodularMap& u) const;

  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;

 private:
  std::vector<LatticePoint> verts_;
};

struct InteriorHull {
  // Convex hull of the interior lattice points, tagged by dimension.
  struct Empty {
    friend bool operator==(const Empty&, const Empty&) = default;
  };
  struct Point {
    LatticePoint p;
    friend bool operator==(const Point&, const Point&) = default;
  };
  struct Segment {
    LatticePoint a, b;  // endpoints, a < b
    friend bool operator==(const Segment&, const Segment&) = default;
  };
  std::variant<Empty, Point, Segment, LatticePolygon> value;

  bool is_two_dimensional() const {
    return std::holds_alternative<LatticePolygon>(value);
  }
};

std::vector<LatticePoint> lattice_points(const LatticePolygon& p);
long long genus(const LatticePolygon& p);
long long boundary_point_count(const LatticePolygon& p);
InteriorHull interior_hull(const LatticePolygon& p);
bool is_hyperelliptic(const LatticePolygon& p);  // requires genus >= 1

// Canonical representative of the orbit under GL2(Z) plus translation.
LatticePolygon normal_form(const LatticePolygon& p);
// Unimodular maps sending p onto itself (identity included).
std::vector<UnimodularMap> automorphisms(const LatticePolygon& p);

// Convex hull of a point set (ccw, collinear interior points removed).
// Returns nullopt when the hull is not two-dimensional.
std::optional<LatticePolygon> convex_hull(std::vector<LatticePoint> pts);

// Moves every supporting half-plane of q (primitive outward normals) out by
// one and intersects. Returns the result only when all vertices of the
// intersection are lattice points and its interior hull is exactly q.
std::optional<LatticePolygon> relax(const LatticePolygon& q);

// All two-dimensional lattice polygon classes with exactly k lattice points,
// in normal form, sorted. Supported for 3 <= k <= 12.
const std::vector<LatticePolygon>& polygon_classes_with_points(int k);

// All maximal non-hyperelliptic polygons of the given genus, in normal form,
// sorted. Supported for 3 <= g <= 7.
const std::vector<LatticePolygon>& enumerate_maximal_nonhyperelliptic(int g);

// A hyperelliptic genus-g polygon: the relaxation of a g-point segment,
// i.e. the rectangle [0, g+1] x [0, 2].
LatticePolygon hyperelliptic_rectangle(int g);

std::string to_string(LatticePoint p);
std::string to_string(const LatticePolygon& p);

}  // namespace tcnkit
