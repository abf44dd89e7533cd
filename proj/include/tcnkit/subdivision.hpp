#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tcnkit/geometry.hpp"
#include "tcnkit/rational.hpp"

namespace tcnkit {

enum class CellKind : std::uint8_t { Triangle, Parallelogram };

// A unimodular triangle (lattice area 1/2) or unit parallelogram (area 1),
// vertices counterclockwise starting at the lexicographically smallest.
struct Cell {
  CellKind kind = CellKind::Triangle;
  std::array<LatticePoint, 4> v{};

  int size() const { return kind == CellKind::Triangle ? 3 : 4; }
  static Cell triangle(LatticePoint a, LatticePoint b, LatticePoint c);
  static Cell parallelogram(LatticePoint a, LatticePoint b, LatticePoint c, LatticePoint d);

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Lattice points of a polygon with index lookup; shared by the enumeration
// and regularity engines so cells can be handled as small index tuples.
struct PointContext {
  LatticePolygon polygon;
  std::vector<LatticePoint> points;  // sorted
  std::vector<bool> boundary;
  int interior_count = 0;

  explicit PointContext(LatticePolygon poly);
  int index_of(LatticePoint p) const;  // -1 when absent
  // Point-index permutations induced by the polygon's automorphisms.
  std::vector<std::vector<std::uint8_t>> automorphism_perms() const;
};

// Cell as sorted point indices; idx[3] = kNoIndex for triangles.
struct CompactCell {
  static constexpr std::uint8_t kNoIndex = 255;
  std::uint8_t kind = 0;  // 0 triangle, 1 parallelogram
  std::array<std::uint8_t, 4> idx{kNoIndex, kNoIndex, kNoIndex, kNoIndex};

  friend bool operator==(const CompactCell&, const CompactCell&) = default;
  friend auto operator<=>(const CompactCell&, const CompactCell&) = default;
};
using CompactCells = std::vector<CompactCell>;  // kept sorted

// Vertices of a compact cell in ccw order starting at the smallest vertex.
std::array<LatticePoint, 4> cell_vertices_ccw(const PointContext& ctx, const CompactCell& c);

std::string cells_code(const CompactCells& cells);
CompactCells cells_from_code(const std::string& code, std::size_t point_count);

class Subdivision {
 public:
  // Validates structure: cells are unimodular triangles / unit
  // parallelograms, sides pair up or lie on the boundary traversing it
  // exactly once, areas add up, and every lattice point is used.
  Subdivision(LatticePolygon polygon, std::vector<Cell> cells);

  const LatticePolygon& polygon() const { return polygon_; }
  const std::vector<Cell>& cells() const { return cells_; }  // canonical order
  int node_count() const;

  friend bool operator==(const Subdivision&, const Subdivision&) = default;

 private:
  LatticePolygon polygon_;
  std::vector<Cell> cells_;
};

Subdivision subdivision_from_compact(const PointContext& ctx, const CompactCells& cells);
CompactCells compact_from_subdivision(const PointContext& ctx, const Subdivision& s);

// Structural validation on compact cells; throws input_error on violation.
void validate_cells(const PointContext& ctx, const CompactCells& cells);

struct Flip {
  std::pair<LatticePoint, LatticePoint> shared_edge;
  std::pair<LatticePoint, LatticePoint> opposite_vertices;
};

// All flippable interior edges of a unimodular triangulation.
std::vector<Flip> flips(const Subdivision& t);
Subdivision apply_flip(const Subdivision& t, const Flip& f);

// Interior edges whose two triangles union to a unit parallelogram
// (opposite vertices summing to the shared edge's endpoints).
std::vector<Flip> unit_parallelogram_candidates(const Subdivision& t);

// Replace each picked diagonal's triangle pair by one parallelogram.
// Picks must be pairwise cell-disjoint.
Subdivision coarsen(const Subdivision& t, const std::vector<Flip>& picks);

// A regular unimodular triangulation of p, seeded from the given insertion
// order of its lattice points (heights from a perturbed concave paraboloid).
Subdivision placing_triangulation(const LatticePolygon& p,
                                  const std::vector<LatticePoint>& order);
Subdivision placing_triangulation(const LatticePolygon& p);  // lexicographic order

// Glue s2 (transformed by map) onto s1 along a shared boundary edge of
// lattice length 1. The union must be convex; the result is checked regular.
Subdivision patch(const Subdivision& s1, const Subdivision& s2, const UnimodularMap& map);

// Compact-level helpers used by the enumeration engine.
namespace engine {

struct EdgeRef {
  std::uint8_t a, b;  // a < b
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

// cells, plus for every interior edge the (up to 2) incident cell indices.
struct CellAdjacency {
  // For each edge (sorted pair), indices into the cell list.
  std::vector<std::pair<EdgeRef, std::array<std::int16_t, 2>>> edges;
  static CellAdjacency build(const CompactCells& cells);
};

struct CompactFlip {
  EdgeRef edge;          // shared diagonal
  std::uint8_t p, q;     // opposite vertices
  std::int16_t c1, c2;   // incident cell indices
};

std::vector<CompactFlip> triangulation_flips(const PointContext& ctx, const CompactCells& cells,
                                             const CellAdjacency& adj, bool parallelogram_only);
CompactCells apply_flip(const CompactCells& cells, const CompactFlip& f);
CompactCells coarsen(const CompactCells& cells, const std::vector<CompactFlip>& picks);

}  // namespace engine

}  // namespace tcnkit
