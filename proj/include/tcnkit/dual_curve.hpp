#pragma once

#include <optional>
#include <vector>

#include "tcnkit/multigraph.hpp"
#include "tcnkit/rational.hpp"
#include "tcnkit/regularity.hpp"
#include "tcnkit/subdivision.hpp"

namespace tcnkit {

// Dual tropical curve of a nodal subdivision. One vertex per triangle cell;
// strands walk through consecutive parallelograms via opposite parallel
// edges, so a strand records the ordered list of crossings it passes.
// Node identifiers are parallelogram cell indices in canonical cell order.
struct StrandEnd {
  bool at_triangle = false;
  int triangle_cell = -1;                     // cell index when at_triangle
  std::pair<LatticePoint, LatticePoint> boundary_edge{};  // else: boundary side
};

struct Strand {
  StrandEnd a, b;
  std::vector<int> nodes;  // parallelogram cells crossed, in walk order
  bool closed = false;     // a cycle entirely through parallelograms
};

struct DualCurve {
  std::vector<int> triangle_cells;  // cells that carry a curve vertex
  std::vector<Strand> strands;      // bounded edges, rays, free lines, loops
  // Tie-point of each cell's monomials (index = cell index), present when a
  // height certificate was supplied.
  std::vector<std::optional<std::pair<Rational, Rational>>> positions;
};

DualCurve dualize(const Subdivision& s, const HeightCertificate* cert = nullptr);

// Side report for crossings that do not survive skeletonization.
struct DroppedNode {
  int node = -1;
  // "free-strand", "ray-strand", "pruned-strand"
  std::string reason;
};

struct SkeletonComponent {
  enum class Kind { Point, Cycle, Graph } kind = Kind::Point;
  Multigraph graph;  // for Cycle: one vertex with a loop; for Point: empty
};

struct SkeletonResult {
  enum class Kind { TrivialPoint, TrivialCycle, Connected, Disconnected };
  Kind kind = Kind::TrivialPoint;
  Multigraph graph;  // when Connected: trivalent with provenance
  std::vector<SkeletonComponent> components;  // when Disconnected
  std::vector<DroppedNode> side_report;

  bool connected() const { return kind == Kind::Connected; }
};

SkeletonResult skeletonize(const DualCurve& c);

namespace engine {

// Compact path used by sweeps: dual + skeleton in one pass without
// materializing a Subdivision. Provenance is kept.
SkeletonResult skeletonize_cells(const PointContext& ctx, const CompactCells& cells);

}  // namespace engine

}  // namespace tcnkit
