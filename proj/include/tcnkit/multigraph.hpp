#pragma once

#include <string>
#include <vector>

#include "tcnkit/rational.hpp"

namespace tcnkit {

// Finite multigraph with loops. Edges are unordered pairs u <= v; a loop is
// (v, v) and contributes 2 to the degree. Skeletons carry per-edge node
// provenance (parallelogram ids crossed by the strand).
struct Multigraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> edge_provenance;  // empty or parallel to edges

  int genus() const { return static_cast<int>(edges.size()) - vertex_count + 1; }
  int degree(int v) const;
  bool is_connected() const;
  bool is_trivalent() const;

  static Multigraph from_edges(int n, std::vector<std::pair<int, int>> edges);
};

using CanonicalKey = std::string;

// Complete isomorphism invariant (loops and multiplicities respected);
// supports up to 16 vertices.
CanonicalKey canonical_key(const Multigraph& g);
bool isomorphic(const Multigraph& a, const Multigraph& b);

// All connected trivalent multigraphs of the given genus (2g-2 vertices),
// up to isomorphism, sorted by canonical key. Supported for 2 <= g <= 6.
const std::vector<Multigraph>& enumerate_trivalent(int g);

// g cycles in a line, adjacent cycles sharing an edge or joined by a bridge.
bool is_chain(const Multigraph& g);
// Some vertex whose removal leaves three components.
bool is_sprawling(const Multigraph& g);
// Every planar embedding (with every outer face choice) has two bounded
// faces sharing two edges or a bounded face sharing an edge with itself.
// Rejects non-planar input.
bool is_crowded(const Multigraph& g);

bool is_planar_multigraph(const Multigraph& g);

// Smooths over degree-2 vertices (concatenating their edges); a pure cycle
// collapses to a single loop vertex.
Multigraph smoothed(const Multigraph& g);

struct BlockDecomposition {
  std::vector<int> bridge_edges;            // indices into g.edges
  std::vector<int> edge_component;          // -1 for bridges
  std::vector<Multigraph> components;       // non-trivial (>= 1 edge)
  std::vector<std::vector<int>> component_vertices;  // component -> original ids
};
BlockDecomposition two_connected_components(const Multigraph& g);

// Exact treewidth (loops dropped, multi-edges collapsed); |V| <= 14.
int treewidth_exact(const Multigraph& g);

// max(0, 3/8 (tw-2)^2 - g + 1/2), exact.
Rational tcn_lower_bound(const Multigraph& g);

// Named fixtures.
Multigraph theta_graph();
Multigraph dumbbell_graph();
Multigraph k4_graph();
Multigraph k33_graph();
Multigraph lollipop_graph();  // the unique sprawling trivalent genus-3 graph

}  // namespace tcnkit
