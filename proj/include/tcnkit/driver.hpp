#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tcnkit/dual_curve.hpp"
#include "tcnkit/enumeration.hpp"
#include "tcnkit/multigraph.hpp"
#include "tcnkit/regularity.hpp"
#include "tcnkit/subdivision.hpp"

namespace tcnkit {

struct DriverOptions {
  int jobs = 2;
  std::string cache_dir;
  EnumerationBudget budget;
  // Level-specific nodal budgets (node count -> cap on distinct nodal
  // subdivisions per polygon); levels listed here run as explicit partial
  // coverage instead of failing on budget.
  std::vector<std::pair<int, std::uint64_t>> partial_levels;
  std::function<void(const std::string&)> log;
};

struct PolygonLevelReport {
  LatticePolygon polygon;
  EnumerationStats stats;
  bool exhausted = false;
};

struct LevelReport {
  int c = 0;
  int polygon_genus = 0;
  bool exhausted = true;
  bool partial = false;  // ran under an explicit partial budget
  std::uint64_t connected = 0;
  std::uint64_t matched = 0;
  std::vector<PolygonLevelReport> polygons;

  double coverage() const {
    if (polygons.empty()) return 0.0;
    int done = 0;
    for (auto& p : polygons)
      if (p.exhausted) ++done;
    return static_cast<double>(done) / static_cast<double>(polygons.size());
  }
};

struct TcnWitness {
  Subdivision subdivision;
  HeightCertificate certificate;
};

struct TcnResult {
  CanonicalKey graph_key;
  std::optional<int> tcn;             // set when resolved exactly
  std::optional<int> upper_bound;     // witness found at this level
  int proven_lower_bound = 0;         // levels 0..lb-1 exhausted empty
  bool chain_shortcut = false;
  std::optional<TcnWitness> witness;
  std::vector<LevelReport> levels;
};

// The level-by-level sweep: chains short-circuit to 0; otherwise polygons of
// genus g + c are swept with c nodes for c = 0, 1, ... until the graph
// appears as a connected skeleton. Witnesses re-verify end to end before
// being returned.
TcnResult compute_tcn(const Multigraph& g, int max_c, const DriverOptions& opt);

struct ClassifyEntry {
  Multigraph graph;
  CanonicalKey key;
  bool chain = false;
  bool troplanar = false;
  std::optional<TcnWitness> witness;
};

struct ClassifyResult {
  int genus = 0;
  std::vector<ClassifyEntry> entries;
  LevelReport level;
  int troplanar_count = 0;
  int non_troplanar_count = 0;
};

// c = 0 sweep over the maximal non-hyperelliptic catalog plus the chain
// rule; chains missing a catalog witness pick one up from a hyperelliptic
// rectangle sweep.
ClassifyResult troplanar_classify(int g, const DriverOptions& opt);

struct AuditReport {
  int polygon_genus = 0;
  int c = 0;
  std::uint64_t subdivisions = 0;  // regular nodal subdivisions examined
  std::uint64_t connected = 0;
  std::uint64_t disconnected = 0;
  std::uint64_t trivial = 0;
  std::uint64_t shared_pairs = 0;  // component pairs sharing >= 1 node
  bool exhausted = true;
  std::vector<std::string> violations;
};

// Sweeps genus-(polygon_genus) maximal non-hyperelliptic polygons with c
// nodes, asserting the genus identity g = i - n on every connected skeleton
// and that no two distinct 2-connected components share exactly one node.
AuditReport audit_sweep(int polygon_genus, int c, const DriverOptions& opt);

// All connected skeletons from nodal subdivisions (c <= c_max) of the
// hyperelliptic genus-g rectangle must be chains.
std::vector<AuditReport> hyperelliptic_chain_audit(int g, int c_max, const DriverOptions& opt);

struct StitchResult {
  Subdivision subdivision;
  HeightCertificate certificate;
  Multigraph skeleton;
  int block_count = 0;
  int nonplanar_blocks = 0;
  int crowded_blocks = 0;
  bool bridge_path = false;
};

// Patches d copies of block_np and k-d copies of block_cr end to end along
// their primitive side pair and checks the advertised skeleton shape.
StitchResult stitch_construction(int d, int k, const Subdivision& block_np,
                                 const Subdivision& block_cr);

struct StitchBlocks {
  Subdivision block_np;  // 1-node, 2-connected non-planar skeleton
  Subdivision block_cr;  // 1-node, 2-connected crowded skeleton
  LatticePoint stack_vector;  // translation gluing consecutive copies
};

// Scans 1-node regular subdivisions of stackable parallelograms (side pair
// (0,1)) of increasing area for the two block kinds over a common polygon.
std::optional<StitchBlocks> find_stitch_blocks(const DriverOptions& opt, int max_area);

// Search a sweep level for the first regular subdivision whose connected
// skeleton matches the target; nullopt when the level exhausts empty.
std::optional<TcnWitness> find_skeleton_witness(const LatticePolygon& polygon, int c,
                                                const Multigraph& target,
                                                const DriverOptions& opt);

}  // namespace tcnkit
