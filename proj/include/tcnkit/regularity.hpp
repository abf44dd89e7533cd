#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcnkit/rational.hpp"
#include "tcnkit/subdivision.hpp"

namespace tcnkit {

struct HeightCertificate {
  std::map<LatticePoint, Rational> heights;  // defined on every lattice point
  Rational margin;                           // fold slack, > 0, capped at 1
};

// Nonnegative multipliers proving the fold system infeasible. Keys:
//   "fold:(x1,y1)-(x2,y2)"   fold constraint of the interior edge
//   "flat+:<k>" / "flat-:<k>" coplanarity of the k-th cell, either sign
struct FarkasCertificate {
  std::map<std::string, Rational> multipliers;
};

struct RegularityResult {
  bool regular = false;
  std::optional<HeightCertificate> certificate;  // when regular
  std::optional<FarkasCertificate> farkas;       // when not
};

RegularityResult check_regular(const Subdivision& s);

// Exact fold margin of given heights: nullopt if heights are missing or a
// parallelogram fails coplanarity; otherwise min fold slack over interior
// edges capped at 1.
std::optional<Rational> fold_margin(const Subdivision& s,
                                    const std::map<LatticePoint, Rational>& heights);

bool verify_height_certificate(const Subdivision& s, const HeightCertificate& c);
// Re-derives every constraint row and checks the nonnegative combination
// collapses to 0 = 0 with positive total fold weight.
bool verify_farkas(const Subdivision& s, const FarkasCertificate& f);

// Projection of the upper hull of the lifted lattice points: cells are the
// maximal domains of linearity, as ccw vertex cycles (general polygons when
// the lift has ties).
struct GeneralSubdivision {
  LatticePolygon polygon;
  std::vector<std::vector<LatticePoint>> cells;  // canonical order
};

GeneralSubdivision subdivision_from_heights(const LatticePolygon& p,
                                            const std::map<LatticePoint, Rational>& heights);

bool same_cells(const GeneralSubdivision& g, const Subdivision& s);

namespace engine {

// Compact result used by the enumeration pipeline; all certificate data is
// exact and verified before being returned.
struct RegularityCheck {
  bool regular = false;
  // Regular: heights per point index and the exact margin.
  std::vector<Rational> heights;
  Rational margin;
  // Not regular: fold multipliers per interior-edge constraint plus signed
  // coplanarity multipliers per parallelogram cell.
  std::vector<std::pair<std::pair<std::uint8_t, std::uint8_t>, Rational>> fold_multipliers;
  std::vector<std::pair<int, Rational>> flat_multipliers;
};

RegularityCheck check_regular_compact(const PointContext& ctx, const CompactCells& cells);

}  // namespace engine

}  // namespace tcnkit
