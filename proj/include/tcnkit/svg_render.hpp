#pragma once

#include <string>

#include "tcnkit/regularity.hpp"
#include "tcnkit/subdivision.hpp"

namespace tcnkit {

struct RenderSpec {
  int scale = 48;  // pixels per lattice unit
  bool show_subdivision = true;
  bool show_dual = true;
  bool show_rays = true;
  bool show_nodes = true;
  double ray_length = 1.4;  // lattice units
};

// Draws the subdivision on the lattice together with its dual curve: one
// vertex per cell at the tie point of the lifted monomials, edges
// perpendicular to the dual subdivision edges, rays outward, parallelogram
// nodes marked as crossings. Requires a regular certificate; output is
// deterministic byte for byte.
std::string render_svg(const Subdivision& s, const HeightCertificate& cert,
                       const RenderSpec& spec);

}  // namespace tcnkit
