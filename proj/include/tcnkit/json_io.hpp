#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "tcnkit/geometry.hpp"
#include "tcnkit/regularity.hpp"
#include "tcnkit/subdivision.hpp"

namespace tcnkit {

struct Multigraph;

// Schemas are documented in docs/formats.md. All readers validate and throw
// input_error with a message suitable for the CLI's error JSON.

nlohmann::json polygon_to_json(const LatticePolygon& p);
LatticePolygon polygon_from_json(const nlohmann::json& j);

nlohmann::json subdivision_to_json(const Subdivision& s);
Subdivision subdivision_from_json(const nlohmann::json& j);
Subdivision subdivision_from_json_stream(std::istream& in);

nlohmann::json height_certificate_to_json(const HeightCertificate& c);
HeightCertificate height_certificate_from_json(const nlohmann::json& j);

nlohmann::json farkas_to_json(const FarkasCertificate& f);
FarkasCertificate farkas_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const Multigraph& g);
Multigraph graph_from_json(const nlohmann::json& j);

nlohmann::json parse_json_stream(std::istream& in);

}  // namespace tcnkit
