#include "tcnkit/json_io.hpp"

#include <istream>

#include "tcnkit/multigraph.hpp"

namespace tcnkit {

namespace {

using nlohmann::json;

LatticePoint point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw input_error("point must be [x, y] with integer coordinates");
  return {j[0].get<long long>(), j[1].get<long long>()};
}

json point_to_json(LatticePoint p) { return json::array({p.x, p.y}); }

std::string point_key(LatticePoint p) {
  return std::to_string(p.x) + "," + std::to_string(p.y);
}

LatticePoint point_from_key(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw input_error("point key must be \"x,y\"");
  try {
    return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw input_error("point key must be \"x,y\"");
  }
}

}  // namespace

json polygon_to_json(const LatticePolygon& p) {
  json verts = json::array();
  for (auto& v : p.vertices()) verts.push_back(point_to_json(v));
  return json{{"vertices", verts}};
}

LatticePolygon polygon_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw input_error("polygon JSON needs a \"vertices\" array");
  std::vector<LatticePoint> verts;
  for (auto& v : j["vertices"]) verts.push_back(point_from_json(v));
  return LatticePolygon(std::move(verts));
}

json subdivision_to_json(const Subdivision& s) {
  json cells = json::array();
  for (auto& c : s.cells()) {
    json v = json::array();
    for (int i = 0; i < c.size(); ++i) v.push_back(point_to_json(c.v[i]));
    cells.push_back(json{{"kind", c.kind == CellKind::Triangle ? "triangle" : "parallelogram"},
                         {"v", v}});
  }
  json poly = json::array();
  for (auto& v : s.polygon().vertices()) poly.push_back(point_to_json(v));
  return json{{"polygon", poly}, {"cells", cells}};
}

Subdivision subdivision_from_json(const json& j) {
  if (!j.is_object() || !j.contains("polygon") || !j.contains("cells"))
    throw input_error("subdivision JSON needs \"polygon\" and \"cells\"");
  std::vector<LatticePoint> poly;
  for (auto& v : j["polygon"]) poly.push_back(point_from_json(v));
  std::vector<Cell> cells;
  if (!j["cells"].is_array()) throw input_error("\"cells\" must be an array");
  for (auto& c : j["cells"]) {
    if (!c.is_object() || !c.contains("kind") || !c.contains("v"))
      throw input_error("cell needs \"kind\" and \"v\"");
    std::string kind = c["kind"].get<std::string>();
    std::vector<LatticePoint> vs;
    for (auto& v : c["v"]) vs.push_back(point_from_json(v));
    if (kind == "triangle") {
      if (vs.size() != 3) throw input_error("triangle cell needs 3 vertices");
      cells.push_back(Cell::triangle(vs[0], vs[1], vs[2]));
    } else if (kind == "parallelogram") {
      if (vs.size() != 4) throw input_error("parallelogram cell needs 4 vertices");
      cells.push_back(Cell::parallelogram(vs[0], vs[1], vs[2], vs[3]));
    } else {
      throw input_error("cell kind must be \"triangle\" or \"parallelogram\"");
    }
  }
  return Subdivision(LatticePolygon(std::move(poly)), std::move(cells));
}

Subdivision subdivision_from_json_stream(std::istream& in) {
  return subdivision_from_json(parse_json_stream(in));
}

json height_certificate_to_json(const HeightCertificate& c) {
  json heights = json::object();
  for (auto& [pt, h] : c.heights) heights[point_key(pt)] = rational_to_string(h);
  return json{{"heights", heights}, {"margin", rational_to_string(c.margin)}};
}

HeightCertificate height_certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("heights") || !j.contains("margin"))
    throw input_error("certificate JSON needs \"heights\" and \"margin\"");
  HeightCertificate c;
  for (auto& [key, val] : j["heights"].items()) {
    c.heights[point_from_key(key)] = rational_from_string(val.get<std::string>());
  }
  c.margin = rational_from_string(j["margin"].get<std::string>());
  return c;
}

json farkas_to_json(const FarkasCertificate& f) {
  json mult = json::object();
  for (auto& [key, v] : f.multipliers) mult[key] = rational_to_string(v);
  return json{{"multipliers", mult}};
}

FarkasCertificate farkas_from_json(const json& j) {
  if (!j.is_object() || !j.contains("multipliers"))
    throw input_error("Farkas JSON needs \"multipliers\"");
  FarkasCertificate f;
  for (auto& [key, val] : j["multipliers"].items())
    f.multipliers[key] = rational_from_string(val.get<std::string>());
  return f;
}

json graph_to_json(const Multigraph& g) {
  json edges = json::array();
  for (auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
  return json{{"vertices", g.vertex_count}, {"edges", edges}};
}

Multigraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw input_error("graph JSON needs \"vertices\" and \"edges\"");
  if (!j["vertices"].is_number_integer()) throw input_error("\"vertices\" must be an integer");
  int n = j["vertices"].get<int>();
  std::vector<std::pair<int, int>> edges;
  for (auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw input_error("edge must be [u, v]");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return Multigraph::from_edges(n, std::move(edges));
}

json parse_json_stream(std::istream& in) {
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw input_error("malformed JSON");
  return j;
}

}  // namespace tcnkit
