#include "tcnkit/svg_render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "tcnkit/dual_curve.hpp"

namespace tcnkit {

namespace {

// Rationals are kept exact until this final conversion (6 decimal places).
std::string fixed6(const Rational& r) {
  mpz_class scaled_num = r.get_num() * 1000000;
  mpz_class q = scaled_num / r.get_den();
  // Round toward nearest (ties away from zero).
  mpz_class rem = scaled_num % r.get_den();
  mpz_class half = r.get_den() / 2;
  if (rem < 0) rem = -rem;
  if (rem * 2 >= r.get_den()) q += (scaled_num < 0 ? -1 : 1);
  bool neg = q < 0;
  mpz_class a = neg ? mpz_class(-q) : q;
  mpz_class whole = a / 1000000, frac = a % 1000000;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%s.%06lu", neg ? "-" : "", whole.get_str().c_str(),
                frac.get_ui());
  return buf;
}

struct Mapper {
  double scale;
  double ox, oy;
  double sx(const Rational& x) const { return ox + scale * std::stod(fixed6(x)); }
  double sy(const Rational& y) const { return oy - scale * std::stod(fixed6(y)); }
  double px(long long x) const { return ox + scale * static_cast<double>(x); }
  double py(long long y) const { return oy - scale * static_cast<double>(y); }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Subdivision& s, const HeightCertificate& cert,
                       const RenderSpec& spec) {
  if (spec.scale <= 0) throw input_error("render scale must be positive");
  if (!verify_height_certificate(s, cert))
    throw input_error("render requires a valid regular certificate");
  DualCurve dual = dualize(s, &cert);

  long long xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (auto& v : s.polygon().vertices()) {
    if (first) {
      xmin = xmax = v.x;
      ymin = ymax = v.y;
      first = false;
    }
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const double margin = 2.0 * spec.scale;
  Mapper m{static_cast<double>(spec.scale), margin - spec.scale * static_cast<double>(xmin),
           margin + spec.scale * static_cast<double>(ymax)};
  double width = (xmax - xmin) * spec.scale + 2 * margin;
  double height = (ymax - ymin) * spec.scale + 2 * margin;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";

  PointContext ctx(s.polygon());
  CompactCells cells = compact_from_subdivision(ctx, s);

  if (spec.show_subdivision) {
    out << "<g stroke=\"#888\" stroke-width=\"1\" fill=\"none\">\n";
    for (auto& c : cells) {
      auto vs = cell_vertices_ccw(ctx, c);
      int n = c.kind == 0 ? 3 : 4;
      out << "<polygon points=\"";
      for (int i = 0; i < n; ++i) {
        if (i) out << " ";
        out << num(m.px(vs[i].x)) << "," << num(m.py(vs[i].y));
      }
      out << "\"/>\n";
    }
    out << "</g>\n<g fill=\"#444\">\n";
    for (auto& p : ctx.points) {
      out << "<circle cx=\"" << num(m.px(p.x)) << "\" cy=\"" << num(m.py(p.y))
          << "\" r=\"2\"/>\n";
    }
    out << "</g>\n";
  }

  if (spec.show_dual) {
    auto pos = [&](int cell) {
      auto& p = dual.positions[cell];
      return std::make_pair(m.sx(p->first), m.sy(p->second));
    };
    // Outward normal of a boundary edge, in screen coordinates, unit length.
    auto outward = [&](std::pair<LatticePoint, LatticePoint> edge) {
      LatticePoint a = edge.first, b = edge.second;
      LatticePoint dvec = b - a;
      long long nx = dvec.y, ny = -dvec.x;
      // Orient outward: midpoint + normal must leave the polygon (tested
      // with doubled coordinates to stay integral).
      std::vector<LatticePoint> scaled;
      for (auto& v : s.polygon().vertices()) scaled.push_back({2 * v.x, 2 * v.y});
      LatticePolygon doubled(scaled);
      if (doubled.contains({a.x + b.x + nx, a.y + b.y + ny})) {
        nx = -nx;
        ny = -ny;
      }
      double norm = std::hypot(static_cast<double>(nx), static_cast<double>(ny));
      return std::make_pair(nx / norm, -ny / norm);  // screen y flips
    };
    out << "<g stroke=\"#c33\" stroke-width=\"1.5\" fill=\"none\">\n";
    for (auto& st : dual.strands) {
      if (st.closed) {
        std::vector<std::pair<double, double>> loop;
        for (int nd : st.nodes) loop.push_back(pos(nd));
        if (loop.size() >= 2) {
          out << "<polygon points=\"";
          for (std::size_t i = 0; i < loop.size(); ++i) {
            if (i) out << " ";
            out << num(loop[i].first) << "," << num(loop[i].second);
          }
          out << "\"/>\n";
        }
        continue;
      }
      // Polyline: endpoint, crossings in order, endpoint; boundary ends
      // extend from the adjacent point along the outward normal.
      std::vector<std::pair<double, double>> pts;
      if (st.a.at_triangle) pts.push_back(pos(st.a.triangle_cell));
      for (int nd : st.nodes) pts.push_back(pos(nd));
      if (st.b.at_triangle) pts.push_back(pos(st.b.triangle_cell));
      const double len = spec.ray_length * spec.scale;
      if (!st.a.at_triangle && spec.show_rays) {
        auto [nx, ny] = outward(st.a.boundary_edge);
        std::pair<double, double> anchor =
            pts.empty() ? std::make_pair((m.px(st.a.boundary_edge.first.x) +
                                          m.px(st.a.boundary_edge.second.x)) /
                                             2,
                                         (m.py(st.a.boundary_edge.first.y) +
                                          m.py(st.a.boundary_edge.second.y)) /
                                             2)
                        : pts.front();
        pts.insert(pts.begin(), {anchor.first + nx * len, anchor.second + ny * len});
      }
      if (!st.b.at_triangle && spec.show_rays) {
        auto [nx, ny] = outward(st.b.boundary_edge);
        std::pair<double, double> anchor =
            pts.empty() ? std::make_pair((m.px(st.b.boundary_edge.first.x) +
                                          m.px(st.b.boundary_edge.second.x)) /
                                             2,
                                         (m.py(st.b.boundary_edge.first.y) +
                                          m.py(st.b.boundary_edge.second.y)) /
                                             2)
                        : pts.back();
        pts.push_back({anchor.first + nx * len, anchor.second + ny * len});
      }
      if (pts.size() >= 2) {
        out << "<polyline points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
          if (i) out << " ";
          out << num(pts[i].first) << "," << num(pts[i].second);
        }
        out << "\"/>\n";
      }
    }
    out << "</g>\n";
    if (spec.show_nodes) {
      out << "<g fill=\"none\" stroke=\"#06c\" stroke-width=\"1.5\">\n";
      for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        if (cells[ci].kind != 1) continue;
        auto [x, y] = pos(static_cast<int>(ci));
        double r = 5;
        out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
            << "\"/>\n";
      }
      out << "</g>\n";
    }
    out << "<g fill=\"#c33\">\n";
    for (int cell : dual.triangle_cells) {
      auto [x, y] = pos(cell);
      out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tcnkit
