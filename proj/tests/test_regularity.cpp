#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "tcnkit/json_io.hpp"
#include "tcnkit/regularity.hpp"
#include "tcnkit/subdivision.hpp"

using namespace tcnkit;

namespace {

Subdivision unit_triangle_single_cell() {
  LatticePolygon p({{0, 0}, {1, 0}, {0, 1}});
  return Subdivision(p, {Cell::triangle({0, 0}, {1, 0}, {0, 1})});
}

Subdivision square_with_diagonal() {
  LatticePolygon p({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  return Subdivision(p, {Cell::triangle({0, 0}, {1, 0}, {1, 1}),
                         Cell::triangle({0, 0}, {1, 1}, {0, 1})});
}

Subdivision square_parallelogram() {
  LatticePolygon p({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  return Subdivision(p, {Cell::parallelogram({0, 0}, {1, 0}, {1, 1}, {0, 1})});
}

}  // namespace

TEST_CASE("single cell is regular with zero heights and margin one") {
  auto r = check_regular(unit_triangle_single_cell());
  REQUIRE(r.regular);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->margin == Rational(1));
  for (auto& [pt, h] : r.certificate->heights) CHECK(h == Rational(0));
}

TEST_CASE("square with one diagonal is regular") {
  auto r = check_regular(square_with_diagonal());
  REQUIRE(r.regular);
  CHECK(verify_height_certificate(square_with_diagonal(), *r.certificate));
}

TEST_CASE("single parallelogram cell is regular") {
  auto r = check_regular(square_parallelogram());
  REQUIRE(r.regular);
  CHECK(r.certificate->margin == Rational(1));
}

TEST_CASE("round trip through subdivision_from_heights") {
  auto s = square_with_diagonal();
  auto r = check_regular(s);
  REQUIRE(r.regular);
  auto g = subdivision_from_heights(s.polygon(), r.certificate->heights);
  CHECK(same_cells(g, s));
}

TEST_CASE("flat heights give the trivial subdivision") {
  LatticePolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::map<LatticePoint, Rational> h;
  for (auto& q : lattice_points(sq)) h[q] = Rational(0);
  auto g = subdivision_from_heights(sq, h);
  REQUIRE(g.cells.size() == 1);
  CHECK(g.cells[0] == sq.vertices());
}

TEST_CASE("tent heights select the lifted diagonal") {
  LatticePolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::map<LatticePoint, Rational> h;
  h[{0, 0}] = Rational(0);
  h[{1, 1}] = Rational(0);
  h[{1, 0}] = Rational(-1);
  h[{0, 1}] = Rational(-1);
  auto g = subdivision_from_heights(sq, h);
  REQUIRE(g.cells.size() == 2);
  Subdivision expect(sq, {Cell::triangle({0, 0}, {1, 0}, {1, 1}),
                          Cell::triangle({0, 0}, {1, 1}, {0, 1})});
  CHECK(same_cells(g, expect));
}

TEST_CASE("certificates survive positive scaling and affine shifts") {
  auto s = square_with_diagonal();
  auto r = check_regular(s);
  REQUIRE(r.regular);
  std::map<LatticePoint, Rational> scaled;
  for (auto& [pt, h] : r.certificate->heights) {
    scaled[pt] = h * rat(7, 3) + rat(5) + rat(2) * rat(pt.x) - rat(11, 4) * rat(pt.y);
  }
  auto m = fold_margin(s, scaled);
  REQUIRE(m.has_value());
  CHECK(*m > 0);
  auto g = subdivision_from_heights(s.polygon(), scaled);
  CHECK(same_cells(g, s));
}

TEST_CASE("determinism: identical input gives identical certificate") {
  auto s = square_with_diagonal();
  auto a = check_regular(s);
  auto b = check_regular(s);
  REQUIRE(a.regular);
  REQUIRE(b.regular);
  CHECK(a.certificate->heights == b.certificate->heights);
  CHECK(a.certificate->margin == b.certificate->margin);
}

TEST_CASE("placing triangulation of small polygons") {
  LatticePolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  auto t = placing_triangulation(sq);
  CHECK(t.cells().size() == 2);
  CHECK(check_regular(t).regular);

  LatticePolygon flat({{0, 0}, {2, 0}, {0, 1}});
  auto u = placing_triangulation(flat);
  REQUIRE(u.cells().size() == 2);
  Subdivision expect(flat, {Cell::triangle({0, 0}, {1, 0}, {0, 1}),
                            Cell::triangle({1, 0}, {2, 0}, {0, 1})});
  CHECK(u == expect);

  LatticePolygon four({{0, 0}, {4, 0}, {0, 4}});
  auto v = placing_triangulation(four);
  CHECK(v.cells().size() == 16);
  CHECK(check_regular(v).regular);
}

TEST_CASE("flips on tiny triangulations") {
  auto s = square_with_diagonal();
  auto fl = flips(s);
  REQUIRE(fl.size() == 1);
  auto flipped = apply_flip(s, fl[0]);
  CHECK(flipped != s);
  auto back = apply_flip(flipped, flips(flipped)[0]);
  CHECK(back == s);

  LatticePolygon flat({{0, 0}, {2, 0}, {0, 1}});
  CHECK(flips(placing_triangulation(flat)).empty());
}

TEST_CASE("parallelogram candidates and coarsening") {
  auto s = square_with_diagonal();
  auto cands = unit_parallelogram_candidates(s);
  REQUIRE(cands.size() == 1);
  auto c = coarsen(s, cands);
  CHECK(c.node_count() == 1);
  CHECK(c == square_parallelogram());
  CHECK(coarsen(s, {}) == s);

  LatticePolygon flat({{0, 0}, {2, 0}, {0, 1}});
  CHECK(unit_parallelogram_candidates(placing_triangulation(flat)).empty());
}

TEST_CASE("patch glues two unit triangles into a regular square") {
  LatticePolygon t1({{0, 0}, {1, 0}, {1, 1}});
  Subdivision s1(t1, {Cell::triangle({0, 0}, {1, 0}, {1, 1})});
  LatticePolygon t2({{0, 0}, {1, 1}, {0, 1}});
  Subdivision s2(t2, {Cell::triangle({0, 0}, {1, 1}, {0, 1})});
  auto glued = patch(s1, s2, UnimodularMap{});
  CHECK(glued == square_with_diagonal());
}

TEST_CASE("patch glues two unit-square parallelograms into a strip") {
  auto s = square_parallelogram();
  auto glued = patch(s, s, UnimodularMap::translation(1, 0));
  CHECK(glued.polygon() == LatticePolygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}}));
  CHECK(glued.node_count() == 2);
}

TEST_CASE("patch rejects overlaps and long shared edges") {
  auto s = square_parallelogram();
  CHECK_THROWS_AS(patch(s, s, UnimodularMap{}), input_error);  // full overlap
  LatticePolygon wide({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
  Subdivision sw(wide, {Cell::parallelogram({0, 0}, {1, 0}, {1, 1}, {0, 1}),
                        Cell::parallelogram({1, 0}, {2, 0}, {2, 1}, {1, 1})});
  // Sharing the length-2 horizontal edge is rejected.
  CHECK_THROWS_AS(patch(sw, sw, UnimodularMap{1, 0, 0, -1, 0, 0}), input_error);
}

TEST_CASE("pinwheel fixture is rejected with a verifiable Farkas certificate") {
  std::ifstream in(std::string(TCNKIT_FIXTURE_DIR) + "/pinwheel.json");
  REQUIRE(in.good());
  auto s = subdivision_from_json_stream(in);
  CHECK(genus(s.polygon()) == 3);
  // Contains the inner triangle as a cell.
  bool has_inner = false;
  for (auto& c : s.cells()) {
    if (c.kind == CellKind::Triangle && c.v[0] == LatticePoint{1, 1} &&
        c.v[1] == LatticePoint{2, 1} && c.v[2] == LatticePoint{1, 2})
      has_inner = true;
  }
  CHECK(has_inner);
  auto r = check_regular(s);
  REQUIRE_FALSE(r.regular);
  REQUIRE(r.farkas.has_value());
  CHECK(verify_farkas(s, *r.farkas));
  // Multipliers are nonnegative and at least one fold participates.
  bool any_fold = false;
  for (auto& [key, mult] : r.farkas->multipliers) {
    CHECK(mult >= 0);
    if (key.rfind("fold:", 0) == 0 && mult > 0) any_fold = true;
  }
  CHECK(any_fold);
}
