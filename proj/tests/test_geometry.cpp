#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "tcnkit/geometry.hpp"

using namespace tcnkit;

namespace {

LatticePolygon tri(long long ax, long long ay, long long bx, long long by, long long cx,
                   long long cy) {
  return LatticePolygon({{ax, ay}, {bx, by}, {cx, cy}});
}

// Brute-force box-scan oracle for lattice point sets.
std::set<LatticePoint> box_scan(const LatticePolygon& p) {
  long long lo = -100, hi = 100;
  std::set<LatticePoint> out;
  for (long long x = lo; x <= hi; ++x)
    for (long long y = lo; y <= hi; ++y)
      if (p.contains({x, y})) out.insert({x, y});
  return out;
}

UnimodularMap random_unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> small(-4, 4);
  // Random product of shears and flips always has det +-1.
  UnimodularMap u;
  for (int i = 0; i < 3; ++i) {
    UnimodularMap s{1, small(rng), 0, 1, 0, 0};
    UnimodularMap t{1, 0, small(rng), 1, 0, 0};
    u = s.compose(t).compose(u);
  }
  if (rng() & 1) u = UnimodularMap{0, 1, 1, 0, 0, 0}.compose(u);
  u.tx = small(rng);
  u.ty = small(rng);
  return u;
}

}  // namespace

TEST_CASE("lattice_points on small polygons") {
  auto unit = tri(0, 0, 1, 0, 0, 1);
  CHECK(lattice_points(unit) == std::vector<LatticePoint>{{0, 0}, {0, 1}, {1, 0}});

  auto two = tri(0, 0, 2, 0, 0, 2);
  CHECK(lattice_points(two).size() == 6);

  auto four = tri(0, 0, 4, 0, 0, 4);
  auto pts = lattice_points(four);
  CHECK(pts.size() == 15);
  auto oracle = box_scan(four);
  CHECK(std::set<LatticePoint>(pts.begin(), pts.end()) == oracle);
}

TEST_CASE("lattice_points equals box-scan oracle on assorted polygons") {
  std::vector<LatticePolygon> polys = {
      tri(0, 0, 1, 0, 0, 1),
      tri(0, 0, 4, 0, 0, 4),
      LatticePolygon({{0, 0}, {3, 0}, {3, 3}, {0, 3}}),
      LatticePolygon({{-1, -1}, {5, -1}, {-1, 2}}),
      LatticePolygon({{-1, -1}, {3, 1}, {1, 3}}),
      LatticePolygon({{0, 0}, {5, 0}, {0, 2}}),
      LatticePolygon({{0, 0}, {2, 1}, {1, 2}}),
  };
  for (auto& p : polys) {
    auto pts = lattice_points(p);
    CHECK(std::set<LatticePoint>(pts.begin(), pts.end()) == box_scan(p));
  }
}

TEST_CASE("genus") {
  CHECK(genus(tri(0, 0, 1, 0, 0, 1)) == 0);
  CHECK(genus(tri(0, 0, 4, 0, 0, 4)) == 3);
  CHECK(genus(LatticePolygon({{0, 0}, {3, 0}, {3, 3}, {0, 3}})) == 4);
}

TEST_CASE("interior hull variants") {
  auto empty = interior_hull(tri(0, 0, 1, 0, 0, 1));
  CHECK(std::holds_alternative<InteriorHull::Empty>(empty.value));

  auto seg = interior_hull(LatticePolygon({{0, 0}, {5, 0}, {0, 2}}));
  auto* s = std::get_if<InteriorHull::Segment>(&seg.value);
  REQUIRE(s != nullptr);
  CHECK(s->a == LatticePoint{1, 1});
  CHECK(s->b == LatticePoint{2, 1});

  auto hull = interior_hull(tri(0, 0, 4, 0, 0, 4));
  auto* poly = std::get_if<LatticePolygon>(&hull.value);
  REQUIRE(poly != nullptr);
  CHECK(poly->vertices() == std::vector<LatticePoint>{{1, 1}, {2, 1}, {1, 2}});

  auto pt = interior_hull(tri(0, 0, 2, 1, 1, 2));
  auto* q = std::get_if<InteriorHull::Point>(&pt.value);
  REQUIRE(q != nullptr);
  CHECK(q->p == LatticePoint{1, 1});
}

TEST_CASE("hyperellipticity") {
  CHECK(is_hyperelliptic(LatticePolygon({{0, 0}, {5, 0}, {0, 2}})));
  CHECK_FALSE(is_hyperelliptic(tri(0, 0, 4, 0, 0, 4)));
  CHECK_FALSE(is_hyperelliptic(LatticePolygon({{0, 0}, {3, 0}, {3, 3}, {0, 3}})));
  CHECK_THROWS_AS(is_hyperelliptic(tri(0, 0, 1, 0, 0, 1)), input_error);
}

TEST_CASE("normal form identifies equivalent polygons") {
  auto base = tri(0, 0, 1, 0, 0, 1);
  auto sheared = base.transformed({1, 1, 0, 1, 0, 0});
  CHECK(normal_form(base) == normal_form(sheared));

  auto four = tri(0, 0, 4, 0, 0, 4);
  auto moved = four.transformed(UnimodularMap::translation(7, -3));
  CHECK(normal_form(four) == normal_form(moved));

  auto reflected = four.transformed({0, 1, 1, 0, 0, 0});  // det -1
  CHECK(normal_form(four) == normal_form(reflected));
}

TEST_CASE("normal form is idempotent and unimodular-invariant") {
  std::mt19937_64 rng(20240817);
  std::vector<LatticePolygon> polys = {
      tri(0, 0, 4, 0, 0, 4),
      LatticePolygon({{0, 0}, {3, 0}, {3, 3}, {0, 3}}),
      LatticePolygon({{0, 0}, {2, 0}, {0, 1}}),
      LatticePolygon({{-1, -1}, {3, 1}, {1, 3}}),
  };
  for (auto& p : polys) {
    auto nf = normal_form(p);
    CHECK(normal_form(nf) == nf);
    for (int i = 0; i < 1000; ++i) {
      auto u = random_unimodular(rng);
      CHECK(normal_form(p.transformed(u)) == nf);
    }
  }
}

TEST_CASE("normal form distinguishes inequivalent polygons") {
  CHECK(normal_form(tri(0, 0, 1, 0, 0, 1)) != normal_form(tri(0, 0, 2, 0, 0, 2)));
  CHECK(normal_form(LatticePolygon({{0, 0}, {3, 0}, {3, 3}, {0, 3}})) !=
        normal_form(LatticePolygon({{-1, -1}, {5, -1}, {-1, 2}})));
}

TEST_CASE("relax on hand-computed examples") {
  auto r1 = relax(tri(1, 1, 2, 1, 1, 2));
  REQUIRE(r1.has_value());
  CHECK(*r1 == tri(0, 0, 4, 0, 0, 4));

  auto r2 = relax(LatticePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  REQUIRE(r2.has_value());
  CHECK(*r2 == LatticePolygon({{-1, -1}, {2, -1}, {2, 2}, {-1, 2}}));
  CHECK(genus(*r2) == 4);

  auto r3 = relax(tri(0, 0, 1, 0, 0, 1));
  REQUIRE(r3.has_value());
  CHECK(*r3 == tri(-1, -1, 3, -1, -1, 3));
  CHECK(genus(*r3) == 3);
}

TEST_CASE("relax fails when a shifted corner is not a lattice point") {
  // Flat 5-point triangle: the relaxed corner lands at a non-integer point.
  CHECK_FALSE(relax(LatticePolygon({{0, 0}, {3, 0}, {0, 1}})).has_value());
}

TEST_CASE("maximal non-hyperelliptic catalog counts 1/3/4") {
  auto& g3 = enumerate_maximal_nonhyperelliptic(3);
  REQUIRE(g3.size() == 1);
  CHECK(g3[0] == normal_form(tri(0, 0, 4, 0, 0, 4)));

  auto& g4 = enumerate_maximal_nonhyperelliptic(4);
  CHECK(g4.size() == 3);

  auto& g5 = enumerate_maximal_nonhyperelliptic(5);
  CHECK(g5.size() == 4);

  for (auto& list : {g3, g4, g5}) {
    for (auto& p : list) {
      CHECK_FALSE(is_hyperelliptic(p));
      // Maximality fixed point: relaxing the interior hull recovers the polygon.
      auto hull = interior_hull(p);
      auto* ih = std::get_if<LatticePolygon>(&hull.value);
      REQUIRE(ih != nullptr);
      auto r = relax(*ih);
      REQUIRE(r.has_value());
      CHECK(normal_form(*r) == p);
    }
  }
}

TEST_CASE("catalog rejects out-of-range genus") {
  CHECK_THROWS_AS(enumerate_maximal_nonhyperelliptic(2), budget_error);
  CHECK_THROWS_AS(enumerate_maximal_nonhyperelliptic(8), budget_error);
}

TEST_CASE("hyperelliptic rectangle") {
  auto p = hyperelliptic_rectangle(4);
  CHECK(genus(p) == 4);
  CHECK(is_hyperelliptic(p));
}

TEST_CASE("automorphisms map the polygon to itself") {
  auto sq = LatticePolygon({{0, 0}, {3, 0}, {3, 3}, {0, 3}});
  auto auts = automorphisms(sq);
  CHECK(auts.size() == 8);  // dihedral symmetry of the square
  for (auto& u : auts) CHECK(sq.transformed(u) == sq);

  auto t = tri(0, 0, 4, 0, 0, 4);
  auto tauts = automorphisms(t);
  CHECK(tauts.size() == 6);
  for (auto& u : tauts) CHECK(t.transformed(u) == t);
}
