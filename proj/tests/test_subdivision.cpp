#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tcnkit/cache.hpp"
#include "tcnkit/enumeration.hpp"
#include "tcnkit/regularity.hpp"

using namespace tcnkit;

namespace {

std::set<std::string> flip_bfs_codes(const LatticePolygon& p, EnumerationOptions opt = {}) {
  std::set<std::string> out;
  std::mutex mu;
  opt.jobs = 2;
  engine::sweep(p, 0, opt,
                [&](const PointContext&, const CompactCells& cells, engine::LazyVerdict&) {
                  std::lock_guard<std::mutex> lock(mu);
                  out.insert(cells_code(cells));
                  return true;
                });
  return out;
}

}  // namespace

TEST_CASE("triangulation counts on pinned examples") {
  CHECK(flip_bfs_codes(LatticePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})).size() == 2);
  CHECK(flip_bfs_codes(LatticePolygon({{0, 0}, {2, 0}, {0, 1}})).size() == 1);
  // Frozen from the independent recursive oracle before the build.
  CHECK(oracle::all_triangulations(LatticePolygon({{0, 0}, {2, 0}, {0, 2}})).size() == 4);
  CHECK(flip_bfs_codes(LatticePolygon({{0, 0}, {2, 0}, {0, 2}})).size() == 4);
  // Published grid counts.
  CHECK(flip_bfs_codes(LatticePolygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}})).size() == 64);
  CHECK(flip_bfs_codes(LatticePolygon({{0, 0}, {1, 0}, {1, 2}, {0, 2}})).size() == 6);
}

TEST_CASE("unit square triangulations are both regular") {
  LatticePolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EnumerationOptions opt;
  int count = 0;
  auto stats = enumerate_unimodular_triangulations(
      sq, opt, [&](const Subdivision& s, bool regular) {
        CHECK(regular);
        CHECK(s.cells().size() == 2);
        ++count;
        return true;
      });
  CHECK(count == 2);
  CHECK(stats.exhausted);
}

TEST_CASE("oracle equivalence on every polygon class with at most 10 lattice points") {
  int checked = 0;
  for (int k = 3; k <= 10; ++k) {
    for (auto& p : polygon_classes_with_points(k)) {
      auto bfs = flip_bfs_codes(p);
      auto oracle_set = oracle::all_triangulations(p);
      CHECK(bfs == oracle_set);
      ++checked;
    }
  }
  CHECK(checked > 100);  // the class families are not tiny
  MESSAGE("polygon classes checked: ", checked);
}

TEST_CASE("flip closure is independent of the seed order") {
  LatticePolygon p({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  auto base = flip_bfs_codes(p);
  // Seed from a reversed insertion order.
  PointContext ctx(p);
  auto pts = ctx.points;
  std::reverse(pts.begin(), pts.end());
  auto seed = placing_triangulation(p, pts);
  CHECK(base.count(cells_code(compact_from_subdivision(ctx, seed))) == 1);
  // A different placing seed enumerates the same set because the engine
  // explores the full flip component.
  std::mt19937_64 rng(5);
  std::shuffle(pts.begin(), pts.end(), rng);
  auto seed2 = placing_triangulation(p, pts);
  CHECK(base.count(cells_code(compact_from_subdivision(ctx, seed2))) == 1);
}

TEST_CASE("nodal enumeration on the unit square") {
  LatticePolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EnumerationOptions opt;
  int count = 0;
  auto stats = enumerate_nodal_subdivisions(sq, 1, opt, [&](const Subdivision& s) {
    CHECK(s.node_count() == 1);
    CHECK(s.cells().size() == 1);
    ++count;
    return true;
  });
  CHECK(count == 1);
  CHECK(stats.exhausted);
}

TEST_CASE("nodal c=0 equals the regular triangulations") {
  LatticePolygon p({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  EnumerationOptions opt;
  std::set<std::string> nodal0;
  enumerate_nodal_subdivisions(p, 0, opt, [&](const Subdivision& s) {
    PointContext ctx(p);
    nodal0.insert(cells_code(compact_from_subdivision(ctx, s)));
    return true;
  });
  std::set<std::string> regular;
  enumerate_unimodular_triangulations(p, opt, [&](const Subdivision& s, bool reg) {
    if (reg) {
      PointContext ctx(p);
      regular.insert(cells_code(compact_from_subdivision(ctx, s)));
    }
    return true;
  });
  CHECK(nodal0 == regular);
}

TEST_CASE("nodal subdivisions carry the requested node count and dedup globally") {
  LatticePolygon p({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  EnumerationOptions opt;
  std::set<std::string> seen;
  enumerate_nodal_subdivisions(p, 1, opt, [&](const Subdivision& s) {
    CHECK(s.node_count() == 1);
    PointContext ctx(p);
    CHECK(seen.insert(cells_code(compact_from_subdivision(ctx, s))).second);
    return true;
  });
  CHECK(seen.size() > 10);
}

TEST_CASE("budget exhaustion raises budget_error") {
  LatticePolygon p({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  EnumerationOptions opt;
  opt.budget.max_triangulations = 5;
  CHECK_THROWS_AS(enumerate_unimodular_triangulations(
                      p, opt, [&](const Subdivision&, bool) { return true; }),
                  budget_error);
}

TEST_CASE("symmetry reduction yields orbit representatives") {
  LatticePolygon p({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  EnumerationOptions opt;
  opt.symmetry_reduction = true;
  opt.jobs = 1;
  std::uint64_t count = 0;
  auto stats = engine::sweep(
      p, 0, opt, [&](const PointContext&, const CompactCells&, engine::LazyVerdict&) {
        ++count;
        return true;
      });
  CHECK(stats.exhausted);
  CHECK(count < 64);      // fewer than the full set
  CHECK(count >= 64 / 8);  // at least total / |automorphism group|
}

TEST_CASE("enumeration cache: cold and warm runs agree, resume reproduces the set") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "tcnkit-test-cache";
  fs::remove_all(dir);

  LatticePolygon p({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  EnumerationOptions opt;
  opt.cache_dir = dir.string();
  auto cold = flip_bfs_codes(p, opt);
  CHECK(cold.size() == 64);
  auto warm = flip_bfs_codes(p, opt);
  CHECK(warm == cold);

  // Interrupt a fresh run after a few triangulations, then resume.
  fs::path dir2 = fs::temp_directory_path() / "tcnkit-test-cache2";
  fs::remove_all(dir2);
  EnumerationOptions opt2;
  opt2.cache_dir = dir2.string();
  opt2.jobs = 1;
  int stop_after = 7;
  engine::sweep(p, 0, opt2,
                [&](const PointContext&, const CompactCells&, engine::LazyVerdict&) {
                  return --stop_after > 0;
                });
  auto resumed = flip_bfs_codes(p, opt2);
  CHECK(resumed == cold);

  // Corrupt the cache tail: the loader quarantines it and the run recovers.
  PolygonCache cache(dir2.string(), p);
  {
    std::ofstream f(cache.tri_path(), std::ios::binary | std::ios::app);
    f << "garbage bytes that are no valid record";
  }
  auto recovered = flip_bfs_codes(p, opt2);
  CHECK(recovered == cold);

  // Empty cache dir behaves as a cold run.
  fs::path dir3 = fs::temp_directory_path() / "tcnkit-test-cache3";
  fs::remove_all(dir3);
  fs::create_directories(dir3);
  EnumerationOptions opt3;
  opt3.cache_dir = dir3.string();
  CHECK(flip_bfs_codes(p, opt3) == cold);

  fs::remove_all(dir);
  fs::remove_all(dir2);
  fs::remove_all(dir3);
}

TEST_CASE("200 randomized patch compositions along unit edges stay regular") {
  std::mt19937_64 rng(20250810);
  int done = 0;
  while (done < 200) {
    // Horizontal strips [0,a]x[0,1] glued along their vertical unit edges.
    int a = 1 + static_cast<int>(rng() % 3);
    int b = 1 + static_cast<int>(rng() % 3);
    LatticePolygon pa({{0, 0}, {a, 0}, {a, 1}, {0, 1}});
    LatticePolygon pb({{0, 0}, {b, 0}, {b, 1}, {0, 1}});
    PointContext ctx_a(pa), ctx_b(pb);
    auto order_a = ctx_a.points;
    auto order_b = ctx_b.points;
    std::shuffle(order_a.begin(), order_a.end(), rng);
    std::shuffle(order_b.begin(), order_b.end(), rng);
    Subdivision sa = placing_triangulation(pa, order_a);
    Subdivision sb = placing_triangulation(pb, order_b);
    // Occasionally coarsen a parallelogram; keep only regular pieces.
    auto maybe_coarsen = [&](Subdivision s) {
      auto cands = unit_parallelogram_candidates(s);
      if (!cands.empty() && (rng() & 1)) {
        auto t = coarsen(s, {cands[rng() % cands.size()]});
        if (check_regular(t).regular) return t;
      }
      return s;
    };
    sa = maybe_coarsen(sa);
    sb = maybe_coarsen(sb);
    auto glued = patch(sa, sb, UnimodularMap::translation(a, 0));
    auto check = check_regular(glued);
    REQUIRE(check.regular);
    // Occasionally stack a third strip.
    if (rng() % 4 == 0) {
      int c = 1 + static_cast<int>(rng() % 2);
      LatticePolygon pc({{0, 0}, {c, 0}, {c, 1}, {0, 1}});
      Subdivision sc = placing_triangulation(pc);
      auto glued2 = patch(glued, sc, UnimodularMap::translation(a + b, 0));
      REQUIRE(check_regular(glued2).regular);
    }
    ++done;
  }
  CHECK(done == 200);
}
