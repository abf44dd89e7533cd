#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tcnkit/multigraph.hpp"

using namespace tcnkit;

namespace {

Multigraph relabel(const Multigraph& g, std::mt19937_64& rng) {
  std::vector<int> perm(g.vertex_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> edges;
  for (auto& [u, v] : g.edges) edges.push_back({perm[u], perm[v]});
  return Multigraph::from_edges(g.vertex_count, std::move(edges));
}

// Chain fixtures for genus 3 (paper's genus-3 troplanar graphs besides K4).
Multigraph ladder_graph() {  // 4-cycle with two opposite edges doubled
  return Multigraph::from_edges(4, {{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}});
}
Multigraph tadpole_theta_graph() {  // loop - bridge - triangle with doubled edge
  return Multigraph::from_edges(4, {{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 3}});
}
Multigraph chain3_graph() {  // loop - bridge - bigon - bridge - loop
  return Multigraph::from_edges(4, {{0, 0}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {3, 3}});
}

// Oracle: exhaustive scan over upper-triangle adjacency assignments for
// 4-vertex loopy cubic multigraphs, counting isomorphism classes by
// pairwise permutation matching (independent of canonical_key).
int genus3_class_count_oracle() {
  struct M {
    int a[4][4] = {};
  };
  std::vector<M> reps;
  int perm[] = {0, 1, 2, 3};
  auto iso = [&](const M& x, const M& y) {
    int p[4] = {0, 1, 2, 3};
    std::sort(p, p + 4);
    do {
      bool same = true;
      for (int i = 0; i < 4 && same; ++i)
        for (int j = 0; j < 4 && same; ++j)
          if (x.a[i][j] != y.a[p[i]][p[j]]) same = false;
      if (same) return true;
    } while (std::next_permutation(p, p + 4));
    return false;
  };
  (void)perm;
  // Diagonal entries 0/1 (loops), off-diagonal 0..3.
  for (int d0 = 0; d0 <= 1; ++d0)
    for (int d1 = 0; d1 <= 1; ++d1)
      for (int d2 = 0; d2 <= 1; ++d2)
        for (int d3 = 0; d3 <= 1; ++d3)
          for (int e01 = 0; e01 <= 3; ++e01)
            for (int e02 = 0; e02 <= 3; ++e02)
              for (int e03 = 0; e03 <= 3; ++e03)
                for (int e12 = 0; e12 <= 3; ++e12)
                  for (int e13 = 0; e13 <= 3; ++e13)
                    for (int e23 = 0; e23 <= 3; ++e23) {
                      int deg[4] = {2 * d0 + e01 + e02 + e03, 2 * d1 + e01 + e12 + e13,
                                    2 * d2 + e02 + e12 + e23, 2 * d3 + e03 + e13 + e23};
                      if (deg[0] != 3 || deg[1] != 3 || deg[2] != 3 || deg[3] != 3) continue;
                      M m;
                      m.a[0][0] = d0;
                      m.a[1][1] = d1;
                      m.a[2][2] = d2;
                      m.a[3][3] = d3;
                      m.a[0][1] = m.a[1][0] = e01;
                      m.a[0][2] = m.a[2][0] = e02;
                      m.a[0][3] = m.a[3][0] = e03;
                      m.a[1][2] = m.a[2][1] = e12;
                      m.a[1][3] = m.a[3][1] = e13;
                      m.a[2][3] = m.a[3][2] = e23;
                      // connectivity
                      bool seen[4] = {true, false, false, false};
                      for (int it = 0; it < 4; ++it)
                        for (int i = 0; i < 4; ++i)
                          for (int j = 0; j < 4; ++j)
                            if (seen[i] && i != j && m.a[i][j] > 0) seen[j] = true;
                      if (!(seen[0] && seen[1] && seen[2] && seen[3])) continue;
                      bool found = false;
                      for (auto& r : reps)
                        if (iso(m, r)) {
                          found = true;
                          break;
                        }
                      if (!found) reps.push_back(m);
                    }
  return static_cast<int>(reps.size());
}

}  // namespace

TEST_CASE("canonical key separates and identifies") {
  CHECK(canonical_key(theta_graph()) != canonical_key(dumbbell_graph()));
  Multigraph one_loop = Multigraph::from_edges(1, {{0, 0}});
  Multigraph bigon = Multigraph::from_edges(2, {{0, 1}, {0, 1}});
  CHECK(canonical_key(one_loop) != canonical_key(bigon));

  std::mt19937_64 rng(7);
  auto k33 = k33_graph();
  auto key = canonical_key(k33);
  for (int i = 0; i < 100; ++i) CHECK(canonical_key(relabel(k33, rng)) == key);
}

TEST_CASE("canonical key respects isomorphism across random relabelings") {
  std::mt19937_64 rng(99);
  for (auto& g : {k4_graph(), lollipop_graph(), ladder_graph(), tadpole_theta_graph()}) {
    auto key = canonical_key(g);
    for (int i = 0; i < 1000; ++i) CHECK(canonical_key(relabel(g, rng)) == key);
  }
}

TEST_CASE("trivalent enumeration matches the exhaustive oracle at genus 3") {
  auto& g3 = enumerate_trivalent(3);
  int oracle = genus3_class_count_oracle();
  CHECK(oracle == 5);
  CHECK(static_cast<int>(g3.size()) == oracle);
  // Includes the lollipop and the four other genus-3 graphs.
  std::set<CanonicalKey> keys;
  for (auto& g : g3) keys.insert(canonical_key(g));
  CHECK(keys.count(canonical_key(lollipop_graph())));
  CHECK(keys.count(canonical_key(k4_graph())));
  CHECK(keys.count(canonical_key(ladder_graph())));
  CHECK(keys.count(canonical_key(tadpole_theta_graph())));
  CHECK(keys.count(canonical_key(chain3_graph())));
  CHECK(keys.size() == 5);
}

TEST_CASE("trivalent enumeration counts") {
  CHECK(enumerate_trivalent(2).size() == 2);
  CHECK(enumerate_trivalent(4).size() == 17);
  for (auto& g : enumerate_trivalent(4)) {
    CHECK(g.is_trivalent());
    CHECK(g.is_connected());
    CHECK(g.edges.size() == 9);  // 3g - 3
  }
}

TEST_CASE("trivalent enumeration genus 5" * doctest::skip(false)) {
  auto& g5 = enumerate_trivalent(5);
  CHECK(g5.size() == 71);
  std::set<CanonicalKey> keys;
  for (auto& g : g5) keys.insert(canonical_key(g));
  CHECK(keys.size() == 71);
}

TEST_CASE("chains") {
  CHECK(is_chain(theta_graph()));
  CHECK(is_chain(dumbbell_graph()));
  CHECK_FALSE(is_chain(k33_graph()));
  CHECK_FALSE(is_chain(k4_graph()));
  CHECK_FALSE(is_chain(lollipop_graph()));
  CHECK(is_chain(ladder_graph()));
  CHECK(is_chain(tadpole_theta_graph()));
  CHECK(is_chain(chain3_graph()));
  // Bare cycle counts as a chain.
  CHECK(is_chain(Multigraph::from_edges(1, {{0, 0}})));
  CHECK(is_chain(Multigraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}})));
}

TEST_CASE("sprawling") {
  CHECK(is_sprawling(lollipop_graph()));
  CHECK_FALSE(is_sprawling(theta_graph()));
  CHECK_FALSE(is_sprawling(k4_graph()));
  int sprawling_count = 0;
  for (auto& g : enumerate_trivalent(3)) {
    if (is_sprawling(g)) ++sprawling_count;
  }
  CHECK(sprawling_count == 1);  // the lollipop is the unique one
}

TEST_CASE("crowdedness") {
  CHECK_FALSE(is_crowded(k4_graph()));
  CHECK_FALSE(is_crowded(theta_graph()));
  CHECK_THROWS_AS(is_crowded(k33_graph()), input_error);  // non-planar rejected
}

TEST_CASE("planarity via rotation systems") {
  CHECK(is_planar_multigraph(k4_graph()));
  CHECK(is_planar_multigraph(lollipop_graph()));
  CHECK_FALSE(is_planar_multigraph(k33_graph()));
}

TEST_CASE("two-connected components") {
  auto db = two_connected_components(dumbbell_graph());
  CHECK(db.components.size() == 2);
  CHECK(db.bridge_edges.size() == 1);
  for (auto& c : db.components) {
    CHECK(c.vertex_count == 1);
    CHECK(c.edges.size() == 1);  // a loop
  }

  auto th = two_connected_components(theta_graph());
  CHECK(th.components.size() == 1);
  CHECK(th.bridge_edges.empty());
  CHECK(isomorphic(th.components[0], theta_graph()));

  // Two thetas joined by a bridge: subdivide nothing, join vertex 0 of each.
  Multigraph two_thetas = Multigraph::from_edges(
      6, {{0, 1}, {0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 4}, {3, 5}, {4, 5}, {2, 5}});
  auto tt = two_connected_components(two_thetas);
  CHECK(tt.components.size() == 2);
  for (auto& c : tt.components) CHECK(c.genus() == 2);
}

TEST_CASE("treewidth") {
  // Path (tree) has treewidth 1.
  CHECK(treewidth_exact(Multigraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}})) == 1);
  // Cycle has treewidth 2.
  CHECK(treewidth_exact(Multigraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})) == 2);
  CHECK(treewidth_exact(k33_graph()) == 3);
  CHECK(treewidth_exact(k4_graph()) == 3);
  // Loops and multi-edges do not change treewidth.
  CHECK(treewidth_exact(theta_graph()) == 1);
  CHECK(treewidth_exact(dumbbell_graph()) == 1);
}

TEST_CASE("treewidth of K33 matches brute-force elimination oracle") {
  // Oracle: min over all elimination orderings of the max fill degree.
  auto g = k33_graph();
  int n = g.vertex_count;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int best = n;
  do {
    std::array<std::array<bool, 6>, 6> adj{};
    for (auto& [u, v] : g.edges) {
      adj[u][v] = adj[v][u] = true;
    }
    std::array<bool, 6> gone{};
    int width = 0;
    for (int v : perm) {
      std::vector<int> nbrs;
      for (int u = 0; u < n; ++u)
        if (!gone[u] && u != v && adj[v][u]) nbrs.push_back(u);
      width = std::max(width, static_cast<int>(nbrs.size()));
      for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j)
          adj[nbrs[i]][nbrs[j]] = adj[nbrs[j]][nbrs[i]] = true;
      gone[v] = true;
    }
    best = std::min(best, width);
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(best == 3);
  CHECK(treewidth_exact(g) == best);
}

TEST_CASE("tcn lower bound") {
  // Chain of genus 5 has treewidth 2: bound clamps to 0.
  Multigraph chain5 = Multigraph::from_edges(
      8, {{0, 0}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 4}, {4, 5}, {5, 6}, {5, 6}, {6, 7}, {7, 7}});
  CHECK(chain5.genus() == 5);
  CHECK(is_chain(chain5));
  CHECK(tcn_lower_bound(chain5) == Rational(0));
  CHECK(tcn_lower_bound(k33_graph()) == Rational(0));  // clamped from -25/8
  // Formula fixture: tw = 8, g = 5 gives 3/8*36 - 5 + 1/2 = 9.
  Rational v = rat(3, 8) * rat(6) * rat(6) - rat(5) + rat(1, 2);
  CHECK(v == rat(9));
}

TEST_CASE("genus bookkeeping") {
  CHECK(theta_graph().genus() == 2);
  CHECK(lollipop_graph().genus() == 3);
  CHECK(k33_graph().genus() == 4);
}
