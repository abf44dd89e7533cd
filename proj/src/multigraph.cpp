#include "tcnkit/multigraph.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "tcnkit/geometry.hpp"

namespace tcnkit {

int Multigraph::degree(int v) const {
  int d = 0;
  for (auto& [a, b] : edges) {
    if (a == v) ++d;
    if (b == v) ++d;
  }
  return d;
}

bool Multigraph::is_connected() const {
  if (vertex_count == 0) return false;
  std::vector<int> stack{0};
  std::vector<bool> seen(vertex_count, false);
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto& [a, b] : edges) {
      int w = -1;
      if (a == v) w = b;
      else if (b == v) w = a;
      if (w >= 0 && !seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == vertex_count;
}

bool Multigraph::is_trivalent() const {
  for (int v = 0; v < vertex_count; ++v) {
    if (degree(v) != 3) return false;
  }
  return true;
}

Multigraph Multigraph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  Multigraph g;
  g.vertex_count = n;
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw input_error("edge endpoint out of range");
    g.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

namespace {

struct AdjMatrix {
  int n = 0;
  std::array<std::array<std::uint8_t, 16>, 16> a{};  // loops on the diagonal

  static AdjMatrix of(const Multigraph& g) {
    if (g.vertex_count > 16) throw budget_error("canonical key supports at most 16 vertices");
    AdjMatrix m;
    m.n = g.vertex_count;
    for (auto& [u, v] : g.edges) {
      if (u == v)
        m.a[u][u] += 1;
      else {
        m.a[u][v] += 1;
        m.a[v][u] += 1;
      }
    }
    return m;
  }
};

// Iterated neighborhood refinement; returns an isomorphism-invariant color
// id per vertex (small ints ordered by signature).
std::vector<int> wl_colors(const AdjMatrix& m) {
  std::vector<std::string> sig(m.n);
  std::vector<int> color(m.n, 0);
  for (int round = 0; round < m.n; ++round) {
    for (int v = 0; v < m.n; ++v) {
      std::vector<std::pair<int, int>> nb;  // (multiplicity, color)
      for (int u = 0; u < m.n; ++u) {
        if (u != v && m.a[v][u] > 0) nb.push_back({m.a[v][u], color[u]});
      }
      std::sort(nb.begin(), nb.end());
      std::string s = std::to_string(m.a[v][v]) + "#" + std::to_string(color[v]) + "#";
      for (auto& [mult, c] : nb) s += std::to_string(mult) + ":" + std::to_string(c) + ",";
      sig[v] = std::move(s);
    }
    std::vector<std::string> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(m.n);
    for (int v = 0; v < m.n; ++v) {
      next[v] =
          static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    }
    if (next == color) break;
    color = std::move(next);
  }
  return color;
}

// Depth-first search for the lexicographically largest row-by-row adjacency
// encoding, vertices listed in nondecreasing color order. At each position
// only the candidates with the maximal partial row survive, which both
// prunes and stays canonical (the encoding is positional).
struct Canonicalizer {
  const AdjMatrix& m;
  std::vector<int> color;
  std::vector<int> order;
  std::vector<bool> used;
  std::string best;
  bool have_best = false;
  std::string current;

  explicit Canonicalizer(const AdjMatrix& mm) : m(mm) {
    color = wl_colors(m);
    used.assign(m.n, false);
    order.reserve(m.n);
  }

  void dfs() {
    int k = static_cast<int>(order.size());
    if (k == m.n) {
      if (!have_best || current > best) {
        best = current;
        have_best = true;
      }
      return;
    }
    int want_color = -1;
    for (int v = 0; v < m.n; ++v) {
      if (!used[v] && (want_color < 0 || color[v] < want_color)) want_color = color[v];
    }
    std::vector<int> cands;
    std::string best_row;
    for (int v = 0; v < m.n; ++v) {
      if (used[v] || color[v] != want_color) continue;
      std::string row;
      row.push_back(static_cast<char>(m.a[v][v]));
      for (int i = 0; i < k; ++i) row.push_back(static_cast<char>(m.a[v][order[i]]));
      if (cands.empty() || row > best_row) {
        cands = {v};
        best_row = row;
      } else if (row == best_row) {
        cands.push_back(v);
      }
    }
    for (int v : cands) {
      used[v] = true;
      order.push_back(v);
      std::size_t mark = current.size();
      current += best_row;
      dfs();
      current.resize(mark);
      order.pop_back();
      used[v] = false;
    }
  }
};

}  // namespace

CanonicalKey canonical_key(const Multigraph& g) {
  AdjMatrix m = AdjMatrix::of(g);
  std::string head;
  head.push_back(static_cast<char>(m.n));
  head.push_back(static_cast<char>(g.edges.size()));
  if (m.n == 0) return head;
  Canonicalizer c(m);
  c.dfs();
  return head + c.best;
}

bool isomorphic(const Multigraph& a, const Multigraph& b) {
  if (a.vertex_count != b.vertex_count || a.edges.size() != b.edges.size()) return false;
  return canonical_key(a) == canonical_key(b);
}

const std::vector<Multigraph>& enumerate_trivalent(int g) {
  static std::map<int, std::vector<Multigraph>> cache;
  if (auto it = cache.find(g); it != cache.end()) return it->second;
  if (g < 2 || g > 6) throw budget_error("trivalent enumeration supports genus 2..6");
  const int n = 2 * g - 2;
  AdjMatrix m;
  m.n = n;
  std::vector<int> rem(n, 3);
  std::map<CanonicalKey, Multigraph> found;

  std::function<void(int, int)> rec = [&](int v, int min_partner) {
    while (v < n && rem[v] == 0) {
      v++;
      min_partner = v;
    }
    if (v == n) {
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m.a[i][i]; ++k) edges.push_back({i, i});
        for (int j = i + 1; j < n; ++j) {
          for (int k = 0; k < m.a[i][j]; ++k) edges.push_back({i, j});
        }
      }
      Multigraph mg = Multigraph::from_edges(n, std::move(edges));
      if (!mg.is_connected()) return;
      found.emplace(canonical_key(mg), std::move(mg));
      return;
    }
    for (int u = std::max(v, min_partner); u < n; ++u) {
      if (u == v) {
        if (rem[v] >= 2) {
          m.a[v][v] += 1;
          rem[v] -= 2;
          rec(v, v);
          rem[v] += 2;
          m.a[v][v] -= 1;
        }
      } else if (rem[u] > 0) {
        m.a[v][u] += 1;
        m.a[u][v] += 1;
        rem[v] -= 1;
        rem[u] -= 1;
        rec(v, u);
        rem[v] += 1;
        rem[u] += 1;
        m.a[v][u] -= 1;
        m.a[u][v] -= 1;
      }
    }
  };
  rec(0, 0);
  std::vector<Multigraph> out;
  for (auto& [key, mg] : found) out.push_back(std::move(mg));
  return cache.emplace(g, std::move(out)).first->second;
}

namespace {

enum class Junction { Share, Bridge };

Multigraph build_chain(const std::vector<Junction>& js) {
  // Cycle i owns its junction vertices; shared-edge junctions contribute two
  // shared vertices, bridges one on each side.
  std::vector<std::pair<int, int>> edges;
  int next = 0;
  const int g = static_cast<int>(js.size()) + 1;
  // Vertices of the interface between cycle i and i+1.
  struct Iface {
    Junction j;
    int a = -1, b = -1;  // Share: shared pair; Bridge: a = left vertex, b = right
  };
  std::vector<Iface> ifs(js.size());
  for (std::size_t i = 0; i < js.size(); ++i) {
    ifs[i].j = js[i];
    ifs[i].a = next++;
    ifs[i].b = next++;
    if (js[i] == Junction::Bridge) edges.push_back({ifs[i].a, ifs[i].b});
    if (js[i] == Junction::Share) edges.push_back({ifs[i].a, ifs[i].b});  // shared edge
  }
  for (int i = 0; i < g; ++i) {
    bool has_prev = i > 0;
    bool has_next = i + 1 < g;
    std::vector<int> left, right;
    if (has_prev) {
      if (ifs[i - 1].j == Junction::Share)
        left = {ifs[i - 1].a, ifs[i - 1].b};
      else
        left = {ifs[i - 1].b};
    }
    if (has_next) {
      if (ifs[i].j == Junction::Share)
        right = {ifs[i].a, ifs[i].b};
      else
        right = {ifs[i].a};
    }
    if (left.empty() && right.empty()) {
      // A single cycle is not trivalent; not produced for g >= 2.
      throw std::logic_error("chain with a junctionless cycle");
    } else if (left.empty() || right.empty()) {
      std::vector<int>& side = left.empty() ? right : left;
      if (side.size() == 1) {
        edges.push_back({side[0], side[0]});  // end loop
      } else {
        edges.push_back({side[0], side[1]});  // second bigon edge
      }
    } else {
      // Interior cycle: connect left pair/vertex to right pair/vertex.
      if (left.size() == 1 && right.size() == 1) {
        edges.push_back({left[0], right[0]});
        edges.push_back({left[0], right[0]});
      } else if (left.size() == 2 && right.size() == 1) {
        edges.push_back({left[0], right[0]});
        edges.push_back({left[1], right[0]});
      } else if (left.size() == 1 && right.size() == 2) {
        edges.push_back({left[0], right[0]});
        edges.push_back({left[0], right[1]});
      } else {
        edges.push_back({left[0], right[0]});
        edges.push_back({left[1], right[1]});
      }
    }
  }
  return Multigraph::from_edges(next, std::move(edges));
}

const std::set<CanonicalKey>& chain_keys(int g) {
  static std::map<int, std::set<CanonicalKey>> cache;
  if (auto it = cache.find(g); it != cache.end()) return it->second;
  std::set<CanonicalKey> keys;
  if (g >= 2) {
    const int k = g - 1;
    for (int mask = 0; mask < (1 << k); ++mask) {
      std::vector<Junction> js(k);
      for (int i = 0; i < k; ++i)
        js[i] = (mask >> i) & 1 ? Junction::Share : Junction::Bridge;
      keys.insert(canonical_key(build_chain(js)));
    }
  }
  return cache.emplace(g, std::move(keys)).first->second;
}

}  // namespace

bool is_chain(const Multigraph& g) {
  if (!g.is_connected()) return false;
  int genus = g.genus();
  if (genus == 1) {
    // A bare cycle (every vertex degree 2, or one loop vertex).
    for (int v = 0; v < g.vertex_count; ++v) {
      if (g.degree(v) != 2) return false;
    }
    return true;
  }
  if (genus < 1 || !g.is_trivalent()) return false;
  return chain_keys(genus).count(canonical_key(g)) > 0;
}

bool is_sprawling(const Multigraph& g) {
  if (!g.is_connected() || !g.is_trivalent()) throw input_error("sprawling needs connected trivalent input");
  for (int v = 0; v < g.vertex_count; ++v) {
    if (g.vertex_count == 1) return false;
    std::vector<int> comp(g.vertex_count, -1);
    int ncomp = 0;
    for (int s = 0; s < g.vertex_count; ++s) {
      if (s == v || comp[s] >= 0) continue;
      comp[s] = ncomp;
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto& [a, b] : g.edges) {
          if (a == v || b == v) continue;
          int w = -1;
          if (a == x) w = b;
          else if (b == x) w = a;
          if (w >= 0 && comp[w] < 0) {
            comp[w] = ncomp;
            stack.push_back(w);
          }
        }
      }
      ++ncomp;
    }
    if (ncomp == 3) return true;
  }
  return false;
}

namespace {

// Half-edge machinery for rotation systems. Half-edges 2e and 2e+1 belong
// to edge e; twin(h) = h ^ 1.
struct HalfEdges {
  int nhe = 0;
  std::vector<int> at;                     // half-edge -> vertex
  std::vector<std::vector<int>> incident;  // vertex -> half-edges

  static HalfEdges of(const Multigraph& g) {
    HalfEdges he;
    he.nhe = 2 * static_cast<int>(g.edges.size());
    he.at.resize(he.nhe);
    he.incident.resize(g.vertex_count);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      auto [u, v] = g.edges[e];
      he.at[2 * e] = u;
      he.at[2 * e + 1] = v;
      he.incident[u].push_back(2 * e);
      he.incident[v].push_back(2 * e + 1);
    }
    return he;
  }
};

// Applies fn to each rotation system (next-around-vertex permutation) of a
// trivalent graph; returns false from fn to stop early. Returns whether all
// systems were visited without early stop.
bool for_each_rotation(const Multigraph& g, const HalfEdges& he,
                       const std::function<bool(const std::vector<int>&)>& fn) {
  const int n = g.vertex_count;
  std::vector<int> choice(n, 0);
  std::vector<int> sigma(he.nhe);
  for (;;) {
    for (int v = 0; v < n; ++v) {
      const auto& inc = he.incident[v];
      if (inc.size() == 3) {
        if (choice[v] == 0) {
          sigma[inc[0]] = inc[1];
          sigma[inc[1]] = inc[2];
          sigma[inc[2]] = inc[0];
        } else {
          sigma[inc[0]] = inc[2];
          sigma[inc[2]] = inc[1];
          sigma[inc[1]] = inc[0];
        }
      } else if (inc.size() == 2) {
        sigma[inc[0]] = inc[1];
        sigma[inc[1]] = inc[0];
      } else if (inc.size() == 1) {
        sigma[inc[0]] = inc[0];
      }
    }
    if (!fn(sigma)) return false;
    int v = 0;
    while (v < n && (he.incident[v].size() != 3 || choice[v] == 1)) {
      if (he.incident[v].size() == 3) choice[v] = 0;
      ++v;
    }
    if (v == n) return true;
    choice[v] = 1;
  }
}

// Faces of a rotation system: orbits of h -> sigma[twin(h)].
std::vector<std::vector<int>> trace_faces(const std::vector<int>& sigma, int nhe) {
  std::vector<std::vector<int>> faces;
  std::vector<bool> seen(nhe, false);
  for (int h0 = 0; h0 < nhe; ++h0) {
    if (seen[h0]) continue;
    std::vector<int> face;
    int h = h0;
    do {
      seen[h] = true;
      face.push_back(h);
      h = sigma[h ^ 1];
    } while (h != h0);
    faces.push_back(std::move(face));
  }
  return faces;
}

bool embedding_with_outer_is_crowded(const std::vector<std::vector<int>>& faces, int outer) {
  const int nf = static_cast<int>(faces.size());
  // Edge slots per face.
  std::vector<std::map<int, int>> edge_count(nf);
  for (int f = 0; f < nf; ++f) {
    for (int h : faces[f]) edge_count[f][h / 2] += 1;
  }
  for (int f = 0; f < nf; ++f) {
    if (f == outer) continue;
    for (auto& [e, cnt] : edge_count[f]) {
      if (cnt >= 2) return true;  // bounded face sharing an edge with itself
    }
  }
  for (int f = 0; f < nf; ++f) {
    if (f == outer) continue;
    for (int f2 = f + 1; f2 < nf; ++f2) {
      if (f2 == outer) continue;
      int shared = 0;
      for (auto& [e, cnt] : edge_count[f]) {
        if (edge_count[f2].count(e)) ++shared;
      }
      if (shared >= 2) return true;
    }
  }
  return false;
}

}  // namespace

bool is_planar_multigraph(const Multigraph& g) {
  if (!g.is_connected()) throw input_error("planarity check needs a connected graph");
  HalfEdges he = HalfEdges::of(g);
  const int target = static_cast<int>(g.edges.size()) - g.vertex_count + 2;
  bool planar = false;
  for_each_rotation(g, he, [&](const std::vector<int>& sigma) {
    if (static_cast<int>(trace_faces(sigma, he.nhe).size()) == target) {
      planar = true;
      return false;
    }
    return true;
  });
  return planar;
}

bool is_crowded(const Multigraph& g) {
  if (!g.is_connected() || !g.is_trivalent())
    throw input_error("crowdedness needs a connected trivalent graph");
  if (g.vertex_count > 12) throw budget_error("crowdedness supports at most 12 vertices");
  HalfEdges he = HalfEdges::of(g);
  const int target = static_cast<int>(g.edges.size()) - g.vertex_count + 2;
  bool saw_planar = false;
  bool all_crowded = true;
  for_each_rotation(g, he, [&](const std::vector<int>& sigma) {
    auto faces = trace_faces(sigma, he.nhe);
    if (static_cast<int>(faces.size()) != target) return true;
    saw_planar = true;
    for (int outer = 0; outer < static_cast<int>(faces.size()); ++outer) {
      if (!embedding_with_outer_is_crowded(faces, outer)) {
        all_crowded = false;
        return false;
      }
    }
    return true;
  });
  if (!saw_planar) throw input_error("crowdedness undefined for non-planar graphs");
  return all_crowded;
}

Multigraph smoothed(const Multigraph& g) {
  struct E {
    int u, v;
  };
  std::vector<E> es;
  for (auto& [u, v] : g.edges) es.push_back({u, v});
  auto deg = [&](int v) {
    int d = 0;
    for (auto& e : es) {
      if (e.u == v) ++d;
      if (e.v == v) ++d;
    }
    return d;
  };
  bool cycle = g.vertex_count > 0;
  for (int v = 0; v < g.vertex_count && cycle; ++v) cycle = deg(v) == 2;
  if (cycle && g.is_connected()) {
    return Multigraph::from_edges(1, {{0, 0}});
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < g.vertex_count; ++v) {
      if (deg(v) != 2) continue;
      int e1 = -1, e2 = -1;
      for (std::size_t e = 0; e < es.size(); ++e) {
        if (es[e].u == v || es[e].v == v) {
          if (e1 < 0)
            e1 = static_cast<int>(e);
          else
            e2 = static_cast<int>(e);
        }
      }
      if (e2 < 0) continue;  // lone loop
      int a = es[e1].u == v ? es[e1].v : es[e1].u;
      int b = es[e2].u == v ? es[e2].v : es[e2].u;
      es.erase(es.begin() + e2);
      es.erase(es.begin() + e1);
      es.push_back({a, b});
      changed = true;
    }
  }
  // Reindex the vertices that still carry edges.
  std::vector<int> local(g.vertex_count, -1);
  int n = 0;
  for (int v = 0; v < g.vertex_count; ++v) {
    for (auto& e : es) {
      if ((e.u == v || e.v == v) && local[v] < 0) local[v] = n++;
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (auto& e : es) edges.push_back({local[e.u], local[e.v]});
  return Multigraph::from_edges(n, std::move(edges));
}

BlockDecomposition two_connected_components(const Multigraph& g) {
  if (!g.is_connected()) throw input_error("block decomposition needs a connected graph");
  const int n = g.vertex_count;
  const int m = static_cast<int>(g.edges.size());
  // An edge is a bridge iff it is in no cycle: loops and members of parallel
  // pairs never are. DFS lowpoint argument, tracking edge instances.
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
  for (int e = 0; e < m; ++e) {
    auto [u, v] = g.edges[e];
    if (u == v) continue;
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> bridges;
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int v, int pe) {
    disc[v] = low[v] = timer++;
    for (auto& [w, e] : adj[v]) {
      if (e == pe) continue;
      if (disc[w] < 0) {
        dfs(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] > disc[v]) bridges.push_back(e);
      } else {
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  dfs(0, -1);
  std::sort(bridges.begin(), bridges.end());

  BlockDecomposition out;
  out.bridge_edges = bridges;
  out.edge_component.assign(m, -1);
  std::vector<bool> is_bridge(m, false);
  for (int e : bridges) is_bridge[e] = true;
  // Components of the bridge-deleted graph.
  std::vector<int> vcomp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (vcomp[s] >= 0) continue;
    vcomp[s] = ncomp;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto& [w, e] : adj[x]) {
        if (is_bridge[e] || vcomp[w] >= 0) continue;
        vcomp[w] = ncomp;
        stack.push_back(w);
      }
    }
    ++ncomp;
  }
  // Collect non-trivial components (those with at least one edge).
  std::vector<std::vector<int>> comp_edges(ncomp);
  for (int e = 0; e < m; ++e) {
    if (is_bridge[e]) continue;
    auto [u, v] = g.edges[e];
    comp_edges[vcomp[u]].push_back(e);
  }
  std::vector<int> comp_out(ncomp, -1);
  for (int c = 0; c < ncomp; ++c) {
    if (comp_edges[c].empty()) continue;
    comp_out[c] = static_cast<int>(out.components.size());
    std::vector<int> verts;
    for (int v = 0; v < n; ++v) {
      if (vcomp[v] == c) {
        bool incident = false;
        for (int e : comp_edges[c]) {
          if (g.edges[e].first == v || g.edges[e].second == v) incident = true;
        }
        if (incident) verts.push_back(v);
      }
    }
    std::vector<int> local(n, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    Multigraph sub;
    sub.vertex_count = static_cast<int>(verts.size());
    for (int e : comp_edges[c]) {
      auto [u, v] = g.edges[e];
      sub.edges.push_back({std::min(local[u], local[v]), std::max(local[u], local[v])});
    }
    std::sort(sub.edges.begin(), sub.edges.end());
    out.components.push_back(std::move(sub));
    out.component_vertices.push_back(std::move(verts));
  }
  for (int e = 0; e < m; ++e) {
    if (is_bridge[e]) continue;
    out.edge_component[e] = comp_out[vcomp[g.edges[e].first]];
  }
  return out;
}

int treewidth_exact(const Multigraph& g) {
  // Simple-graph reduction.
  std::set<std::pair<int, int>> simple;
  for (auto& [u, v] : g.edges) {
    if (u != v) simple.insert({u, v});
  }
  const int n = g.vertex_count;
  if (n > 14) throw budget_error("treewidth supports at most 14 vertices");
  if (n == 0) return 0;
  std::vector<std::uint16_t> nb(n, 0);
  for (auto& [u, v] : simple) {
    nb[u] |= static_cast<std::uint16_t>(1u << v);
    nb[v] |= static_cast<std::uint16_t>(1u << u);
  }
  const int full = 1 << n;
  // q(S, v): neighbors of v reachable through S, excluding S and v.
  auto q = [&](int S, int v) {
    int reach = 1 << v;
    int frontier = 1 << v;
    while (frontier) {
      int next = 0;
      for (int x = frontier; x;) {
        int b = x & -x;
        int xv = __builtin_ctz(b);
        x ^= b;
        next |= nb[xv];
      }
      next &= ~reach;
      frontier = next & S;
      reach |= next;
    }
    return __builtin_popcount(reach & ~S & ~(1 << v));
  };
  std::vector<std::int8_t> tw(full);
  tw[0] = -1;
  for (int S = 1; S < full; ++S) {
    int best = 127;
    for (int x = S; x;) {
      int b = x & -x;
      int v = __builtin_ctz(b);
      x ^= b;
      int rest = S ^ b;
      int val = std::max<int>(tw[rest], q(rest, v));
      best = std::min(best, val);
    }
    tw[S] = static_cast<std::int8_t>(best);
  }
  return tw[full - 1];
}

Rational tcn_lower_bound(const Multigraph& g) {
  if (!g.is_connected() || !g.is_trivalent())
    throw input_error("lower bound needs a connected trivalent graph");
  int tw = treewidth_exact(g);
  Rational bound = rat(3, 8) * rat(tw - 2) * rat(tw - 2) - rat(g.genus()) + rat(1, 2);
  if (bound < 0) return Rational(0);
  return bound;
}

Multigraph theta_graph() { return Multigraph::from_edges(2, {{0, 1}, {0, 1}, {0, 1}}); }
Multigraph dumbbell_graph() { return Multigraph::from_edges(2, {{0, 0}, {0, 1}, {1, 1}}); }
Multigraph k4_graph() {
  return Multigraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}
Multigraph k33_graph() {
  return Multigraph::from_edges(
      6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
}
Multigraph lollipop_graph() {
  return Multigraph::from_edges(4, {{0, 0}, {1, 1}, {2, 2}, {0, 3}, {1, 3}, {2, 3}});
}

}  // namespace tcnkit
