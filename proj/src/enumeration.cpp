#include "tcnkit/enumeration.hpp"

#include <atomic>
#include <memory>
#include <thread>

#include "tcnkit/cache.hpp"
#include "tcnkit/digest.hpp"
#include "tcnkit/regularity.hpp"

namespace tcnkit {

namespace engine {

namespace {

std::string code_for(const PointContext& ctx, const CompactCells& cells,
                     const std::vector<std::vector<std::uint8_t>>* sym_perms) {
  if (!sym_perms || sym_perms->size() <= 1) return cells_code(cells);
  // Symmetry reduction: minimum code over the automorphism permutations.
  std::string best;
  CompactCells mapped;
  for (auto& perm : *sym_perms) {
    mapped = cells;
    for (auto& c : mapped) {
      int n = c.kind == 0 ? 3 : 4;
      for (int i = 0; i < n; ++i) c.idx[i] = perm[c.idx[i]];
      std::sort(c.idx.begin(), c.idx.begin() + n);
    }
    std::sort(mapped.begin(), mapped.end());
    std::string code = cells_code(mapped);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

struct SweepState {
  const PointContext& ctx;
  int c;
  const EnumerationOptions& opt;
  const CompactSink& sink;
  std::vector<std::vector<std::uint8_t>> sym_perms;

  DigestSet visited;       // triangulations
  DigestSet nodal_seen;    // coarsened subdivisions (c >= 1)
  PolygonCache::VerdictLoad verdicts;
  std::unique_ptr<PolygonCache> cache;
  std::unique_ptr<PolygonCache::TriWriter> tri_writer;
  std::unique_ptr<PolygonCache::VerdictWriter> verdict_writer;

  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
  std::atomic<std::uint64_t> triangulations{0};
  std::atomic<std::uint64_t> nodal_unique{0};
  std::atomic<std::uint64_t> regular{0};
  std::atomic<std::uint64_t> checked{0};

  SweepState(const PointContext& ctx_, int c_, const EnumerationOptions& opt_,
             const CompactSink& sink_)
      : ctx(ctx_), c(c_), opt(opt_), sink(sink_) {
    if (opt.symmetry_reduction) sym_perms = ctx.automorphism_perms();
  }

  bool verdict_of(Digest128 d, const CompactCells& cells) {
    if (verdicts.regular.contains(d)) {
      checked.fetch_add(1, std::memory_order_relaxed);
      return true;
    }
    if (verdicts.not_regular.contains(d)) {
      checked.fetch_add(1, std::memory_order_relaxed);
      return false;
    }
    bool reg = check_regular_compact(ctx, cells).regular;
    checked.fetch_add(1, std::memory_order_relaxed);
    if (verdict_writer) verdict_writer->append(d, reg);
    return reg;
  }

  struct Lazy final : LazyVerdict {
    SweepState* st;
    Digest128 d;
    const CompactCells* cells;
    int state = -1;  // -1 unknown, 0 not regular, 1 regular
    bool regular() override {
      if (state < 0) {
        bool reg = st->verdict_of(d, *cells);
        if (reg) st->regular.fetch_add(1, std::memory_order_relaxed);
        state = reg ? 1 : 0;
      }
      return state == 1;
    }
  };

  // Deliver one subdivision (c = 0: the triangulation; c >= 1: a coarsening).
  void deliver(Digest128 d, const CompactCells& cells) {
    Lazy lazy;
    lazy.st = this;
    lazy.d = d;
    lazy.cells = &cells;
    if (!sink(ctx, cells, lazy)) stop.store(true, std::memory_order_relaxed);
  }

  void process_triangulation(const CompactCells& cells) {
    if (c == 0) {
      deliver(digest_string(code_for(ctx, cells, opt.symmetry_reduction ? &sym_perms : nullptr)),
              cells);
      return;
    }
    auto adj = CellAdjacency::build(cells);
    auto cands = triangulation_flips(ctx, cells, adj, true);
    if (static_cast<int>(cands.size()) < c) return;
    // Pairwise cell-disjoint c-subsets (cell count < 128 for our budgets).
    std::vector<int> pick;
    unsigned __int128 used_cells = 0;
    const std::vector<std::vector<std::uint8_t>>* perms =
        opt.symmetry_reduction ? &sym_perms : nullptr;
    std::vector<CompactFlip> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (stop.load(std::memory_order_relaxed)) return;
      if (static_cast<int>(pick.size()) == c) {
        chosen.clear();
        for (int i : pick) chosen.push_back(cands[i]);
        CompactCells coarse = coarsen(cells, chosen);
        Digest128 d = digest_string(code_for(ctx, coarse, perms));
        if (nodal_seen.insert(d)) {
          std::uint64_t count = nodal_unique.fetch_add(1, std::memory_order_relaxed) + 1;
          if (count > opt.budget.max_nodal) {
            budget_hit.store(true, std::memory_order_relaxed);
            stop.store(true, std::memory_order_relaxed);
            return;
          }
          deliver(d, coarse);
        }
        return;
      }
      for (std::size_t i = start; i < cands.size(); ++i) {
        unsigned __int128 mask = (static_cast<unsigned __int128>(1) << cands[i].c1) |
                                 (static_cast<unsigned __int128>(1) << cands[i].c2);
        if (used_cells & mask) continue;
        used_cells |= mask;
        pick.push_back(static_cast<int>(i));
        rec(i + 1);
        pick.pop_back();
        used_cells &= ~mask;
      }
    };
    rec(0);
  }
};

}  // namespace

EnumerationStats sweep(const LatticePolygon& p, int c, const EnumerationOptions& opt,
                       const CompactSink& sink) {
  if (c < 0) throw input_error("node count must be nonnegative");
  PointContext ctx(p);
  if (ctx.points.size() > 64) throw budget_error("polygon too large for the sweep engine");
  SweepState st(ctx, c, opt, sink);

  std::vector<std::string> frontier;
  bool have_complete_cache = false;
  if (!opt.cache_dir.empty()) {
    st.cache = std::make_unique<PolygonCache>(opt.cache_dir, p);
    st.cache->load_verdicts(c, st.verdicts);
    auto tri = st.cache->load_triangulations();
    if (opt.symmetry_reduction) {
      // The cache stores the plain canonical codes; symmetry-reduced sweeps
      // keep their own dedup key, so reuse codes but not completeness.
      have_complete_cache = false;
    } else {
      have_complete_cache = tri.complete;
    }
    for (auto& code : tri.codes) {
      CompactCells cells = cells_from_code(code, ctx.points.size());
      std::string key = code_for(ctx, cells, opt.symmetry_reduction ? &st.sym_perms : nullptr);
      if (st.visited.insert(digest_string(key))) frontier.push_back(code);
    }
    if (!have_complete_cache) st.tri_writer = st.cache->tri_writer();
    st.verdict_writer = st.cache->verdict_writer(c);
  }
  if (frontier.empty()) {
    Subdivision seed = placing_triangulation(p);
    CompactCells cells = compact_from_subdivision(ctx, seed);
    std::string code = cells_code(cells);
    st.visited.insert(
        digest_string(code_for(ctx, cells, opt.symmetry_reduction ? &st.sym_perms : nullptr)));
    if (st.tri_writer) st.tri_writer->append(code);
    frontier.push_back(std::move(code));
  }

  const int jobs = std::max(1, opt.jobs);
  const bool expand = !have_complete_cache;
  std::uint64_t processed_total = 0;

  while (!frontier.empty() && !st.stop.load()) {
    std::vector<std::vector<std::string>> next(jobs);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&](int wid) {
      constexpr std::size_t kChunk = 64;
      for (;;) {
        if (st.stop.load(std::memory_order_relaxed)) return;
        std::size_t begin = cursor.fetch_add(kChunk);
        if (begin >= frontier.size()) return;
        std::size_t end = std::min(frontier.size(), begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) {
          if (st.stop.load(std::memory_order_relaxed)) return;
          CompactCells cells = cells_from_code(frontier[i], ctx.points.size());
          st.process_triangulation(cells);
          std::uint64_t done = st.triangulations.fetch_add(1, std::memory_order_relaxed) + 1;
          if (done > st.opt.budget.max_triangulations) {
            st.budget_hit.store(true);
            st.stop.store(true);
            return;
          }
          if (opt.progress && done % 65536 == 0) opt.progress("bfs", done);
          if (!expand) continue;
          auto adj = CellAdjacency::build(cells);
          for (auto& f : triangulation_flips(ctx, cells, adj, false)) {
            CompactCells ncells = apply_flip(cells, f);
            std::string key =
                code_for(ctx, ncells, opt.symmetry_reduction ? &st.sym_perms : nullptr);
            if (st.visited.insert(digest_string(key))) {
              std::string code = cells_code(ncells);
              if (st.tri_writer) st.tri_writer->append(code);
              next[wid].push_back(std::move(code));
            }
          }
        }
      }
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(jobs);
      for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
      for (auto& t : threads) t.join();
    }
    processed_total = st.triangulations.load();
    (void)processed_total;
    frontier.clear();
    for (auto& v : next) {
      for (auto& code : v) frontier.push_back(std::move(code));
    }
  }

  EnumerationStats stats;
  stats.triangulations = st.triangulations.load();
  stats.nodal_unique = st.nodal_unique.load();
  stats.regular = st.regular.load();
  stats.checked = st.checked.load();
  stats.stopped_early = st.stop.load() && !st.budget_hit.load();
  stats.exhausted = !st.stop.load();
  // Completeness markers describe the plain (non-symmetric) enumeration.
  if (stats.exhausted && st.tri_writer && !opt.symmetry_reduction)
    st.tri_writer->complete(stats.triangulations);
  (void)0;
  return stats;
}

}  // namespace engine

EnumerationStats enumerate_unimodular_triangulations(
    const LatticePolygon& p, const EnumerationOptions& opt,
    const std::function<bool(const Subdivision&, bool regular)>& cb) {
  auto stats = engine::sweep(
      p, 0, opt,
      [&](const PointContext& ctx, const CompactCells& cells, engine::LazyVerdict& v) {
        return cb(subdivision_from_compact(ctx, cells), v.regular());
      });
  if (!stats.exhausted && !stats.stopped_early)
    throw budget_error("triangulation enumeration exceeded its budget");
  return stats;
}

EnumerationStats enumerate_nodal_subdivisions(const LatticePolygon& p, int c,
                                              const EnumerationOptions& opt,
                                              const std::function<bool(const Subdivision&)>& cb) {
  auto stats = engine::sweep(
      p, c, opt,
      [&](const PointContext& ctx, const CompactCells& cells, engine::LazyVerdict& v) {
        if (!v.regular()) return true;
        return cb(subdivision_from_compact(ctx, cells));
      });
  if (!stats.exhausted && !stats.stopped_early)
    throw budget_error("nodal enumeration exceeded its budget");
  return stats;
}

}  // namespace tcnkit
