#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "tcnkit/geometry.hpp"
#include "tcnkit/subdivision.hpp"

namespace tcnkit {

struct EnumerationBudget {
  std::uint64_t max_triangulations = 100'000'000;
  std::uint64_t max_nodal = 500'000'000;
};

struct EnumerationOptions {
  int jobs = 1;
  EnumerationBudget budget;
  std::string cache_dir;  // empty disables caching
  bool symmetry_reduction = false;
  // Called periodically with (phase, count); phase is "bfs" or "nodal".
  std::function<void(const char*, std::uint64_t)> progress;
};

struct EnumerationStats {
  std::uint64_t triangulations = 0;   // distinct triangulations visited
  std::uint64_t nodal_unique = 0;     // distinct c-node subdivisions (c >= 1)
  std::uint64_t regular = 0;          // regular among the emitted stream
  std::uint64_t checked = 0;          // regularity verdicts computed or loaded
  bool exhausted = false;             // full enumeration completed
  bool stopped_early = false;         // a sink returned false
};

namespace engine {

// Lazily computed (and disk-cached) regularity verdict of one subdivision.
class LazyVerdict {
 public:
  virtual ~LazyVerdict() = default;
  virtual bool regular() = 0;  // exact; computed once on first call
};

// Sink for compact subdivisions; return false to stop the sweep. Invoked
// concurrently when jobs > 1; each distinct subdivision is delivered once.
// Sinks that only need a filtered stream can skip the verdict entirely.
using CompactSink = std::function<bool(const PointContext& ctx, const CompactCells& cells,
                                       LazyVerdict& verdict)>;

// Enumerates every unimodular triangulation of p (flip BFS from a placing
// seed; non-regular triangulations are retained both as stream elements and
// as coarsening sources). c = 0 delivers the triangulations themselves;
// c >= 1 delivers every distinct nodal subdivision with exactly c unit
// parallelograms obtained by coarsening pairwise-disjoint candidate sets.
EnumerationStats sweep(const LatticePolygon& p, int c, const EnumerationOptions& opt,
                       const CompactSink& sink);

}  // namespace engine

// Spec-level streams. The triangulation stream tags every triangulation
// with its regularity verdict; the nodal stream emits only subdivisions
// that pass the regularity check. Throws budget_error when the enumeration
// hits its budget before finishing.
EnumerationStats enumerate_unimodular_triangulations(
    const LatticePolygon& p, const EnumerationOptions& opt,
    const std::function<bool(const Subdivision&, bool regular)>& cb);

EnumerationStats enumerate_nodal_subdivisions(const LatticePolygon& p, int c,
                                              const EnumerationOptions& opt,
                                              const std::function<bool(const Subdivision&)>& cb);

}  // namespace tcnkit
