#include "tcnkit/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

namespace tcnkit {

namespace {

// ---------------------------------------------------------------------------
// Fold system: one integer row per interior edge over the height variables,
// with parallelogram coplanarities eliminated by fraction-free substitution.
// Every reduced row satisfies  red_e = scale_e * fold_e + sum_k eqcoef_ek * eq_k
// with scale_e > 0, which is what certificate unwinding needs.
// ---------------------------------------------------------------------------

struct Incidence {
  std::uint16_t key;  // (a << 8) | b with a < b
  std::int16_t cell;
};

struct FoldSystem {
  int npts = 0;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> edges;  // per fold row
  std::vector<std::vector<long long>> orig;                  // fold rows, all points
  std::vector<std::vector<long long>> eq_orig;               // coplanarity rows
  std::vector<int> eq_cell;                                  // cell index per equality

  std::vector<int> free_vars;                 // surviving point indices
  std::vector<std::vector<long long>> red;    // fold rows over free vars
  std::vector<long long> scale;               // positive scale per fold row
  std::vector<std::vector<long long>> eqcoef; // per fold row, per equality
  // (reduced equality row over all points, pivot var), in elimination order;
  // eqcomb[k][j]: reduced equality k as a combination of original equalities.
  std::vector<std::pair<std::vector<long long>, int>> elim;
  std::vector<std::vector<long long>> elim_comb;
};

int cell_point_count(const CompactCell& c) { return c.kind == 0 ? 3 : 4; }

void cell_sides(const PointContext& ctx, const CompactCell& c,
                std::array<std::pair<std::uint8_t, std::uint8_t>, 4>& out, int& n) {
  if (c.kind == 0) {
    out[0] = {c.idx[0], c.idx[1]};
    out[1] = {c.idx[0], c.idx[2]};
    out[2] = {c.idx[1], c.idx[2]};
    n = 3;
    return;
  }
  auto v = cell_vertices_ccw(ctx, c);
  n = 4;
  for (int i = 0; i < 4; ++i) {
    int a = ctx.index_of(v[i]), b = ctx.index_of(v[(i + 1) % 4]);
    out[i] = {static_cast<std::uint8_t>(std::min(a, b)),
              static_cast<std::uint8_t>(std::max(a, b))};
  }
}

FoldSystem build_fold_system(const PointContext& ctx, const CompactCells& cells) {
  FoldSystem fs;
  fs.npts = static_cast<int>(ctx.points.size());

  std::vector<Incidence> inc;
  inc.reserve(cells.size() * 4);
  std::array<std::pair<std::uint8_t, std::uint8_t>, 4> sides;
  int ns = 0;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    cell_sides(ctx, cells[ci], sides, ns);
    for (int i = 0; i < ns; ++i) {
      inc.push_back({static_cast<std::uint16_t>((sides[i].first << 8) | sides[i].second),
                     static_cast<std::int16_t>(ci)});
    }
  }
  std::sort(inc.begin(), inc.end(), [](const Incidence& a, const Incidence& b) {
    return a.key < b.key || (a.key == b.key && a.cell < b.cell);
  });

  // Fold row per interior edge. The cell with smaller index supplies the
  // affine function; the opposite cell supplies the probe vertex q.
  for (std::size_t i = 0; i + 1 < inc.size(); ++i) {
    if (inc[i].key != inc[i + 1].key) continue;
    std::uint8_t ea = inc[i].key >> 8, eb = inc[i].key & 0xff;
    const CompactCell& c1 = cells[inc[i].cell];
    const CompactCell& c2 = cells[inc[i + 1].cell];
    auto base = cell_vertices_ccw(ctx, c1);
    // Probe: smallest-index vertex of c2 off the edge.
    int q = -1;
    for (int j = 0; j < cell_point_count(c2); ++j) {
      if (c2.idx[j] != ea && c2.idx[j] != eb) {
        q = c2.idx[j];
        break;
      }
    }
    LatticePoint A = base[0], B = base[1], C = base[2];
    LatticePoint Q = ctx.points[q];
    long long det = cross(B - A, C - A);  // +1 for ccw unimodular basis
    long long s = cross(Q - A, C - A) / det;
    long long t = cross(B - A, Q - A) / det;
    std::vector<long long> row(fs.npts, 0);
    row[ctx.index_of(A)] += 1 - s - t;
    row[ctx.index_of(B)] += s;
    row[ctx.index_of(C)] += t;
    row[q] -= 1;
    fs.edges.push_back({ea, eb});
    fs.orig.push_back(std::move(row));
    ++i;
  }

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    if (cells[ci].kind != 1) continue;
    auto v = cell_vertices_ccw(ctx, cells[ci]);
    std::vector<long long> row(fs.npts, 0);
    row[ctx.index_of(v[0])] += 1;
    row[ctx.index_of(v[1])] -= 1;
    row[ctx.index_of(v[2])] += 1;
    row[ctx.index_of(v[3])] -= 1;
    fs.eq_orig.push_back(std::move(row));
    fs.eq_cell.push_back(static_cast<int>(ci));
  }

  // Fraction-free elimination of the coplanarity rows.
  const std::size_t m = fs.orig.size();
  const std::size_t K = fs.eq_orig.size();
  std::vector<std::vector<long long>> work = fs.orig;
  std::vector<std::vector<long long>> eqwork = fs.eq_orig;
  std::vector<std::vector<long long>> eqcomb(K, std::vector<long long>(K, 0));
  for (std::size_t k = 0; k < K; ++k) eqcomb[k][k] = 1;
  fs.scale.assign(m, 1);
  fs.eqcoef.assign(m, std::vector<long long>(K, 0));
  std::vector<bool> eliminated(fs.npts, false);

  auto reduce_row = [&](std::vector<long long>& row, long long& row_scale,
                        std::vector<long long>& coef, const std::vector<long long>& eq,
                        const std::vector<long long>& eq_comb, int pivot) {
    long long a = eq[pivot];
    long long w = row[pivot];
    if (w == 0) return;
    long long mult = a > 0 ? a : -a;
    long long sgn = a > 0 ? 1 : -1;
    for (int j = 0; j < (int)row.size(); ++j) row[j] = mult * row[j] - sgn * w * eq[j];
    row_scale *= mult;
    for (std::size_t kk = 0; kk < K; ++kk)
      coef[kk] = mult * coef[kk] - sgn * w * eq_comb[kk];
  };

  for (std::size_t k = 0; k < K; ++k) {
    // Pick the pivot: smallest |coefficient|, largest index on ties.
    int pivot = -1;
    long long best = 0;
    for (int j = fs.npts - 1; j >= 0; --j) {
      long long a = eqwork[k][j];
      if (a == 0) continue;
      long long mag = a > 0 ? a : -a;
      if (pivot < 0 || mag < best) {
        pivot = j;
        best = mag;
      }
    }
    if (pivot < 0) continue;  // dependent coplanarity, nothing to do
    eliminated[pivot] = true;
    for (std::size_t e = 0; e < m; ++e)
      reduce_row(work[e], fs.scale[e], fs.eqcoef[e], eqwork[k], eqcomb[k], pivot);
    for (std::size_t k2 = k + 1; k2 < K; ++k2) {
      long long a = eqwork[k][pivot];
      long long w = eqwork[k2][pivot];
      if (w == 0) continue;
      long long mult = a > 0 ? a : -a;
      long long sgn = a > 0 ? 1 : -1;
      for (int j = 0; j < fs.npts; ++j)
        eqwork[k2][j] = mult * eqwork[k2][j] - sgn * w * eqwork[k][j];
      for (std::size_t kk = 0; kk < K; ++kk)
        eqcomb[k2][kk] = mult * eqcomb[k2][kk] - sgn * w * eqcomb[k][kk];
    }
    fs.elim.push_back({eqwork[k], pivot});
    fs.elim_comb.push_back(eqcomb[k]);
  }

  for (int j = 0; j < fs.npts; ++j) {
    if (!eliminated[j]) fs.free_vars.push_back(j);
  }
  fs.red.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    fs.red[e].resize(fs.free_vars.size());
    for (std::size_t j = 0; j < fs.free_vars.size(); ++j) fs.red[e][j] = work[e][fs.free_vars[j]];
  }
  return fs;
}

// Heights on the free variables -> heights on every point (coplanarities
// back-substituted in reverse elimination order).
std::vector<Rational> expand_heights(const FoldSystem& fs, const std::vector<Rational>& free_h) {
  std::vector<Rational> h(fs.npts, Rational(0));
  for (std::size_t j = 0; j < fs.free_vars.size(); ++j) h[fs.free_vars[j]] = free_h[j];
  for (std::size_t k = fs.elim.size(); k-- > 0;) {
    const auto& [row, pivot] = fs.elim[k];
    Rational acc(0);
    for (int j = 0; j < fs.npts; ++j) {
      if (j == pivot || row[j] == 0) continue;
      acc += rat(row[j]) * h[j];
    }
    h[pivot] = -acc / rat(row[pivot]);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Dense tableau simplex, shared by the double prefilter and the exact path.
// maximize c.x subject to Ax <= b, x >= 0, with b >= 0 (slack basis start).
// ---------------------------------------------------------------------------

template <typename T>
struct SimplexOutcome {
  enum class Status { Optimal, IterationLimit, Unbounded } status = Status::IterationLimit;
  std::vector<T> x;  // structural values
  std::vector<T> y;  // duals (slack reduced costs)
  T objective{};
};

template <typename T>
bool is_pos(const T& v) {
  if constexpr (std::is_same_v<T, double>)
    return v > 1e-9;
  else
    return v > 0;
}
template <typename T>
bool is_neg(const T& v) {
  if constexpr (std::is_same_v<T, double>)
    return v < -1e-9;
  else
    return v < 0;
}

template <typename T>
SimplexOutcome<T> run_simplex(const std::vector<std::vector<T>>& A, const std::vector<T>& b,
                              const std::vector<T>& c, bool bland, int max_iter) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  std::vector<std::vector<T>> tab(m, std::vector<T>(n + m + 1, T(0)));
  std::vector<T> z(n + m + 1, T(0));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab[i][j] = A[i][j];
    tab[i][n + i] = T(1);
    tab[i][n + m] = b[i];
    basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) z[j] = -c[j];

  SimplexOutcome<T> out;
  for (int iter = 0; iter < max_iter; ++iter) {
    int enter = -1;
    if (bland) {
      for (int j = 0; j < n + m; ++j) {
        if (is_neg(z[j])) {
          enter = j;
          break;
        }
      }
    } else {
      T best = T(0);
      for (int j = 0; j < n + m; ++j) {
        if (is_neg(z[j]) && z[j] < best) {
          best = z[j];
          enter = j;
        }
      }
    }
    if (enter < 0) {
      out.status = SimplexOutcome<T>::Status::Optimal;
      out.x.assign(n, T(0));
      for (int i = 0; i < m; ++i) {
        if (basis[i] < n) out.x[basis[i]] = tab[i][n + m];
      }
      out.y.assign(m, T(0));
      for (int i = 0; i < m; ++i) out.y[i] = z[n + i];
      out.objective = z[n + m];
      return out;
    }
    int leave = -1;
    bool have = false;
    T best_ratio{};
    for (int i = 0; i < m; ++i) {
      if (!is_pos(tab[i][enter])) continue;
      T ratio = tab[i][n + m] / tab[i][enter];
      if (!have || ratio < best_ratio ||
          (ratio == best_ratio && leave >= 0 && basis[i] < basis[leave])) {
        have = true;
        best_ratio = ratio;
        leave = i;
      }
    }
    if (!have) {
      out.status = SimplexOutcome<T>::Status::Unbounded;
      return out;
    }
    // Pivot.
    T piv = tab[leave][enter];
    for (int j = 0; j <= n + m; ++j) tab[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      T f = tab[i][enter];
      if (f == T(0)) continue;
      for (int j = 0; j <= n + m; ++j) tab[i][j] -= f * tab[leave][j];
    }
    T fz = z[enter];
    if (fz != T(0)) {
      for (int j = 0; j <= n + m; ++j) z[j] -= fz * tab[leave][j];
    }
    basis[leave] = enter;
  }
  return out;
}

// Builds the LP data (split free variables u - v plus the margin variable)
// from the reduced fold rows.
template <typename T>
void build_lp(const FoldSystem& fs, std::vector<std::vector<T>>& A, std::vector<T>& b,
              std::vector<T>& c) {
  const int m = static_cast<int>(fs.red.size());
  const int nv = static_cast<int>(fs.free_vars.size());
  const int ncols = 2 * nv + 1;
  A.assign(m + 1, std::vector<T>(ncols, T(0)));
  b.assign(m + 1, T(0));
  for (int e = 0; e < m; ++e) {
    for (int j = 0; j < nv; ++j) {
      if constexpr (std::is_same_v<T, double>) {
        A[e][j] = static_cast<double>(-fs.red[e][j]);
        A[e][nv + j] = static_cast<double>(fs.red[e][j]);
      } else {
        A[e][j] = T(static_cast<long>(-fs.red[e][j]));
        A[e][nv + j] = T(static_cast<long>(fs.red[e][j]));
      }
    }
    A[e][2 * nv] = T(1);
  }
  A[m][2 * nv] = T(1);
  b[m] = T(1);
  c.assign(ncols, T(0));
  c[2 * nv] = T(1);
}

struct CompactCertificates {
  bool regular = false;
  std::vector<Rational> heights;  // all points, when regular
  Rational margin;
  std::vector<Rational> fold_mult;  // per fold row, when not regular
};

// Exact margin of reduced-space heights, already capped at 1.
Rational exact_margin(const FoldSystem& fs, const std::vector<Rational>& free_h) {
  Rational margin(1);
  for (std::size_t e = 0; e < fs.red.size(); ++e) {
    Rational v(0);
    for (std::size_t j = 0; j < fs.free_vars.size(); ++j) {
      if (fs.red[e][j] != 0) v += rat(fs.red[e][j]) * free_h[j];
    }
    v /= rat(fs.scale[e]);
    if (v < margin) margin = v;
  }
  return margin;
}

bool farkas_combination_is_zero(const FoldSystem& fs, const std::vector<Rational>& fold_mult) {
  // sum_e y_e*scale_e*orig_e + sum_k mu_k*eq_k must vanish identically.
  std::vector<Rational> acc(fs.npts, Rational(0));
  Rational total(0);
  for (std::size_t e = 0; e < fs.orig.size(); ++e) {
    if (fold_mult[e] == 0) continue;
    if (fold_mult[e] < 0) return false;
    total += fold_mult[e];
    Rational w = fold_mult[e] * rat(fs.scale[e]);
    for (int j = 0; j < fs.npts; ++j) {
      if (fs.orig[e][j] != 0) acc[j] += w * rat(fs.orig[e][j]);
    }
  }
  if (total == 0) return false;
  for (std::size_t k = 0; k < fs.eq_orig.size(); ++k) {
    Rational mu(0);
    for (std::size_t e = 0; e < fs.orig.size(); ++e) {
      if (fold_mult[e] != 0 && fs.eqcoef[e][k] != 0)
        mu += fold_mult[e] * rat(fs.eqcoef[e][k]);
    }
    if (mu == 0) continue;
    for (int j = 0; j < fs.npts; ++j) {
      if (fs.eq_orig[k][j] != 0) acc[j] += mu * rat(fs.eq_orig[k][j]);
    }
  }
  for (auto& v : acc) {
    if (v != 0) return false;
  }
  return true;
}

CompactCertificates solve_regularity(const FoldSystem& fs) {
  CompactCertificates out;
  const int m = static_cast<int>(fs.red.size());
  const int nv = static_cast<int>(fs.free_vars.size());

  if (m == 0) {
    out.regular = true;
    out.heights = expand_heights(fs, std::vector<Rational>(nv, Rational(0)));
    out.margin = Rational(1);
    return out;
  }
  // A fold row with no free support is an immediate contradiction.
  for (int e = 0; e < m; ++e) {
    bool zero = true;
    for (int j = 0; j < nv && zero; ++j) zero = fs.red[e][j] == 0;
    if (zero) {
      out.regular = false;
      out.fold_mult.assign(m, Rational(0));
      out.fold_mult[e] = Rational(1);
      return out;
    }
  }

  // Float prefilter.
  {
    std::vector<std::vector<double>> A;
    std::vector<double> b, c;
    build_lp<double>(fs, A, b, c);
    auto r = run_simplex<double>(A, b, c, false, 2000);
    if (r.status == SimplexOutcome<double>::Status::Optimal) {
      if (r.objective > 1e-6) {
        // Round a scaled copy of the float heights to integers and verify
        // the folds exactly; success certifies regularity outright.
        std::vector<double> hf(nv);
        double hmax = 1.0;
        for (int j = 0; j < nv; ++j) {
          hf[j] = r.x[j] - r.x[nv + j];
          hmax = std::max(hmax, std::fabs(hf[j]));
        }
        double scale = std::min(262144.0 / r.objective, 1.0e12 / hmax);
        std::vector<long long> hi(nv);
        for (int j = 0; j < nv; ++j) hi[j] = llround(hf[j] * scale);
        bool ok = true;
        for (int e = 0; e < m && ok; ++e) {
          long long dotv = 0;
          for (int j = 0; j < nv; ++j) dotv += fs.red[e][j] * hi[j];
          ok = dotv >= 1;
        }
        if (ok) {
          std::vector<Rational> free_h(nv);
          for (int j = 0; j < nv; ++j) free_h[j] = rat(hi[j]);
          out.regular = true;
          out.margin = exact_margin(fs, free_h);
          out.heights = expand_heights(fs, free_h);
          return out;
        }
      } else if (r.objective < 1e-7) {
        // Exact Farkas attempt from the float dual support.
        std::vector<int> support;
        for (int e = 0; e < m; ++e) {
          if (r.y[e] > 1e-9) support.push_back(e);
        }
        if (!support.empty() && support.size() <= static_cast<std::size_t>(nv + 1)) {
          const int K = static_cast<int>(support.size());
          // Rows: one per free var plus normalization; columns: support + rhs.
          std::vector<std::vector<Rational>> M(nv + 1, std::vector<Rational>(K + 1, Rational(0)));
          for (int j = 0; j < nv; ++j) {
            for (int k = 0; k < K; ++k) M[j][k] = rat(fs.red[support[k]][j]);
          }
          for (int k = 0; k < K; ++k) M[nv][k] = Rational(1);
          M[nv][K] = Rational(1);
          // Gaussian elimination.
          std::vector<int> pivot_col_of_row;
          int row = 0;
          std::vector<int> col_pivot(K, -1);
          for (int col = 0; col < K && row < nv + 1; ++col) {
            int pr = -1;
            for (int i = row; i < nv + 1; ++i) {
              if (M[i][col] != 0) {
                pr = i;
                break;
              }
            }
            if (pr < 0) continue;
            std::swap(M[row], M[pr]);
            Rational pv = M[row][col];
            for (int j2 = col; j2 <= K; ++j2) M[row][j2] /= pv;
            for (int i = 0; i < nv + 1; ++i) {
              if (i == row) continue;
              Rational f = M[i][col];
              if (f == 0) continue;
              for (int j2 = col; j2 <= K; ++j2) M[i][j2] -= f * M[row][j2];
            }
            col_pivot[col] = row;
            ++row;
          }
          bool consistent = true;
          for (int i = row; i < nv + 1; ++i) {
            if (M[i][K] != 0) {
              consistent = false;
              break;
            }
          }
          if (consistent) {
            std::vector<Rational> y(m, Rational(0));
            bool nonneg = true;
            for (int k = 0; k < K; ++k) {
              Rational val = col_pivot[k] >= 0 ? M[col_pivot[k]][K] : Rational(0);
              if (val < 0) {
                nonneg = false;
                break;
              }
              y[support[k]] = val;
            }
            if (nonneg && farkas_combination_is_zero(fs, y)) {
              out.regular = false;
              out.fold_mult = std::move(y);
              return out;
            }
          }
        }
      }
    }
  }

  // Exact rational simplex with Bland's rule.
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b, c;
  build_lp<Rational>(fs, A, b, c);
  auto r = run_simplex<Rational>(A, b, c, true, 200000);
  if (r.status != SimplexOutcome<Rational>::Status::Optimal)
    throw std::logic_error("exact simplex failed to terminate");
  if (r.objective > 0) {
    std::vector<Rational> free_h(nv);
    for (int j = 0; j < nv; ++j) free_h[j] = r.x[j] - r.x[nv + j];
    out.regular = true;
    out.margin = exact_margin(fs, free_h);
    out.heights = expand_heights(fs, free_h);
    if (out.margin <= 0) throw std::logic_error("exact simplex produced a bad witness");
    return out;
  }
  out.regular = false;
  out.fold_mult.assign(m, Rational(0));
  for (int e = 0; e < m; ++e) out.fold_mult[e] = r.y[e];
  if (!farkas_combination_is_zero(fs, out.fold_mult))
    throw std::logic_error("exact simplex produced a bad Farkas certificate");
  return out;
}

std::string fold_key(const PointContext& ctx, std::pair<std::uint8_t, std::uint8_t> e) {
  return "fold:" + to_string(ctx.points[e.first]) + "-" + to_string(ctx.points[e.second]);
}

}  // namespace

namespace engine {

RegularityCheck check_regular_compact(const PointContext& ctx, const CompactCells& cells) {
  FoldSystem fs = build_fold_system(ctx, cells);
  CompactCertificates cc = solve_regularity(fs);
  RegularityCheck out;
  out.regular = cc.regular;
  if (cc.regular) {
    out.heights = std::move(cc.heights);
    out.margin = cc.margin;
    if (out.margin <= 0) throw std::logic_error("regular verdict with nonpositive margin");
  } else {
    for (std::size_t e = 0; e < fs.orig.size(); ++e) {
      if (cc.fold_mult[e] == 0) continue;
      out.fold_multipliers.push_back({fs.edges[e], cc.fold_mult[e] * rat(fs.scale[e])});
    }
    for (std::size_t k = 0; k < fs.eq_orig.size(); ++k) {
      Rational mu(0);
      for (std::size_t e = 0; e < fs.orig.size(); ++e) {
        if (cc.fold_mult[e] != 0 && fs.eqcoef[e][k] != 0)
          mu += cc.fold_mult[e] * rat(fs.eqcoef[e][k]);
      }
      if (mu != 0) out.flat_multipliers.push_back({fs.eq_cell[k], mu});
    }
  }
  return out;
}

}  // namespace engine

RegularityResult check_regular(const Subdivision& s) {
  PointContext ctx(s.polygon());
  CompactCells cells = compact_from_subdivision(ctx, s);
  validate_cells(ctx, cells);
  auto rc = engine::check_regular_compact(ctx, cells);
  RegularityResult out;
  out.regular = rc.regular;
  if (rc.regular) {
    HeightCertificate cert;
    for (std::size_t i = 0; i < ctx.points.size(); ++i) cert.heights[ctx.points[i]] = rc.heights[i];
    cert.margin = rc.margin;
    out.certificate = std::move(cert);
  } else {
    FarkasCertificate f;
    for (auto& [edge, mult] : rc.fold_multipliers) f.multipliers[fold_key(ctx, edge)] = mult;
    for (auto& [cell, mult] : rc.flat_multipliers) {
      if (mult > 0)
        f.multipliers["flat+:" + std::to_string(cell)] = mult;
      else
        f.multipliers["flat-:" + std::to_string(cell)] = -mult;
    }
    out.farkas = std::move(f);
  }
  return out;
}

std::optional<Rational> fold_margin(const Subdivision& s,
                                    const std::map<LatticePoint, Rational>& heights) {
  PointContext ctx(s.polygon());
  CompactCells cells = compact_from_subdivision(ctx, s);
  FoldSystem fs = build_fold_system(ctx, cells);
  std::vector<Rational> h(ctx.points.size());
  for (std::size_t i = 0; i < ctx.points.size(); ++i) {
    auto it = heights.find(ctx.points[i]);
    if (it == heights.end()) return std::nullopt;
    h[i] = it->second;
  }
  for (auto& eq : fs.eq_orig) {
    Rational v(0);
    for (int j = 0; j < fs.npts; ++j) {
      if (eq[j] != 0) v += rat(eq[j]) * h[j];
    }
    if (v != 0) return std::nullopt;
  }
  Rational margin(1);
  for (auto& row : fs.orig) {
    Rational v(0);
    for (int j = 0; j < fs.npts; ++j) {
      if (row[j] != 0) v += rat(row[j]) * h[j];
    }
    if (v < margin) margin = v;
  }
  return margin;
}

bool verify_height_certificate(const Subdivision& s, const HeightCertificate& c) {
  if (c.margin <= 0 || c.margin > 1) return false;
  auto m = fold_margin(s, c.heights);
  return m.has_value() && *m >= c.margin;
}

bool verify_farkas(const Subdivision& s, const FarkasCertificate& f) {
  PointContext ctx(s.polygon());
  CompactCells cells = compact_from_subdivision(ctx, s);
  FoldSystem fs = build_fold_system(ctx, cells);
  std::vector<Rational> acc(fs.npts, Rational(0));
  Rational fold_total(0);
  for (auto& [key, mult] : f.multipliers) {
    if (mult < 0) return false;
    if (mult == 0) continue;
    if (key.rfind("fold:", 0) == 0) {
      int found = -1;
      for (std::size_t e = 0; e < fs.edges.size(); ++e) {
        if (fold_key(ctx, fs.edges[e]) == key) {
          found = static_cast<int>(e);
          break;
        }
      }
      if (found < 0) return false;
      fold_total += mult;
      for (int j = 0; j < fs.npts; ++j) {
        if (fs.orig[found][j] != 0) acc[j] += mult * rat(fs.orig[found][j]);
      }
    } else if (key.rfind("flat+:", 0) == 0 || key.rfind("flat-:", 0) == 0) {
      bool plus = key[4] == '+';
      int cell = std::atoi(key.c_str() + 6);
      int found = -1;
      for (std::size_t k = 0; k < fs.eq_cell.size(); ++k) {
        if (fs.eq_cell[k] == cell) {
          found = static_cast<int>(k);
          break;
        }
      }
      if (found < 0) return false;
      Rational signed_mult = plus ? mult : -mult;
      for (int j = 0; j < fs.npts; ++j) {
        if (fs.eq_orig[found][j] != 0) acc[j] += signed_mult * rat(fs.eq_orig[found][j]);
      }
    } else {
      return false;
    }
  }
  if (fold_total <= 0) return false;
  for (auto& v : acc) {
    if (v != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Upper-hull projection.
// ---------------------------------------------------------------------------

GeneralSubdivision subdivision_from_heights(const LatticePolygon& p,
                                            const std::map<LatticePoint, Rational>& heights) {
  std::vector<LatticePoint> pts = lattice_points(p);
  const int n = static_cast<int>(pts.size());
  mpz_class denom(1);
  for (auto& q : pts) {
    auto it = heights.find(q);
    if (it == heights.end()) throw input_error("height function missing a lattice point");
    mpz_class d = it->second.get_den();
    denom = lcm(denom, d);
  }
  std::vector<mpz_class> H(n);
  for (int i = 0; i < n; ++i) {
    const Rational& r = heights.at(pts[i]);
    H[i] = r.get_num() * (denom / r.get_den());
  }

  struct Face {
    std::set<int> pts;
  };
  std::map<std::string, Face> faces;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        long long oz = orient(pts[i], pts[j], pts[k]);
        if (oz == 0) continue;
        // Normal of the lifted plane, oriented with positive z.
        mpz_class dh1 = H[j] - H[i], dh2 = H[k] - H[i];
        long long dx1 = pts[j].x - pts[i].x, dy1 = pts[j].y - pts[i].y;
        long long dx2 = pts[k].x - pts[i].x, dy2 = pts[k].y - pts[i].y;
        mpz_class nx = mpz(dy1) * dh2 - dh1 * mpz(dy2);
        mpz_class ny = dh1 * mpz(dx2) - mpz(dx1) * dh2;
        mpz_class nz = mpz(oz);
        if (nz < 0) {
          nx = -nx;
          ny = -ny;
          nz = -nz;
        }
        mpz_class g = gcd(gcd(abs(nx), abs(ny)), nz);
        if (g > 1) {
          nx /= g;
          ny /= g;
          nz /= g;
        }
        mpz_class d = nx * mpz(pts[i].x) + ny * mpz(pts[i].y) + nz * H[i];
        std::string key =
            nx.get_str() + "|" + ny.get_str() + "|" + nz.get_str() + "|" + d.get_str();
        if (faces.count(key)) continue;
        bool upper = true;
        Face face;
        for (int q = 0; q < n && upper; ++q) {
          mpz_class side = nx * mpz(pts[q].x) + ny * mpz(pts[q].y) + nz * H[q] - d;
          if (side > 0)
            upper = false;
          else if (side == 0)
            face.pts.insert(q);
        }
        if (upper) faces.emplace(std::move(key), std::move(face));
      }
    }
  }

  GeneralSubdivision out{p, {}};
  for (auto& [key, face] : faces) {
    std::vector<LatticePoint> fp;
    for (int i : face.pts) fp.push_back(pts[i]);
    auto hull = convex_hull(fp);
    if (!hull) throw std::logic_error("upper facet degenerated");
    out.cells.push_back(hull->vertices());
  }
  std::sort(out.cells.begin(), out.cells.end());
  return out;
}

bool same_cells(const GeneralSubdivision& g, const Subdivision& s) {
  if (!(g.polygon == s.polygon())) return false;
  std::vector<std::vector<LatticePoint>> cells;
  for (auto& c : s.cells()) {
    std::vector<LatticePoint> cyc(c.v.begin(), c.v.begin() + c.size());
    cells.push_back(std::move(cyc));
  }
  std::sort(cells.begin(), cells.end());
  return cells == g.cells;
}

}  // namespace tcnkit
