// Test-only oracles, kept independent of the library's solver and geometry
// paths: exhaustive vertex enumeration for small LPs, naive hull pruning by
// pairwise membership, brute-force grids, and a self-contained RNG.
#pragma once

#include <optional>
#include <vector>

#include "d2lab/lp.hpp"
#include "d2lab/polytope.hpp"

namespace oracles {

using d2lab::frac;
using d2lab::LpProblem;
using d2lab::RowSense;
using d2lab::Scalar;

// Deterministic xorshift generator so test corpora never depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }

  long next_int(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  Scalar next_scalar(long max_abs_num, long max_den) {
    return frac(next_int(-max_abs_num, max_abs_num), next_int(1, max_den));
  }

 private:
  uint64_t state_;
};

// Solves the square rational system M y = r by Gaussian elimination.
// Returns nothing when M is singular.
inline std::optional<std::vector<Scalar>> solve_square(
    std::vector<std::vector<Scalar>> M, std::vector<Scalar> r) {
  const size_t n = M.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(r[piv], r[col]);
    const Scalar inv = Scalar(1) / M[col][col];
    for (size_t j = col; j < n; ++j) M[col][j] *= inv;
    r[col] *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == col || M[i][col] == 0) continue;
      const Scalar f = M[i][col];
      for (size_t j = col; j < n; ++j) M[i][j] -= f * M[col][j];
      r[i] -= f * r[col];
    }
  }
  return r;
}

// Exhaustive enumeration of basic solutions: every n-subset of constraints
// (rows plus active bounds) taken as equalities. Returns the best feasible
// objective value, or nothing when no candidate is feasible. Exact for
// problems whose feasible set is a polytope with all variables boxed.
inline std::optional<Scalar> enumerate_optimum(const LpProblem& p) {
  const size_t n = p.num_vars();
  struct Con {
    std::vector<Scalar> a;
    Scalar b;
  };
  std::vector<Con> cons;
  for (size_t i = 0; i < p.num_rows(); ++i) cons.push_back({p.rows[i], p.rhs[i]});
  for (size_t j = 0; j < n; ++j) {
    std::vector<Scalar> e(n, Scalar(0));
    e[j] = 1;
    if (!p.bounds.empty() && p.bounds[j].lower) cons.push_back({e, *p.bounds[j].lower});
    if (!p.bounds.empty() && p.bounds[j].upper) cons.push_back({e, *p.bounds[j].upper});
  }
  std::optional<Scalar> best;
  const size_t m = cons.size();
  if (n == 0 || m < n) return std::nullopt;
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  for (;;) {
    std::vector<std::vector<Scalar>> M(n);
    std::vector<Scalar> r(n);
    for (size_t i = 0; i < n; ++i) {
      M[i] = cons[idx[i]].a;
      r[i] = cons[idx[i]].b;
    }
    if (auto x = solve_square(std::move(M), std::move(r))) {
      if (d2lab::lp_solution_feasible(p, *x)) {
        Scalar obj(0);
        for (size_t j = 0; j < n; ++j) obj += p.objective[j] * (*x)[j];
        const bool better =
            p.dir == d2lab::OptDir::maximize ? (!best || obj > *best) : (!best || obj < *best);
        if (better) best = obj;
      }
    }
    // next n-combination in lexicographic order
    bool advanced = false;
    for (size_t i = n; i-- > 0;) {
      if (idx[i] < m - n + i) {
        ++idx[i];
        for (size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return best;
  }
}

// Random LP with every variable boxed, so the feasible set (when nonempty)
// is a polytope and enumeration is a complete oracle.
inline LpProblem random_box_lp(Rng& rng, int max_vars, int max_rows) {
  LpProblem p;
  const int nv = static_cast<int>(rng.next_int(1, max_vars));
  const int nr = static_cast<int>(rng.next_int(0, max_rows));
  p.dir = rng.next_int(0, 1) ? d2lab::OptDir::maximize : d2lab::OptDir::minimize;
  for (int j = 0; j < nv; ++j) p.objective.push_back(rng.next_scalar(3, 3));
  for (int i = 0; i < nr; ++i) {
    std::vector<Scalar> row;
    for (int j = 0; j < nv; ++j) row.push_back(rng.next_scalar(3, 2));
    p.rows.push_back(std::move(row));
    const long s = rng.next_int(0, 2);
    p.senses.push_back(s == 0 ? RowSense::le : (s == 1 ? RowSense::ge : RowSense::eq));
    p.rhs.push_back(rng.next_scalar(4, 2));
  }
  for (int j = 0; j < nv; ++j) {
    const Scalar lo = frac(rng.next_int(-3, 0), 1);
    const Scalar hi = frac(rng.next_int(0, 3), 1);
    p.bounds.push_back(d2lab::VarBound::box(lo, hi));
  }
  return p;
}

// Naive canonicalization straight from the definition: keep v iff v is not a
// convex combination of the other listed vertices.
inline d2lab::VPolytope naive_prune(const d2lab::VPolytope& P) {
  using d2lab::VPolytope;
  std::vector<d2lab::SeqVector> pts = P.vertices;
  std::sort(pts.begin(), pts.end(), d2lab::lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(), d2lab::equal), pts.end());
  std::vector<d2lab::SeqVector> kept;
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<d2lab::SeqVector> rest;
    for (size_t j = 0; j < pts.size(); ++j)
      if (j != i) rest.push_back(pts[j]);
    VPolytope hull{P.model, rest, false};
    if (rest.empty() || !d2lab::contains(hull, pts[i])) kept.push_back(pts[i]);
  }
  return VPolytope{P.model, kept, true};
}

}  // namespace oracles
