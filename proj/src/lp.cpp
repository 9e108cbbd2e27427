// Exact rational primal simplex.
//
// The problem is brought to computational standard form
//     min c.x   s.t.  A x = b,  x >= 0,  b >= 0
// by shifting / mirroring / splitting the original variables, turning
// inequalities into <= rows with unit slacks, and negating rows until the
// right-hand side is nonnegative.  Rows whose slack cannot serve as a
// starting basis column get an artificial variable; phase 1 minimizes the
// sum of artificials.  Both cost rows are carried through every pivot.
//
// Anti-cycling: the leaving row is chosen by a lexicographic ratio test
// over (rhs, columns of the initial basis), which keeps every row vector
// lexicographically positive and therefore strictly decreases the phase
// objective row in lex order; no basis can repeat.

#include "d2lab/lp.hpp"

#include <cassert>

namespace d2lab {

namespace {

struct VarMap {
  enum Kind { shifted, mirrored, split } kind = shifted;
  Scalar offset;   // shifted: x = offset + x'     mirrored: x = offset - x'
  size_t col = 0;  // split: x = x[col] - x[col + 1]
};

struct Tableau {
  size_t m = 0, n = 0;                  // rows, structural+slack+artificial cols
  std::vector<std::vector<Scalar>> a;   // m x n
  std::vector<Scalar> b;                // m
  std::vector<Scalar> cost1, cost2;     // reduced cost rows (phase 1 / 2)
  Scalar obj1, obj2;                    // negated objective values
  std::vector<size_t> basis;            // m
  std::vector<size_t> lex_cols;         // initial basis columns, row order
  std::vector<bool> artificial;         // per column

  void pivot(size_t r, size_t c) {
    const Scalar inv = Scalar(1) / a[r][c];
    for (size_t j = 0; j < n; ++j) a[r][j] *= inv;
    b[r] *= inv;
    a[r][c] = 1;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Scalar f = a[i][c];
      for (size_t j = 0; j < n; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
      a[i][c] = 0;
    }
    auto apply_cost = [&](std::vector<Scalar>& cost, Scalar& obj) {
      if (cost[c] == 0) return;
      const Scalar f = cost[c];
      for (size_t j = 0; j < n; ++j)
        if (a[r][j] != 0) cost[j] -= f * a[r][j];
      obj -= f * b[r];
      cost[c] = 0;
    };
    apply_cost(cost1, obj1);
    apply_cost(cost2, obj2);
    basis[r] = c;
  }

  // Lexicographic ratio comparison of rows r1, r2 for entering column c:
  // compares (b/a_c, lex_cols row entries / a_c) componentwise.
  bool lex_less(size_t r1, size_t r2, size_t c) const {
    const Scalar& p1 = a[r1][c];
    const Scalar& p2 = a[r2][c];
    Scalar lhs = b[r1] * p2, rhs = b[r2] * p1;
    if (lhs != rhs) return lhs < rhs;
    for (size_t k : lex_cols) {
      lhs = a[r1][k] * p2;
      rhs = a[r2][k] * p1;
      if (lhs != rhs) return lhs < rhs;
    }
    return false;
  }

  // One simplex phase on the given cost row. Returns false iff unbounded.
  bool run_phase(std::vector<Scalar>& cost, Scalar& obj, bool allow_artificial) {
    (void)obj;
    for (;;) {
      // Dantzig: most negative reduced cost, lowest index on ties.
      size_t enter = n;
      const Scalar* best = nullptr;
      for (size_t j = 0; j < n; ++j) {
        if (!allow_artificial && artificial[j]) continue;
        if (cost[j] < 0 && (best == nullptr || cost[j] < *best)) {
          best = &cost[j];
          enter = j;
        }
      }
      if (enter == n) return true;
      size_t leave = m;
      for (size_t i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        if (leave == m || lex_less(i, leave, enter)) leave = i;
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

void validate_lp(const LpProblem& p) {
  const size_t n = p.num_vars();
  const size_t m = p.num_rows();
  if (p.senses.size() != m || p.rhs.size() != m)
    throw std::invalid_argument("lp: senses/rhs size must match row count");
  for (const auto& row : p.rows)
    if (row.size() != n)
      throw std::invalid_argument("lp: row length must match objective length");
  if (!p.bounds.empty() && p.bounds.size() != n)
    throw std::invalid_argument("lp: bounds size must match objective length");
}

LpResult solve_lp(const LpProblem& p) {
  validate_lp(p);
  const size_t n_orig = p.num_vars();
  const size_t m_orig = p.num_rows();

  std::vector<VarBound> bounds = p.bounds;
  if (bounds.empty()) bounds.assign(n_orig, VarBound::free());

  // Variable transforms to x' >= 0.
  std::vector<VarMap> vmap(n_orig);
  size_t n_struct = 0;
  struct ExtraRow {
    size_t col;
    Scalar ub;
  };
  std::vector<ExtraRow> extra_rows;  // x'[col] <= ub
  for (size_t j = 0; j < n_orig; ++j) {
    const auto& bd = bounds[j];
    if (bd.lower && bd.upper && *bd.upper < *bd.lower)
      return {LpStatus::infeasible, Scalar(0), {}};
    if (bd.lower) {
      vmap[j] = {VarMap::shifted, *bd.lower, n_struct};
      if (bd.upper) extra_rows.push_back({n_struct, *bd.upper - *bd.lower});
      n_struct += 1;
    } else if (bd.upper) {
      vmap[j] = {VarMap::mirrored, *bd.upper, n_struct};
      n_struct += 1;
    } else {
      vmap[j] = {VarMap::split, Scalar(0), n_struct};
      n_struct += 2;
    }
  }

  // Objective in minimize form over transformed vars.
  const bool maximize = p.dir == OptDir::maximize;
  std::vector<Scalar> c(n_struct, Scalar(0));
  Scalar c_const(0);
  for (size_t j = 0; j < n_orig; ++j) {
    Scalar cj = maximize ? -p.objective[j] : p.objective[j];
    const auto& vm = vmap[j];
    switch (vm.kind) {
      case VarMap::shifted:
        c[vm.col] += cj;
        c_const += cj * vm.offset;
        break;
      case VarMap::mirrored:
        c[vm.col] -= cj;
        c_const += cj * vm.offset;
        break;
      case VarMap::split:
        c[vm.col] += cj;
        c[vm.col + 1] -= cj;
        break;
    }
  }

  // Rows in "<= / =" form over transformed variables.
  struct StdRow {
    std::vector<Scalar> a;
    Scalar b;
    bool eq;
  };
  std::vector<StdRow> rows;
  rows.reserve(m_orig + extra_rows.size());
  for (size_t i = 0; i < m_orig; ++i) {
    // ge rows are negated into le form before the variable substitution.
    const Scalar sign = (p.senses[i] == RowSense::ge) ? Scalar(-1) : Scalar(1);
    StdRow r{std::vector<Scalar>(n_struct, Scalar(0)), sign * p.rhs[i],
             p.senses[i] == RowSense::eq};
    for (size_t j = 0; j < n_orig; ++j) {
      const Scalar aij = sign * p.rows[i][j];
      if (aij == 0) continue;
      const auto& vm = vmap[j];
      switch (vm.kind) {
        case VarMap::shifted:
          r.a[vm.col] += aij;
          r.b -= aij * vm.offset;
          break;
        case VarMap::mirrored:
          r.a[vm.col] -= aij;
          r.b -= aij * vm.offset;
          break;
        case VarMap::split:
          r.a[vm.col] += aij;
          r.a[vm.col + 1] -= aij;
          break;
      }
    }
    rows.push_back(std::move(r));
  }
  for (const auto& er : extra_rows) {
    StdRow r{std::vector<Scalar>(n_struct, Scalar(0)), er.ub, false};
    r.a[er.col] = 1;
    rows.push_back(std::move(r));
  }

  const size_t m = rows.size();
  // Column layout: structural | slacks | artificials.
  size_t n_slack = 0;
  for (const auto& r : rows)
    if (!r.eq) ++n_slack;

  Tableau t;
  t.m = m;
  std::vector<int> slack_col(m, -1);
  std::vector<bool> needs_artificial(m, false);
  size_t col = n_struct;
  for (size_t i = 0; i < m; ++i)
    if (!rows[i].eq) slack_col[i] = static_cast<int>(col++);
  size_t n_art = 0;
  for (size_t i = 0; i < m; ++i) {
    // After sign normalization (below) a slack row with nonnegative rhs can
    // start basic; everything else needs an artificial.
    bool negate = rows[i].b < 0;
    if (rows[i].eq || negate) {
      needs_artificial[i] = true;
      ++n_art;
    }
  }
  t.n = n_struct + n_slack + n_art;
  t.a.assign(m, std::vector<Scalar>(t.n, Scalar(0)));
  t.b.assign(m, Scalar(0));
  t.basis.assign(m, 0);
  t.artificial.assign(t.n, false);
  t.cost1.assign(t.n, Scalar(0));
  t.cost2.assign(t.n, Scalar(0));
  t.obj1 = 0;
  t.obj2 = 0;

  size_t art = n_struct + n_slack;
  for (size_t i = 0; i < m; ++i) {
    const bool negate = rows[i].b < 0;
    const Scalar sign = negate ? Scalar(-1) : Scalar(1);
    for (size_t j = 0; j < n_struct; ++j) t.a[i][j] = sign * rows[i].a[j];
    t.b[i] = sign * rows[i].b;
    if (slack_col[i] >= 0) t.a[i][static_cast<size_t>(slack_col[i])] = sign;
    if (needs_artificial[i]) {
      t.a[i][art] = 1;
      t.artificial[art] = true;
      t.basis[i] = art;
      ++art;
    } else {
      t.basis[i] = static_cast<size_t>(slack_col[i]);
    }
    t.lex_cols.push_back(t.basis[i]);
  }

  // Phase-2 reduced costs start as c (initial basis cost is zero).
  for (size_t j = 0; j < n_struct; ++j) t.cost2[j] = c[j];
  // Phase-1 reduced costs: minimize sum of artificials -> subtract their rows.
  bool have_artificial = n_art > 0;
  if (have_artificial) {
    for (size_t i = 0; i < m; ++i) {
      if (!needs_artificial[i]) continue;
      for (size_t j = 0; j < t.n; ++j)
        if (!t.artificial[j]) t.cost1[j] -= t.a[i][j];
      t.obj1 -= t.b[i];
    }
    bool ok = t.run_phase(t.cost1, t.obj1, true);
    assert(ok);  // phase 1 is bounded below by 0
    (void)ok;
    if (t.obj1 != 0) return {LpStatus::infeasible, Scalar(0), {}};
    // Remove basic artificials: pivot them out or drop redundant rows.
    for (size_t i = 0; i < t.m;) {
      if (!t.artificial[t.basis[i]]) {
        ++i;
        continue;
      }
      size_t enter = t.n;
      for (size_t j = 0; j < t.n && enter == t.n; ++j)
        if (!t.artificial[j] && t.a[i][j] != 0) enter = j;
      if (enter != t.n) {
        t.pivot(i, enter);
        ++i;
      } else {
        t.a.erase(t.a.begin() + static_cast<long>(i));
        t.b.erase(t.b.begin() + static_cast<long>(i));
        t.basis.erase(t.basis.begin() + static_cast<long>(i));
        --t.m;
      }
    }
  }

  if (!t.run_phase(t.cost2, t.obj2, false))
    return {LpStatus::unbounded, Scalar(0), {}};

  // Read the solution back through the variable transforms.
  std::vector<Scalar> xstd(t.n, Scalar(0));
  for (size_t i = 0; i < t.m; ++i) xstd[t.basis[i]] = t.b[i];
  std::vector<Scalar> x(n_orig, Scalar(0));
  for (size_t j = 0; j < n_orig; ++j) {
    const auto& vm = vmap[j];
    switch (vm.kind) {
      case VarMap::shifted: x[j] = vm.offset + xstd[vm.col]; break;
      case VarMap::mirrored: x[j] = vm.offset - xstd[vm.col]; break;
      case VarMap::split: x[j] = xstd[vm.col] - xstd[vm.col + 1]; break;
    }
  }
  Scalar obj(0);
  for (size_t j = 0; j < n_orig; ++j) obj += p.objective[j] * x[j];
  return {LpStatus::optimal, obj, std::move(x)};
}

bool lp_solution_feasible(const LpProblem& p, const std::vector<Scalar>& x) {
  if (x.size() != p.num_vars()) return false;
  for (size_t i = 0; i < p.num_rows(); ++i) {
    Scalar lhs(0);
    for (size_t j = 0; j < x.size(); ++j) lhs += p.rows[i][j] * x[j];
    switch (p.senses[i]) {
      case RowSense::le:
        if (lhs > p.rhs[i]) return false;
        break;
      case RowSense::eq:
        if (lhs != p.rhs[i]) return false;
        break;
      case RowSense::ge:
        if (lhs < p.rhs[i]) return false;
        break;
    }
  }
  if (!p.bounds.empty()) {
    for (size_t j = 0; j < x.size(); ++j) {
      if (p.bounds[j].lower && x[j] < *p.bounds[j].lower) return false;
      if (p.bounds[j].upper && x[j] > *p.bounds[j].upper) return false;
    }
  }
  return true;
}

}  // namespace d2lab
