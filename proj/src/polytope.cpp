// Exact V-representation polytope engine. Every predicate reduces to a
// rational LP: membership is feasibility of convex weights, edges are
// separating-functional gap LPs, gauges are minimum-weight representations.

#include "d2lab/polytope.hpp"

#include <algorithm>
#include <map>

#include "d2lab/lp.hpp"

namespace d2lab {

namespace {

std::vector<Scalar> dense(const SpaceModel& m, const SeqVector& x) {
  std::vector<Scalar> d(x.coords.begin(), x.coords.end());
  if (m.has_limit) d.push_back(x.limit);
  return d;
}

Scalar sup_dist(const SeqVector& a, const SeqVector& b) {
  Scalar m(0);
  for (size_t i = 0; i < a.coords.size(); ++i) {
    Scalar d = abs(a.coords[i] - b.coords[i]);
    if (d > m) m = d;
  }
  Scalar d = abs(a.limit - b.limit);
  if (d > m) m = d;
  return m;
}

void check_point(const VPolytope& P, const SeqVector& x) {
  if (x.dim() != P.model.dim)
    throw std::invalid_argument("polytope: point dimension mismatch");
  if (!P.model.has_limit && x.limit != 0)
    throw std::invalid_argument("polytope: nonzero limit in a limit-free model");
}

// Feasibility LP for x in co(span of `verts`). Rows: affine weights sum to 1
// plus one equality per dense coordinate.
bool member_of(const SpaceModel& model, const std::vector<SeqVector>& verts,
               const SeqVector& x) {
  const size_t k = verts.size();
  if (k == 0) return false;
  const size_t rows = 1 + static_cast<size_t>(model.dense_dim());
  LpProblem lp;
  lp.dir = OptDir::minimize;
  lp.objective.assign(k, Scalar(0));
  lp.rows.assign(rows, std::vector<Scalar>(k, Scalar(0)));
  lp.senses.assign(rows, RowSense::eq);
  lp.rhs.assign(rows, Scalar(0));
  lp.bounds.assign(k, VarBound::nonneg());
  for (size_t j = 0; j < k; ++j) lp.rows[0][j] = 1;
  lp.rhs[0] = 1;
  const auto dx = dense(model, x);
  for (size_t j = 0; j < k; ++j) {
    const auto dv = dense(model, verts[j]);
    for (size_t r = 0; r < dv.size(); ++r) lp.rows[1 + r][j] = dv[r];
  }
  for (size_t r = 0; r < dx.size(); ++r) lp.rhs[1 + r] = dx[r];
  return solve_lp(lp).status == LpStatus::optimal;
}

}  // namespace

VPolytope make_polytope(SpaceModel model, std::vector<SeqVector> vertices) {
  if (vertices.empty()) throw std::invalid_argument("make_polytope: empty vertex list");
  VPolytope P{std::move(model), std::move(vertices), false};
  for (const auto& v : P.vertices) check_point(P, v);
  return P;
}

VPolytope box_ball_c(int dim, const Scalar& coord_scale, const Scalar& limit_scale) {
  if (dim < 0 || dim > 24) throw std::invalid_argument("box_ball_c: bad dimension");
  std::vector<SeqVector> verts;
  const size_t corners = size_t{1} << (dim + 1);
  verts.reserve(corners);
  for (size_t mask = 0; mask < corners; ++mask) {
    SeqVector v = SeqVector::zero(dim);
    for (int i = 0; i < dim; ++i)
      v.coords[static_cast<size_t>(i)] = (mask >> i) & 1 ? coord_scale : -coord_scale;
    v.limit = (mask >> dim) & 1 ? limit_scale : -limit_scale;
    verts.push_back(std::move(v));
  }
  VPolytope P = make_polytope(SpaceModel::c(dim), std::move(verts));
  P.canonical = limit_scale != 0;
  if (!P.canonical) P = prune(P);
  return P;
}

VPolytope box_ball_c0(int dim, const Scalar& scale) {
  if (dim < 1 || dim > 24) throw std::invalid_argument("box_ball_c0: bad dimension");
  std::vector<SeqVector> verts;
  const size_t corners = size_t{1} << dim;
  verts.reserve(corners);
  for (size_t mask = 0; mask < corners; ++mask) {
    SeqVector v = SeqVector::zero(dim);
    for (int i = 0; i < dim; ++i)
      v.coords[static_cast<size_t>(i)] = (mask >> i) & 1 ? scale : -scale;
    verts.push_back(std::move(v));
  }
  VPolytope P = make_polytope(SpaceModel::c0(dim), std::move(verts));
  P.canonical = true;
  return P;
}

bool contains(const VPolytope& P, const SeqVector& x) {
  check_point(P, x);
  return member_of(P.model, P.vertices, x);
}

VPolytope prune(const VPolytope& P, const Caps& caps) {
  std::vector<SeqVector> pts = P.vertices;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(), equal), pts.end());

  VPolytope out{P.model, {}, true};
  if (pts.size() <= 2) {
    out.vertices = std::move(pts);
    return out;
  }

  // Pass 1: sweep candidates from the outside in, keeping a growing superset
  // of the extreme points. Farthest-from-centroid ordering keeps the working
  // set small.
  SeqVector centroid = SeqVector::zero(P.model.dim);
  for (const auto& p : pts) centroid = add(centroid, p);
  centroid = scale(Scalar(1) / Scalar(static_cast<long>(pts.size())), centroid);
  std::vector<size_t> order(pts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<Scalar> dist(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) dist[i] = sup_dist(pts[i], centroid);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return dist[a] > dist[b]; });

  std::vector<SeqVector> kept;
  for (size_t idx : order) {
    const SeqVector& x = pts[idx];
    if (kept.size() < 2 || !member_of(P.model, kept, x)) kept.push_back(x);
  }

  // Pass 2: exact cleanup, removing every point inside the hull of the rest.
  std::sort(kept.begin(), kept.end(), lex_less);
  for (size_t i = 0; i < kept.size();) {
    std::vector<SeqVector> rest;
    rest.reserve(kept.size() - 1);
    for (size_t j = 0; j < kept.size(); ++j)
      if (j != i) rest.push_back(kept[j]);
    if (member_of(P.model, rest, kept[i]))
      kept.erase(kept.begin() + static_cast<long>(i));
    else
      ++i;
  }
  if (kept.size() > caps.max_vertices)
    throw SizeCapError("max_vertices", "prune: vertex count over cap");
  out.vertices = std::move(kept);
  return out;
}

EdgeWitness edge_witness(const VPolytope& P, size_t vi, size_t wi) {
  if (!P.canonical) throw std::invalid_argument("edge_witness: polytope not canonical");
  if (vi == wi || vi >= P.vertices.size() || wi >= P.vertices.size())
    throw std::invalid_argument("edge_witness: bad vertex indices");
  const size_t n = P.vertices.size();
  const size_t d = static_cast<size_t>(P.model.dense_dim());
  if (n == 2) {
    // A segment is its own edge; the zero functional attains its max there.
    return {true, Functional::zero(P.model.dim), Scalar(0)};
  }
  // Variables: functional coefficients c (boxed to [-1,1]) and the gap.
  LpProblem lp;
  lp.dir = OptDir::maximize;
  lp.objective.assign(d + 1, Scalar(0));
  lp.objective[d] = 1;
  lp.bounds.assign(d + 1, VarBound::box(Scalar(-1), Scalar(1)));
  lp.bounds[d] = VarBound{Scalar(0), Scalar(4)};
  const auto dv = dense(P.model, P.vertices[vi]);
  const auto dw = dense(P.model, P.vertices[wi]);
  {
    std::vector<Scalar> row(d + 1, Scalar(0));
    for (size_t j = 0; j < d; ++j) row[j] = dv[j] - dw[j];
    lp.rows.push_back(std::move(row));
    lp.senses.push_back(RowSense::eq);
    lp.rhs.push_back(Scalar(0));
  }
  for (size_t u = 0; u < n; ++u) {
    if (u == vi || u == wi) continue;
    const auto du = dense(P.model, P.vertices[u]);
    std::vector<Scalar> row(d + 1, Scalar(0));
    for (size_t j = 0; j < d; ++j) row[j] = dv[j] - du[j];
    row[d] = -1;
    lp.rows.push_back(std::move(row));
    lp.senses.push_back(RowSense::ge);
    lp.rhs.push_back(Scalar(0));
  }
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::optimal)
    throw std::logic_error("edge_witness: gap LP must be solvable");
  EdgeWitness out;
  out.gap = res.objective_value;
  out.edge = out.gap > 0;
  Functional f = Functional::zero(P.model.dim);
  for (int j = 0; j < P.model.dim; ++j) f.coeffs[static_cast<size_t>(j)] = res.solution[static_cast<size_t>(j)];
  if (P.model.has_limit) f.limit_coeff = res.solution[d - 1];
  out.f = std::move(f);
  return out;
}

bool is_edge(const VPolytope& P, size_t vi, size_t wi) {
  return edge_witness(P, vi, wi).edge;
}

std::optional<VPolytope> clip(const VPolytope& P, const HalfSpace& H, const Caps& caps) {
  if (!P.canonical) throw std::invalid_argument("clip: polytope not canonical");
  if (H.f.dim() != P.model.dim) throw std::invalid_argument("clip: functional dimension mismatch");
  // Normalize to f(x) >= b.
  Functional f = H.lower ? H.f : scale(Scalar(-1), H.f);
  const Scalar b = H.lower ? H.bound : -H.bound;

  const size_t n = P.vertices.size();
  std::vector<Scalar> val(n);
  for (size_t i = 0; i < n; ++i) val[i] = pair(f, P.vertices[i]);
  std::vector<size_t> sat, viol;
  for (size_t i = 0; i < n; ++i) (val[i] >= b ? sat : viol).push_back(i);
  if (sat.empty()) return std::nullopt;
  if (viol.empty()) return P;

  std::vector<SeqVector> result;
  for (size_t i : sat) result.push_back(P.vertices[i]);
  auto cut_point = [&](size_t i, size_t j) {
    // f(v_i) >= b > f(v_j); the segment meets the hyperplane at t in [0,1).
    const Scalar t = (val[i] - b) / (val[i] - val[j]);
    return add(P.vertices[i], scale(t, sub(P.vertices[j], P.vertices[i])));
  };

  const size_t pair_count = sat.size() * viol.size();
  constexpr size_t kEdgeTestLimit = 2000;
  bool exact_edges = pair_count <= kEdgeTestLimit;
  for (size_t i : sat) {
    for (size_t j : viol) {
      if (exact_edges && !is_edge(P, i, j)) continue;
      result.push_back(cut_point(i, j));
    }
  }
  VPolytope out{P.model, std::move(result), false};
  if (exact_edges) {
    // Surviving vertices and edge cuts are exactly the vertices of the
    // intersection; only duplicates (cuts through a vertex) need removing.
    std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end(), equal),
                       out.vertices.end());
    out.canonical = true;
  } else {
    out = prune(out, caps);
  }
  if (out.vertices.size() > caps.max_vertices)
    throw SizeCapError("max_vertices", "clip: vertex count over cap");
  return out;
}

VPolytope minkowski_combo(const std::vector<std::pair<Scalar, VPolytope>>& parts,
                          bool convex_mode, const Caps& caps) {
  if (parts.empty()) throw std::invalid_argument("minkowski_combo: no parts");
  const SpaceModel& model = parts.front().second.model;
  Scalar wsum(0);
  size_t product = 1;
  for (const auto& [w, poly] : parts) {
    if (w < 0) throw std::invalid_argument("minkowski_combo: negative weight");
    if (!poly.model.same_shape(model))
      throw std::invalid_argument("minkowski_combo: model mismatch");
    if (poly.vertices.empty()) throw std::invalid_argument("minkowski_combo: empty part");
    wsum += w;
    if (product > caps.max_candidate_sums / std::max<size_t>(poly.vertices.size(), 1))
      throw SizeCapError("max_candidate_sums", "minkowski_combo: candidate product over cap");
    product *= poly.vertices.size();
  }
  if (convex_mode && wsum != 1)
    throw std::invalid_argument("minkowski_combo: weights must sum to 1");

  // Weighted sums fold pairwise, pruning between folds; the hull of the full
  // vertex-choice product is unchanged by the regrouping.
  std::vector<SeqVector> acc{SeqVector::zero(model.dim)};
  for (const auto& [w, poly] : parts) {
    if (acc.size() * poly.vertices.size() > caps.max_candidate_sums)
      throw SizeCapError("max_candidate_sums", "minkowski_combo: fold over cap");
    std::vector<SeqVector> next;
    next.reserve(acc.size() * poly.vertices.size());
    for (const auto& a : acc)
      for (const auto& v : poly.vertices) next.push_back(add(a, scale(w, v)));
    if (parts.size() > 1 && next.size() > 64) {
      VPolytope folded = prune(VPolytope{model, std::move(next), false}, caps);
      acc = std::move(folded.vertices);
    } else {
      acc = std::move(next);
    }
  }
  return prune(VPolytope{model, std::move(acc), false}, caps);
}

Scalar gauge(const VPolytope& P, const SeqVector& x) {
  check_point(P, x);
  const size_t k = P.vertices.size();
  const size_t rows = static_cast<size_t>(P.model.dense_dim());
  LpProblem lp;
  lp.dir = OptDir::minimize;
  lp.objective.assign(k, Scalar(1));
  lp.rows.assign(rows, std::vector<Scalar>(k, Scalar(0)));
  lp.senses.assign(rows, RowSense::eq);
  lp.rhs = dense(P.model, x);
  lp.bounds.assign(k, VarBound::nonneg());
  for (size_t j = 0; j < k; ++j) {
    const auto dv = dense(P.model, P.vertices[j]);
    for (size_t r = 0; r < rows; ++r) lp.rows[r][j] = dv[r];
  }
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::optimal)
    throw std::domain_error("gauge: point outside every dilation of the body");
  return res.objective_value;
}

void validate_gauge_ball(const VPolytope& P) {
  if (!P.canonical) throw std::domain_error("gauge ball: not canonical");
  for (const auto& v : P.vertices)
    if (!contains(P, scale(Scalar(-1), v)))
      throw std::domain_error("gauge ball: not symmetric");
  // 0 is interior iff some dilation of every signed unit direction fits.
  const int dd = P.model.dense_dim();
  for (int axis = 0; axis < dd; ++axis) {
    for (int sign = -1; sign <= 1; sign += 2) {
      SeqVector dir = SeqVector::zero(P.model.dim);
      if (axis < P.model.dim)
        dir.coords[static_cast<size_t>(axis)] = sign;
      else
        dir.limit = sign;
      // max t <= 1 with t*dir in P
      const size_t k = P.vertices.size();
      LpProblem lp;
      lp.dir = OptDir::maximize;
      lp.objective.assign(k + 1, Scalar(0));
      lp.objective[k] = 1;
      const size_t rows = static_cast<size_t>(dd) + 1;
      lp.rows.assign(rows, std::vector<Scalar>(k + 1, Scalar(0)));
      lp.senses.assign(rows, RowSense::eq);
      lp.rhs.assign(rows, Scalar(0));
      lp.bounds.assign(k + 1, VarBound::nonneg());
      lp.bounds[k] = VarBound::box(Scalar(0), Scalar(1));
      const auto ddir = dense(P.model, dir);
      for (size_t j = 0; j < k; ++j) {
        const auto dv = dense(P.model, P.vertices[j]);
        for (size_t r = 0; r + 1 < rows; ++r) lp.rows[r][j] = dv[r];
        lp.rows[rows - 1][j] = 1;
      }
      for (size_t r = 0; r + 1 < rows; ++r) lp.rows[r][k] = -ddir[r];
      lp.rhs[rows - 1] = 1;
      const LpResult res = solve_lp(lp);
      if (res.status != LpStatus::optimal || res.objective_value <= 0)
        throw std::domain_error("gauge ball: 0 not interior");
    }
  }
}

Scalar support(const VPolytope& P, const Functional& f) {
  return pair(f, P.vertices[support_argmax(P, f)]);
}

size_t support_argmax(const VPolytope& P, const Functional& f) {
  if (P.vertices.empty()) throw std::invalid_argument("support: empty polytope");
  size_t best = 0;
  Scalar best_val = pair(f, P.vertices[0]);
  for (size_t i = 1; i < P.vertices.size(); ++i) {
    Scalar v = pair(f, P.vertices[i]);
    if (v > best_val) {
      best_val = std::move(v);
      best = i;
    }
  }
  return best;
}

namespace {

DiameterResult diameter_sup(const VPolytope& P, const SpaceModel& norm_model) {
  // Sup-norm diameter is the largest coordinate width, so max and min per
  // coordinate suffice; the attaining pair comes from the widest coordinate.
  const int dd = norm_model.dense_dim();
  Scalar best_width(-1);
  size_t bi = 0, bj = 0;
  for (int axis = 0; axis < dd; ++axis) {
    size_t imax = 0, imin = 0;
    auto coord = [&](size_t v) -> const Scalar& {
      return axis < P.model.dim ? P.vertices[v].coords[static_cast<size_t>(axis)]
                                : P.vertices[v].limit;
    };
    for (size_t v = 1; v < P.vertices.size(); ++v) {
      if (coord(v) > coord(imax)) imax = v;
      if (coord(v) < coord(imin)) imin = v;
    }
    Scalar width = coord(imax) - coord(imin);
    if (width > best_width) {
      best_width = std::move(width);
      bi = std::min(imax, imin);
      bj = std::max(imax, imin);
    }
  }
  return {NormValue::exact(best_width), bi, bj};
}

DiameterResult diameter_gauge(const VPolytope& P, const SpaceModel& norm_model) {
  const VPolytope& ball = *norm_model.ball;
  // An inscribed sup-ball radius r gives gauge(z) <= sup(z)/r, letting the
  // scan skip pairs whose upper bound cannot beat the current best.
  std::optional<Scalar> inner;
  const int dd = ball.model.dense_dim();
  if (dd <= 11) {
    Scalar worst(0);
    const size_t corners = size_t{1} << dd;
    for (size_t mask = 0; mask < corners; ++mask) {
      SeqVector c = SeqVector::zero(ball.model.dim);
      for (int i = 0; i < ball.model.dim; ++i)
        c.coords[static_cast<size_t>(i)] = (mask >> i) & 1 ? 1 : -1;
      if (ball.model.has_limit) c.limit = (mask >> ball.model.dim) & 1 ? 1 : -1;
      Scalar g = gauge(ball, c);
      if (g > worst) worst = g;
    }
    if (worst > 0) inner = Scalar(1) / worst;
  }

  const size_t n = P.vertices.size();
  Scalar best(-1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const SeqVector z = sub(P.vertices[i], P.vertices[j]);
      const Scalar s = sup_dist(z, SeqVector::zero(P.model.dim));
      if (best >= 0 && inner && s / *inner <= best) continue;  // upper bound can't win
      Scalar g = gauge(ball, z);
      if (g > best) best = std::move(g);
    }
  }
  // Deterministic witness: first pair attaining the exact maximum.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const SeqVector z = sub(P.vertices[i], P.vertices[j]);
      const Scalar s = sup_dist(z, SeqVector::zero(P.model.dim));
      if (inner && s / *inner < best) continue;
      if (gauge(ball, z) == best) return {NormValue::exact(best), i, j};
    }
  }
  throw std::logic_error("diameter_gauge: witness pass failed");
}

}  // namespace

DiameterResult diameter(const VPolytope& P, const SpaceModel& norm_model) {
  if (!P.canonical) throw std::invalid_argument("diameter: polytope not canonical");
  if (P.vertices.empty()) throw std::invalid_argument("diameter: empty polytope");
  if (norm_model.dim != P.model.dim || (norm_model.has_limit != P.model.has_limit))
    throw std::invalid_argument("diameter: norm model shape mismatch");
  if (P.vertices.size() == 1)
    return {NormValue::exact(Scalar(0)), 0, 0};
  switch (norm_model.kind) {
    case NormKind::sup:
      return diameter_sup(P, norm_model);
    case NormKind::gauge:
      return diameter_gauge(P, norm_model);
    default: {
      // Generic vertex-pair scan with exact handle comparisons.
      const size_t n = P.vertices.size();
      DiameterResult best{NormValue::exact(Scalar(-1)), 0, 0};
      bool first = true;
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
          NormValue v = vector_norm(norm_model, sub(P.vertices[i], P.vertices[j]));
          if (first || compare(v, best.value) == Ordering::greater) {
            best = {std::move(v), i, j};
            first = false;
          }
        }
      }
      return best;
    }
  }
}

bool hull_equal(const VPolytope& P, const VPolytope& Q) {
  if (!P.model.same_shape(Q.model)) return false;
  for (const auto& v : P.vertices)
    if (!contains(Q, v)) return false;
  for (const auto& v : Q.vertices)
    if (!contains(P, v)) return false;
  return true;
}

}  // namespace d2lab
