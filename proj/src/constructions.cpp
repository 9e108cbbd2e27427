#include "d2lab/constructions.hpp"

#include <algorithm>

namespace d2lab {

namespace {

Scalar sup_distance(const SeqVector& a, const SeqVector& b) {
  Scalar m(0);
  for (size_t i = 0; i < a.coords.size(); ++i) {
    Scalar d = abs(a.coords[i] - b.coords[i]);
    if (d > m) m = d;
  }
  Scalar d = abs(a.limit - b.limit);
  if (d > m) m = d;
  return m;
}

// Number of weight compositions: C(q + k - 1, k - 1).
size_t grid_count(size_t k, size_t q, size_t cap) {
  size_t result = 1;
  for (size_t i = 1; i < k; ++i) {
    if (result > cap / (q + i)) return cap + 1;  // would overflow the cap anyway
    result = result * (q + i) / i;  // exact: C(q+i, i) from C(q+i-1, i-1)
  }
  return result;
}

std::vector<SeqVector> barycentric_grid(const VPolytope& P, int q, const Caps& caps) {
  const size_t k = P.vertices.size();
  if (grid_count(k, static_cast<size_t>(q), caps.max_grid_points) > caps.max_grid_points)
    throw SizeCapError("max_grid_points", "barycentric grid over cap");
  std::vector<SeqVector> grid;
  std::vector<int> comp(k, 0);
  // enumerate compositions of q into k parts
  comp[0] = q;
  for (;;) {
    SeqVector pt = SeqVector::zero(P.model.dim);
    for (size_t i = 0; i < k; ++i)
      if (comp[i] != 0) pt = add(pt, scale(frac(comp[i], q), P.vertices[i]));
    grid.push_back(std::move(pt));
    // next composition in colex order
    size_t i = 0;
    while (i + 1 < k && comp[i] == 0) ++i;
    if (i + 1 >= k) break;
    const int take = comp[i];
    comp[i] = 0;
    comp[0] = take - 1;
    comp[i + 1] += 1;
  }
  std::sort(grid.begin(), grid.end(), lex_less);
  grid.erase(std::unique(grid.begin(), grid.end(), equal), grid.end());
  return grid;
}

SeqVector trim(const SeqVector& x, int dim) {
  SeqVector r = SeqVector::zero(dim);
  for (int i = 0; i < dim; ++i) r.coords[static_cast<size_t>(i)] = x.coords[static_cast<size_t>(i)];
  for (int i = dim; i < x.dim(); ++i)
    if (x.coords[static_cast<size_t>(i)] != 0)
      throw std::invalid_argument("trim: nonzero coordinate dropped");
  r.limit = x.limit;
  return r;
}

}  // namespace

NetResult greedy_net(const VPolytope& P, int size, int mesh_denominator,
                     const std::vector<SeqVector>& seeds, const Caps& caps) {
  if (!P.canonical) throw std::invalid_argument("greedy_net: polytope not canonical");
  if (size < 1) throw std::invalid_argument("greedy_net: size must be >= 1");
  if (mesh_denominator < 1) throw std::invalid_argument("greedy_net: bad mesh denominator");
  const std::vector<SeqVector> grid = barycentric_grid(P, mesh_denominator, caps);

  NetResult out;
  out.mesh_bound = frac(static_cast<long>(P.vertices.size()), mesh_denominator);
  out.points = seeds.empty() ? std::vector<SeqVector>{P.vertices.front()} : seeds;

  // distance from each grid point to the selected set, updated incrementally
  std::vector<Scalar> dist(grid.size());
  for (size_t g = 0; g < grid.size(); ++g) {
    Scalar best = sup_distance(grid[g], out.points[0]);
    for (size_t s = 1; s < out.points.size(); ++s) {
      Scalar d = sup_distance(grid[g], out.points[s]);
      if (d < best) best = d;
    }
    dist[g] = std::move(best);
  }
  while (out.points.size() < static_cast<size_t>(size)) {
    size_t far = 0;
    for (size_t g = 1; g < grid.size(); ++g)
      if (dist[g] > dist[far]) far = g;
    out.points.push_back(grid[far]);
    for (size_t g = 0; g < grid.size(); ++g) {
      Scalar d = sup_distance(grid[g], grid[far]);
      if (d < dist[g]) dist[g] = std::move(d);
    }
  }
  out.grid_radius = 0;
  for (size_t g = 0; g < grid.size(); ++g)
    if (dist[g] > out.grid_radius) out.grid_radius = dist[g];
  return out;
}

StageLedger build_stages(int N, int l2, int mesh_denominator, const Caps& caps) {
  if (N < 2) throw std::invalid_argument("build_stages: N must be >= 2");
  if (l2 < 2) throw std::invalid_argument("build_stages: l2 must be >= 2");

  StageLedger ledger;
  ledger.mesh_denominator = mesh_denominator;

  // stage 1: the singleton {e_1}
  {
    VPolytope K1 = make_polytope(SpaceModel::c0(1), {unit_vector(1, 0)});
    K1.canonical = true;
    ledger.stages.push_back({std::move(K1), 1, 1, Scalar(0), frac(1, mesh_denominator), Scalar(0)});
    ledger.net = {unit_vector(1, 0)};
  }

  // stage 2: the segment from e_1 to e_1 + e_2 with an l2-point net
  {
    VPolytope K2 = make_polytope(
        SpaceModel::c0(2), {unit_vector(2, 0), add(unit_vector(2, 0), unit_vector(2, 1))});
    K2.canonical = true;
    std::vector<SeqVector> seeds = {embed(ledger.net[0], 2)};
    NetResult net = greedy_net(K2, l2, mesh_denominator, seeds, caps);
    Scalar eps = net.grid_radius;
    ledger.stages.push_back({std::move(K2), 2, l2, net.grid_radius, net.mesh_bound, eps});
    ledger.net = std::move(net.points);
  }

  for (int n = 2; n < N; ++n) {
    const StageInfo& prev = ledger.stages.back();
    const int m_next = prev.m + prev.l;
    const int l_next = prev.m + prev.l;
    std::vector<SeqVector> verts;
    verts.reserve(prev.hull.vertices.size() + static_cast<size_t>(prev.l));
    for (const auto& v : prev.hull.vertices) verts.push_back(embed(v, m_next));
    for (int i = 0; i < prev.l; ++i)
      verts.push_back(add(embed(ledger.net[static_cast<size_t>(i)], m_next),
                          unit_vector(m_next, prev.m + i)));
    VPolytope K_next = prune(make_polytope(SpaceModel::c0(m_next), std::move(verts)), caps);
    if (K_next.vertices.size() != prev.hull.vertices.size() + static_cast<size_t>(prev.l))
      throw ConstructionError("build_stages: a bumped net point failed to stay extreme at stage " +
                              std::to_string(n + 1));

    std::vector<SeqVector> seeds;
    seeds.reserve(ledger.net.size());
    for (const auto& g : ledger.net) seeds.push_back(embed(g, m_next));
    NetResult net = greedy_net(K_next, l_next, mesh_denominator, seeds, caps);
    Scalar eps = std::min(prev.eps, net.grid_radius);
    ledger.stages.push_back(
        {std::move(K_next), m_next, l_next, net.grid_radius, net.mesh_bound, eps});
    ledger.net = std::move(net.points);
  }

  verify_ledger(ledger);
  return ledger;
}

void verify_ledger(const StageLedger& ledger) {
  if (ledger.stages.size() < 2) throw ConstructionError("ledger: needs at least two stages");
  const int N = ledger.N();
  for (int n = 1; n <= N; ++n) {
    const StageInfo& st = ledger.stage(n);
    if (st.hull.model.dim != st.m)
      throw ConstructionError("ledger: stage dimension mismatch at stage " + std::to_string(n));
    // coordinates in [0,1] with sup norm exactly 1 on every vertex
    for (const auto& v : st.hull.vertices) {
      Scalar top(0);
      for (const auto& c : v.coords) {
        if (c < 0 || c > 1)
          throw ConstructionError("ledger: coordinate outside [0,1] at stage " + std::to_string(n));
        if (c > top) top = c;
      }
      if (top != 1)
        throw ConstructionError("ledger: vertex sup norm != 1 at stage " + std::to_string(n));
    }
    // recurrences
    if (n >= 3) {
      const StageInfo& prev = ledger.stage(n - 1);
      if (st.m != prev.m + prev.l || st.l != prev.m + prev.l)
        throw ConstructionError("ledger: size recurrence violated at stage " + std::to_string(n));
    }
    // monotone inclusion
    if (n < N) {
      const StageInfo& next = ledger.stage(n + 1);
      for (const auto& v : st.hull.vertices)
        if (!contains(next.hull, embed(v, next.m)))
          throw ConstructionError("ledger: stage " + std::to_string(n) +
                                  " not contained in its successor");
    }
    // the stage prefix of the net lives in the stage hull
    for (int i = 0; i < st.l; ++i)
      if (!contains(st.hull, trim(ledger.net[static_cast<size_t>(i)], st.m)))
        throw ConstructionError("ledger: net point outside its stage at stage " + std::to_string(n));
    // bumped net points are extreme in the next stage
    if (n >= 2 && n < N) {
      const StageInfo& next = ledger.stage(n + 1);
      for (int i = 0; i < st.l; ++i) {
        const SeqVector bump = add(trim(ledger.net[static_cast<size_t>(i)], next.m),
                                   unit_vector(next.m, st.m + i));
        bool found = false;
        for (const auto& v : next.hull.vertices)
          if (equal(v, bump)) found = true;
        if (!found)
          throw ConstructionError("ledger: bumped net point not a vertex at stage " +
                                  std::to_string(n + 1));
      }
    }
  }
  if (ledger.net.size() != static_cast<size_t>(ledger.top().l))
    throw ConstructionError("ledger: net length mismatch");
}

VPolytope build_renormed_ball(const StageLedger& ledger, const Scalar& eps, const Caps& caps) {
  if (eps <= 0 || eps >= 1) throw std::domain_error("build_renormed_ball: eps outside (0,1)");
  const StageInfo& top = ledger.top();
  const int dim = top.m;
  if (static_cast<size_t>(dim) + 1 > 20)
    throw SizeCapError("max_candidate_sums", "build_renormed_ball: box corner count over cap");

  std::vector<SeqVector> verts;
  const SeqVector half_ones = scale(frac(1, 2), ones_vector(dim));
  for (const auto& v : top.hull.vertices) {
    SeqVector a = scale(Scalar(2), sub(embed(v, dim), half_ones));
    verts.push_back(scale(Scalar(-1), a));
    verts.push_back(std::move(a));
  }
  const VPolytope box = box_ball_c(dim, Scalar(1), Scalar(1) - eps);
  for (const auto& v : box.vertices) verts.push_back(v);

  VPolytope ball = prune(make_polytope(SpaceModel::c(dim), std::move(verts)), caps);
  validate_gauge_ball(ball);
  return ball;
}

VPolytope build_product_ball_p1(int d_each, const Caps& caps) {
  if (d_each < 1) throw std::invalid_argument("build_product_ball_p1: d_each must be >= 1");
  const SpaceModel model = SpaceModel::product(d_each, 1);
  std::vector<SeqVector> verts;
  const size_t corners = size_t{1} << d_each;
  for (size_t mask = 0; mask < corners; ++mask) {
    SeqVector lo = SeqVector::zero(2 * d_each);
    SeqVector hi = SeqVector::zero(2 * d_each);
    for (int i = 0; i < d_each; ++i) {
      const Scalar s = (mask >> i) & 1 ? Scalar(1) : Scalar(-1);
      lo.coords[static_cast<size_t>(i)] = s;
      hi.coords[static_cast<size_t>(d_each + i)] = s;
    }
    verts.push_back(std::move(lo));
    verts.push_back(std::move(hi));
  }
  return prune(make_polytope(model, std::move(verts)), caps);
}

VPolytope build_l1_sum_ball(const VPolytope& B1, const VPolytope& B2, const Caps& caps) {
  if (!B1.canonical || !B2.canonical)
    throw std::invalid_argument("build_l1_sum_ball: factors must be canonical");
  if (B1.model.has_limit || B2.model.has_limit)
    throw std::invalid_argument("build_l1_sum_ball: limit-free factors required");
  for (const auto& v : B1.vertices)
    if (!contains(B1, scale(Scalar(-1), v)))
      throw std::invalid_argument("build_l1_sum_ball: factor 1 not symmetric");
  for (const auto& v : B2.vertices)
    if (!contains(B2, scale(Scalar(-1), v)))
      throw std::invalid_argument("build_l1_sum_ball: factor 2 not symmetric");
  const int d1 = B1.model.dim, d2 = B2.model.dim;
  const SpaceModel model = SpaceModel::l1_sum(d1, d2);
  std::vector<SeqVector> verts;
  for (const auto& v : B1.vertices) verts.push_back(embed(v, d1 + d2));
  for (const auto& v : B2.vertices) {
    SeqVector w = SeqVector::zero(d1 + d2);
    for (int i = 0; i < d2; ++i) w.coords[static_cast<size_t>(d1 + i)] = v.coords[static_cast<size_t>(i)];
    verts.push_back(std::move(w));
  }
  return prune(make_polytope(model, std::move(verts)), caps);
}

void RenormParams::validate(const SpaceModel& model) const {
  if (eps <= 0 || eps >= 1) throw std::domain_error("renorm params: eps outside (0,1)");
  if (rho <= 0 || delta <= 0 || delta_tilde <= 0 || gamma <= 0)
    throw std::domain_error("renorm params: parameters must be positive");
  if (funcs.empty() || funcs.size() != weights.size())
    throw std::domain_error("renorm params: functional/weight size mismatch");
  Scalar wsum(0);
  for (const auto& w : weights) {
    if (w < 0) throw std::domain_error("renorm params: negative weight");
    wsum += w;
  }
  if (wsum != 1) throw std::domain_error("renorm params: weights must sum to 1");
  if (2 * rho >= eps) throw std::domain_error("renorm params: violated 2*rho < eps");
  if ((7 - 2 * eps) * rho / (1 - eps) >= gamma)
    throw std::domain_error("renorm params: violated (7-2*eps)*rho/(1-eps) < gamma");
  for (const auto& f : funcs) {
    const Scalar norm = dual_norm(model, f);
    if (norm <= 0) throw std::domain_error("renorm params: zero functional");
    if (rho * norm / 2 + delta >= delta_tilde)
      throw std::domain_error("renorm params: violated rho*norm/2 + delta < delta_tilde");
    if (rho * norm >= 4 * delta)
      throw std::domain_error("renorm params: violated rho*norm < 4*delta");
  }
}

RenormParams solve_renorm_params(const SpaceModel& model, const Scalar& eps,
                                 const Scalar& gamma, std::vector<Functional> funcs,
                                 std::vector<Scalar> weights) {
  if (funcs.empty()) throw std::invalid_argument("solve_renorm_params: no functionals");
  Scalar max_norm(0);
  for (const auto& f : funcs) {
    const Scalar n = dual_norm(model, f);
    if (n > max_norm) max_norm = n;
  }
  if (max_norm <= 0) throw std::invalid_argument("solve_renorm_params: zero functionals");
  RenormParams p;
  p.eps = eps;
  p.gamma = gamma;
  const Scalar cap1 = eps / 2;
  const Scalar cap2 = gamma * (1 - eps) / (7 - 2 * eps);
  p.rho = std::min(cap1, cap2) / 2;
  p.delta = p.rho * max_norm / 2;
  p.delta_tilde = p.rho * max_norm / 2 + 2 * p.delta;
  p.funcs = std::move(funcs);
  p.weights = std::move(weights);
  p.validate(model);
  return p;
}

}  // namespace d2lab
