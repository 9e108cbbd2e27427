// Verification procedures. Each experiment emits a Certificate whose claims
// are primitive enough to re-evaluate from the payload alone: memberships,
// pairings, norms, gauges, convex decompositions, and p-th-power
// comparisons. recheck() is the single generic re-evaluator.

#include "d2lab/experiments.hpp"

#include <algorithm>
#include <map>

#include "d2lab/lp.hpp"

namespace d2lab {

namespace {

// ---- claim construction helpers ----

Json member_claim(const std::string& body, const SeqVector& x) {
  return Json{{"type", "member"}, {"body", body}, {"point", vector_json(x)}};
}

Json member_any_claim(const std::vector<std::string>& bodies, const SeqVector& x) {
  return Json{{"type", "member_any"}, {"bodies", bodies}, {"point", vector_json(x)}};
}

Json pair_cmp_claim(const Functional& f, const SeqVector& x, const std::string& op,
                    const Scalar& rhs) {
  return Json{{"type", "pair_cmp"},
              {"functional", functional_json(f)},
              {"point", vector_json(x)},
              {"op", op},
              {"rhs", scalar_json(rhs)}};
}

Json pair_abs_lt_claim(const Functional& f, const SeqVector& x, const SeqVector& center,
                       const Scalar& rhs) {
  return Json{{"type", "pair_abs_lt"},
              {"functional", functional_json(f)},
              {"point", vector_json(x)},
              {"center", vector_json(center)},
              {"rhs", scalar_json(rhs)}};
}

Json sup_norm_eq_claim(const SeqVector& x, bool has_limit, const Scalar& value) {
  return Json{{"type", "sup_norm_eq"},
              {"point", vector_json(x)},
              {"has_limit", has_limit},
              {"value", scalar_json(value)}};
}

Json gauge_cmp_claim(const std::string& ball, const SeqVector& x, const std::string& op,
                     const Scalar& rhs) {
  return Json{{"type", "gauge_cmp"},
              {"body", ball},
              {"point", vector_json(x)},
              {"op", op},
              {"rhs", scalar_json(rhs)}};
}

Json diameter_eq_claim(const std::string& body, const std::string& norm_kind,
                       const std::string& gauge_body, const Scalar& value) {
  return Json{{"type", "diameter_eq"},
              {"body", body},
              {"norm_kind", norm_kind},
              {"gauge_body", gauge_body},
              {"value", scalar_json(value)}};
}

Json scalar_cmp_claim(const Scalar& lhs, const std::string& op, const Scalar& rhs) {
  return Json{{"type", "scalar_cmp"},
              {"lhs", scalar_json(lhs)},
              {"op", op},
              {"rhs", scalar_json(rhs)}};
}

Json product_norm_le_claim(int split, int p, const SeqVector& x, const Scalar& rhs) {
  return Json{{"type", "product_norm_le"},
              {"split", split},
              {"p", p},
              {"point", vector_json(x)},
              {"rhs", scalar_json(rhs)}};
}

Json product_norm_pth_ge_claim(int split, int p, const SeqVector& x,
                               const Scalar& rhs_radicand) {
  return Json{{"type", "product_norm_pth_ge"},
              {"split", split},
              {"p", p},
              {"point", vector_json(x)},
              {"rhs_radicand", scalar_json(rhs_radicand)}};
}

Json slice_member_ub_claim(const Functional& f, const SeqVector& x, const Scalar& alpha,
                           int p, int split, const Scalar& omega, const Scalar& theta) {
  return Json{{"type", "slice_member_ub"},
              {"functional", functional_json(f)},
              {"point", vector_json(x)},
              {"alpha", scalar_json(alpha)},
              {"p", p},
              {"split", split},
              {"omega", scalar_json(omega)},
              {"theta", scalar_json(theta)}};
}

Json convex_sum_claim(const SeqVector& total, const std::vector<Scalar>& weights,
                      const std::vector<SeqVector>& points) {
  Json parts = Json::array();
  for (size_t i = 0; i < weights.size(); ++i)
    parts.push_back(Json{{"weight", scalar_json(weights[i])}, {"point", vector_json(points[i])}});
  return Json{{"type", "convex_sum_eq"}, {"point", vector_json(total)}, {"parts", parts}};
}

Json decomposition_claim(const SeqVector& x, const std::vector<std::string>& group_bodies,
                         const std::vector<std::vector<Scalar>>& weights,
                         const Scalar& first_group_gt) {
  Json w = Json::array();
  for (const auto& group : weights) {
    Json g = Json::array();
    for (const auto& s : group) g.push_back(scalar_json(s));
    w.push_back(std::move(g));
  }
  return Json{{"type", "decomposition"},
              {"point", vector_json(x)},
              {"group_bodies", group_bodies},
              {"weights", std::move(w)},
              {"first_group_gt", scalar_json(first_group_gt)}};
}

bool scalar_cmp(const Scalar& lhs, const std::string& op, const Scalar& rhs) {
  if (op == "gt") return lhs > rhs;
  if (op == "ge") return lhs >= rhs;
  if (op == "lt") return lhs < rhs;
  if (op == "le") return lhs <= rhs;
  if (op == "eq") return lhs == rhs;
  throw std::invalid_argument("claim: unknown comparison op '" + op + "'");
}

Scalar factor_sup(const SeqVector& x, int lo, int hi) {
  Scalar m(0);
  for (int i = lo; i < hi; ++i) {
    Scalar a = abs(x.coords[static_cast<size_t>(i)]);
    if (a > m) m = a;
  }
  return m;
}

// Certified two-factor upper bound: for any omega, theta > 0 and all
// s, t >= 0 with s^p + t^p <= 1,
//   a*s + b*t <= max(a/omega^(p-1), b/theta^(p-1)) * (1 + (p-1)(omega^p + theta^p)) / p
// by the arithmetic-geometric mean inequality applied factorwise.
Scalar two_factor_ub(const Scalar& a, const Scalar& b, int p, const Scalar& omega,
                     const Scalar& theta) {
  if (omega <= 0 || theta <= 0) throw std::domain_error("two_factor_ub: parameters must be positive");
  const Scalar mu = std::max(a / pow_int(omega, p - 1), b / pow_int(theta, p - 1));
  return mu * (1 + (p - 1) * (pow_int(omega, p) + pow_int(theta, p))) / p;
}

// Largest multiple k/den of 1/den with (k/den)^p <= x, for x >= 0.
Scalar floor_root(const Scalar& x, int p, long den) {
  if (x < 0) throw std::domain_error("floor_root: negative radicand");
  long lo = 0, hi = den;
  while (pow_int(frac(hi, den), p) <= x) hi *= 2;
  while (lo < hi) {
    const long mid = lo + (hi - lo + 1) / 2;
    if (pow_int(frac(mid, den), p) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return frac(lo, den);
}

struct TwoFactorPoint {
  Scalar s, t;            // feasible: s^p + t^p <= 1
  Scalar omega, theta;    // positive parameters of the certified upper bound
  Scalar lb, ub;          // a*s + b*t and the certified bound on the supremum
};

// Near-maximizer of a*s + b*t over the positive quadrant of the p-ball,
// refined until the point is quality-certified: within `alpha` of the
// certified supremum bound and with s^p + t^p > 1 - eps_prime.
TwoFactorPoint two_factor_near_max(const Scalar& a, const Scalar& b, int p,
                                   const Scalar& alpha, const Scalar& eps_prime) {
  TwoFactorPoint out;
  if (p == 1) {
    const bool first = a >= b;
    out.s = first ? 1 : 0;
    out.t = first ? 0 : 1;
    out.omega = out.theta = 1;
    out.lb = out.ub = std::max(a, b);
    return out;
  }
  long den = 64;
  long best_j = 0;
  long lo = 0, hi = den;
  for (int level = 0; level < 12; ++level) {
    Scalar best_val(-1);
    for (long j = lo; j <= hi; ++j) {
      const Scalar s = frac(j, den);
      const Scalar sp = pow_int(s, p);
      if (sp > 1) break;
      const Scalar t = floor_root(1 - sp, p, den);
      const Scalar val = a * s + b * t;
      if (val > best_val) {
        best_val = val;
        best_j = j;
      }
    }
    const Scalar s = frac(best_j, den);
    const Scalar t = floor_root(1 - pow_int(s, p), p, den);
    out.s = s;
    out.t = t;
    out.omega = std::max(s, frac(1, den));
    out.theta = std::max(t, frac(1, den));
    out.lb = a * s + b * t;
    out.ub = two_factor_ub(a, b, p, out.omega, out.theta);
    const bool near_sphere = pow_int(s, p) + pow_int(t, p) > 1 - eps_prime;
    if (near_sphere && out.lb + alpha > out.ub) return out;
    // refine around the current argmax
    lo = std::max(0L, best_j * 16 - 48);
    hi = best_j * 16 + 48;
    den *= 16;
    best_j *= 16;
  }
  throw std::runtime_error(
      "two_factor_near_max: refinement limit reached; alpha or eps_prime too small");
}

SeqVector limit_free(std::vector<Scalar> coords) { return {std::move(coords), Scalar(0)}; }

// Recenters a stage-hull point into the limit model: 2(x - 1/2), limit -1.
SeqVector recenter(const SeqVector& x, int dim) {
  SeqVector r = scale(Scalar(2), sub(embed(x, dim), scale(frac(1, 2), ones_vector(dim))));
  return r;
}

}  // namespace

std::string cert_kind_name(CertKind kind) {
  switch (kind) {
    case CertKind::product_combo_lower_bound: return "product_combo_lower_bound";
    case CertKind::stage_open_diameter: return "stage_open_diameter";
    case CertKind::stage_small_combo: return "stage_small_combo";
    case CertKind::ball_combo_upper: return "ball_combo_upper";
    case CertKind::ball_open_diameter: return "ball_open_diameter";
    case CertKind::hull_split_equality: return "hull_split_equality";
    case CertKind::l1sum_inclusion: return "l1sum_inclusion";
  }
  throw std::logic_error("cert_kind_name: bad kind");
}

CertKind cert_kind_from_name(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(CertKind::l1sum_inclusion); ++k)
    if (cert_kind_name(static_cast<CertKind>(k)) == name) return static_cast<CertKind>(k);
  throw std::invalid_argument("unknown certificate kind '" + name + "'");
}

Json Certificate::to_json() const {
  return Json{{"kind", cert_kind_name(kind)},
              {"pass", pass},
              {"params", params},
              {"bodies", bodies},
              {"claims", claims},
              {"metrics", metrics}};
}

Certificate Certificate::from_json(const Json& j) {
  Certificate c;
  c.kind = cert_kind_from_name(j.at("kind").get<std::string>());
  c.pass = j.at("pass").get<bool>();
  c.params = j.at("params");
  c.bodies = j.at("bodies");
  c.claims = j.at("claims");
  c.metrics = j.at("metrics");
  return c;
}

bool recheck(const Certificate& cert) {
  std::map<std::string, VPolytope> bodies;
  for (const auto& [name, body] : cert.bodies.items())
    bodies.emplace(name, polytope_from_json(body));
  auto body = [&](const std::string& name) -> const VPolytope& {
    const auto it = bodies.find(name);
    if (it == bodies.end()) throw std::invalid_argument("recheck: unknown body '" + name + "'");
    return it->second;
  };

  for (const auto& claim : cert.claims) {
    const std::string type = claim.at("type").get<std::string>();
    bool ok = false;
    if (type == "member") {
      ok = contains(body(claim.at("body")), vector_from_json(claim.at("point")));
    } else if (type == "member_any") {
      const SeqVector x = vector_from_json(claim.at("point"));
      for (const auto& name : claim.at("bodies"))
        if (contains(body(name.get<std::string>()), x)) ok = true;
    } else if (type == "pair_cmp") {
      ok = scalar_cmp(pair(functional_from_json(claim.at("functional")),
                           vector_from_json(claim.at("point"))),
                      claim.at("op").get<std::string>(), scalar_from_json(claim.at("rhs")));
    } else if (type == "pair_abs_lt") {
      const Scalar v = pair(functional_from_json(claim.at("functional")),
                            sub(vector_from_json(claim.at("point")),
                                vector_from_json(claim.at("center"))));
      ok = abs(v) < scalar_from_json(claim.at("rhs"));
    } else if (type == "sup_norm_eq") {
      const SeqVector x = vector_from_json(claim.at("point"));
      const SpaceModel m =
          claim.at("has_limit").get<bool>() ? SpaceModel::c(x.dim()) : SpaceModel::c0(x.dim());
      ok = vector_norm(m, x).scalar() == scalar_from_json(claim.at("value"));
    } else if (type == "gauge_cmp") {
      ok = scalar_cmp(gauge(body(claim.at("body")), vector_from_json(claim.at("point"))),
                      claim.at("op").get<std::string>(), scalar_from_json(claim.at("rhs")));
    } else if (type == "diameter_eq") {
      const VPolytope& P = body(claim.at("body"));
      SpaceModel norm_model;
      if (claim.at("norm_kind") == "sup") {
        norm_model = P.model.has_limit ? SpaceModel::c(P.model.dim) : SpaceModel::c0(P.model.dim);
      } else {
        norm_model = SpaceModel::gauge_ball(
            std::make_shared<VPolytope>(body(claim.at("gauge_body"))));
      }
      ok = diameter(P, norm_model).value.scalar() == scalar_from_json(claim.at("value"));
    } else if (type == "scalar_cmp") {
      ok = scalar_cmp(scalar_from_json(claim.at("lhs")), claim.at("op").get<std::string>(),
                      scalar_from_json(claim.at("rhs")));
    } else if (type == "product_norm_le") {
      const SeqVector x = vector_from_json(claim.at("point"));
      const int split = claim.at("split").get<int>();
      const int p = claim.at("p").get<int>();
      const Scalar a = factor_sup(x, 0, split);
      const Scalar b = factor_sup(x, split, x.dim());
      ok = pow_int(a, p) + pow_int(b, p) <= pow_int(scalar_from_json(claim.at("rhs")), p);
    } else if (type == "product_norm_pth_ge") {
      const SeqVector x = vector_from_json(claim.at("point"));
      const int split = claim.at("split").get<int>();
      const int p = claim.at("p").get<int>();
      const Scalar a = factor_sup(x, 0, split);
      const Scalar b = factor_sup(x, split, x.dim());
      ok = pow_int(a, p) + pow_int(b, p) >= scalar_from_json(claim.at("rhs_radicand"));
    } else if (type == "slice_member_ub") {
      const Functional f = functional_from_json(claim.at("functional"));
      const SeqVector x = vector_from_json(claim.at("point"));
      const int split = claim.at("split").get<int>();
      const int p = claim.at("p").get<int>();
      Scalar a(0), b(0);
      for (int i = 0; i < f.dim(); ++i)
        (i < split ? a : b) += abs(f.coeffs[static_cast<size_t>(i)]);
      const Scalar ub = two_factor_ub(a, b, p, scalar_from_json(claim.at("omega")),
                                      scalar_from_json(claim.at("theta")));
      ok = pair(f, x) + scalar_from_json(claim.at("alpha")) > ub;
    } else if (type == "convex_sum_eq") {
      const SeqVector total = vector_from_json(claim.at("point"));
      SeqVector acc = SeqVector::zero(total.dim());
      Scalar wsum(0);
      ok = true;
      for (const auto& part : claim.at("parts")) {
        const Scalar w = scalar_from_json(part.at("weight"));
        if (w < 0) ok = false;
        wsum += w;
        acc = add(acc, scale(w, vector_from_json(part.at("point"))));
      }
      ok = ok && wsum == 1 && equal(acc, total);
    } else if (type == "decomposition") {
      const SeqVector x = vector_from_json(claim.at("point"));
      SeqVector acc = SeqVector::zero(x.dim());
      Scalar total(0);
      Scalar first_group(0);
      ok = true;
      size_t gi = 0;
      for (const auto& name : claim.at("group_bodies")) {
        const VPolytope& G = body(name.get<std::string>());
        const auto& w = claim.at("weights").at(gi);
        if (w.size() != G.vertices.size()) ok = false;
        Scalar gsum(0);
        for (size_t k = 0; ok && k < G.vertices.size(); ++k) {
          const Scalar wk = scalar_from_json(w.at(k));
          if (wk < 0) ok = false;
          gsum += wk;
          acc = add(acc, scale(wk, G.vertices[k]));
        }
        if (gi == 0) first_group = gsum;
        total += gsum;
        ++gi;
      }
      ok = ok && total == 1 && equal(acc, x) &&
           first_group > scalar_from_json(claim.at("first_group_gt"));
    } else {
      throw std::invalid_argument("recheck: unknown claim type '" + type + "'");
    }
    if (!ok) return false;
  }
  return true;
}

VPolytope slice_of(const VPolytope& B, const Functional& f, const Scalar& alpha,
                   const Caps& caps) {
  const Scalar sup = support(B, f);
  if (alpha <= 0 || alpha >= sup)
    throw std::domain_error("slice_of: alpha outside (0, support)");
  auto S = clip(B, HalfSpace{f, sup - alpha, true}, caps);
  if (!S) throw std::logic_error("slice_of: slice unexpectedly empty");
  return std::move(*S);
}

Certificate product_combo_certificate(int p, int d_each,
                                      const std::vector<SliceSpec>& specs,
                                      const Scalar& eps_prime) {
  if (p < 1) throw std::domain_error("product_combo_certificate: p must be >= 1");
  if (d_each < 1) throw std::invalid_argument("product_combo_certificate: d_each must be >= 1");
  if (eps_prime <= 0 || eps_prime >= 1)
    throw std::domain_error("product_combo_certificate: eps_prime outside (0,1)");
  if (specs.empty()) throw std::invalid_argument("product_combo_certificate: no slices");
  const int dim = 2 * d_each;
  Scalar wsum(0);
  for (const auto& spec : specs) {
    if (spec.f.dim() != dim)
      throw std::invalid_argument("product_combo_certificate: functional dimension mismatch");
    if (spec.weight <= 0) throw std::domain_error("product_combo_certificate: weights must be positive");
    wsum += spec.weight;
  }
  if (wsum != 1) throw std::domain_error("product_combo_certificate: weights must sum to 1");

  Certificate cert;
  cert.kind = CertKind::product_combo_lower_bound;
  cert.params["p"] = p;
  cert.params["d_each"] = d_each;
  cert.params["eps_prime"] = scalar_json(eps_prime);

  // shared bump coordinate: the first factor coordinate no functional sees
  int k = -1;
  for (int cand = 0; cand < d_each && k < 0; ++cand) {
    bool clean = true;
    for (const auto& spec : specs)
      if (spec.f.coeffs[static_cast<size_t>(cand)] != 0 ||
          spec.f.coeffs[static_cast<size_t>(d_each + cand)] != 0)
        clean = false;
    if (clean) k = cand;
  }
  if (k < 0)
    throw TruncationError(
        "product_combo_certificate: no functional-free bump coordinate below the truncation; "
        "enlarge d_each");
  cert.metrics["bump_coordinate"] = k;

  Json spec_echo = Json::array();
  Scalar u(0), v(0);
  std::vector<SeqVector> plus_points, minus_points;
  std::vector<Scalar> weights;
  for (const auto& spec : specs) {
    Scalar a(0), b(0);
    for (int i = 0; i < dim; ++i)
      (i < d_each ? a : b) += abs(spec.f.coeffs[static_cast<size_t>(i)]);
    if (a + b == 0) throw std::domain_error("product_combo_certificate: zero functional");
    if (spec.alpha <= 0 || spec.alpha >= std::max(a, b))
      throw std::domain_error(
          "product_combo_certificate: alpha not certified inside (0, support)");
    const TwoFactorPoint pt = two_factor_near_max(a, b, p, spec.alpha, eps_prime);

    // the slice point rides the functional's signs on its own support
    SeqVector base = SeqVector::zero(dim);
    for (int i = 0; i < dim; ++i) {
      const Scalar& c = spec.f.coeffs[static_cast<size_t>(i)];
      if (c == 0) continue;
      const Scalar mag = i < d_each ? pt.s : pt.t;
      base.coords[static_cast<size_t>(i)] = c > 0 ? mag : -mag;
    }
    SeqVector zp = base, zm = base;
    zp.coords[static_cast<size_t>(k)] = pt.s;
    zm.coords[static_cast<size_t>(k)] = -pt.s;
    zp.coords[static_cast<size_t>(d_each + k)] = pt.t;
    zm.coords[static_cast<size_t>(d_each + k)] = -pt.t;

    for (const auto* z : {&zp, &zm}) {
      cert.claims.push_back(product_norm_le_claim(d_each, p, *z, Scalar(1)));
      cert.claims.push_back(
          slice_member_ub_claim(spec.f, *z, spec.alpha, p, d_each, pt.omega, pt.theta));
    }
    plus_points.push_back(std::move(zp));
    minus_points.push_back(std::move(zm));
    weights.push_back(spec.weight);
    u += spec.weight * pt.s;
    v += spec.weight * pt.t;
    spec_echo.push_back(Json{{"functional", functional_json(spec.f)},
                             {"alpha", scalar_json(spec.alpha)},
                             {"weight", scalar_json(spec.weight)},
                             {"s", scalar_json(pt.s)},
                             {"t", scalar_json(pt.t)},
                             {"lb", scalar_json(pt.lb)},
                             {"ub", scalar_json(pt.ub)}});
  }
  cert.params["slices"] = std::move(spec_echo);

  SeqVector up = SeqVector::zero(dim), um = SeqVector::zero(dim);
  for (size_t i = 0; i < weights.size(); ++i) {
    up = add(up, scale(weights[i], plus_points[i]));
    um = add(um, scale(weights[i], minus_points[i]));
  }
  cert.claims.push_back(convex_sum_claim(up, weights, plus_points));
  cert.claims.push_back(convex_sum_claim(um, weights, minus_points));
  const SeqVector diff = sub(up, um);
  cert.claims.push_back(product_norm_pth_ge_claim(d_each, p, diff, 1 - eps_prime));

  const Scalar bound_radicand = pow_int(Scalar(2), p) * (pow_int(u, p) + pow_int(v, p));
  cert.metrics["u"] = scalar_json(u);
  cert.metrics["v"] = scalar_json(v);
  cert.metrics["bound_radicand"] = scalar_json(bound_radicand);
  cert.metrics["target_radicand"] = scalar_json(1 - eps_prime);
  cert.pass = bound_radicand >= 1 - eps_prime && recheck(cert);
  return cert;
}

ExactComboResult product_combo_exact_p1(const std::vector<SliceSpec>& specs, int d_each,
                                        const Caps& caps) {
  if (specs.empty()) throw std::invalid_argument("product_combo_exact_p1: no slices");
  const VPolytope ball = build_product_ball_p1(d_each, caps);
  std::vector<std::pair<Scalar, VPolytope>> parts;
  for (const auto& spec : specs)
    parts.emplace_back(spec.weight, slice_of(ball, spec.f, spec.alpha, caps));
  VPolytope combo = minkowski_combo(parts, true, caps);
  const auto d = diameter(combo, ball.model);
  ExactComboResult out{d.value.scalar(), combo.vertices[d.i], combo.vertices[d.j],
                       std::move(combo)};
  return out;
}

Certificate stage_open_witness(const StageLedger& ledger, int center_index,
                               const std::vector<Functional>& funcs, const Scalar& radius) {
  const int N = ledger.N();
  if (N < 2) throw std::invalid_argument("stage_open_witness: ledger too short");
  const StageInfo& top = ledger.top();
  const StageInfo& prev = ledger.stage(N - 1);
  if (radius <= 0) throw std::domain_error("stage_open_witness: radius must be positive");
  if (center_index < 0 || center_index >= top.l)
    throw std::invalid_argument("stage_open_witness: center index out of range");
  for (const auto& f : funcs) {
    if (f.dim() != top.m) throw std::invalid_argument("stage_open_witness: functional dimension");
    if (max_support(f) >= prev.m)
      throw std::domain_error(
          "stage_open_witness: functional support reaches the fresh coordinates");
  }

  const SeqVector center = ledger.net[static_cast<size_t>(center_index)];

  // net search: a prefix point of the previous stage inside the neighborhood
  int hit = -1;
  for (int i = 0; i < prev.l && hit < 0; ++i) {
    bool inside = true;
    for (const auto& f : funcs)
      if (abs(pair(f, sub(ledger.net[static_cast<size_t>(i)], center))) >= radius) inside = false;
    if (inside) hit = i;
  }
  if (hit < 0)
    throw std::domain_error("stage_open_witness: no low-stage net point in the neighborhood");

  const SeqVector g = ledger.net[static_cast<size_t>(hit)];
  const SeqVector bump = add(g, unit_vector(top.m, prev.m + hit));

  Certificate cert;
  cert.kind = CertKind::stage_open_diameter;
  cert.params["center_index"] = center_index;
  cert.params["radius"] = scalar_json(radius);
  Json fecho = Json::array();
  for (const auto& f : funcs) fecho.push_back(functional_json(f));
  cert.params["functionals"] = std::move(fecho);
  cert.params["witness_index"] = hit;
  cert.bodies["stage_hull"] = polytope_json(top.hull);

  cert.claims.push_back(member_claim("stage_hull", g));
  cert.claims.push_back(member_claim("stage_hull", bump));
  for (const auto& f : funcs) {
    cert.claims.push_back(pair_abs_lt_claim(f, g, center, radius));
    cert.claims.push_back(pair_abs_lt_claim(f, bump, center, radius));
  }
  cert.claims.push_back(sup_norm_eq_claim(sub(bump, g), false, Scalar(1)));

  const auto hull_diam = diameter(top.hull, SpaceModel::c0(top.m));
  cert.claims.push_back(diameter_eq_claim("stage_hull", "sup", "", hull_diam.value.scalar()));
  cert.claims.push_back(scalar_cmp_claim(hull_diam.value.scalar(), "eq", Scalar(1)));

  cert.metrics["witness_a"] = vector_json(g);
  cert.metrics["witness_b"] = vector_json(bump);
  cert.metrics["trace_diameter"] = scalar_json(Scalar(1));
  cert.pass = recheck(cert);
  return cert;
}

Certificate stage_combo_search(const StageLedger& ledger, int stage, const Scalar& alpha,
                               const Caps& caps) {
  const int N = ledger.N();
  if (stage < 1 || stage + 1 > N)
    throw std::invalid_argument("stage_combo_search: stage must satisfy 1 <= stage <= N-1");
  if (alpha <= 0 || alpha >= 1) throw std::domain_error("stage_combo_search: alpha outside (0,1)");
  const StageInfo& st = ledger.stage(stage);
  const StageInfo& top = ledger.top();
  const VPolytope& K = top.hull;

  Certificate cert;
  cert.kind = CertKind::stage_small_combo;
  cert.params["stage"] = stage;
  cert.params["alpha"] = scalar_json(alpha);
  cert.bodies["stage_hull"] = polytope_json(K);

  std::vector<std::pair<Scalar, VPolytope>> parts;
  Json funcs_echo = Json::array();
  const Scalar weight = Scalar(1) / st.l;
  for (int i = 0; i < st.l; ++i) {
    Functional f = Functional::coordinate(top.m, 0);
    f.coeffs[static_cast<size_t>(st.m + i)] = 1;
    const Scalar sup = support(K, f);
    const Functional fhat = scale(Scalar(1) / sup, f);
    VPolytope S = slice_of(K, fhat, alpha, caps);
    funcs_echo.push_back(functional_json(fhat));
    parts.emplace_back(weight, std::move(S));
  }
  cert.params["functionals"] = std::move(funcs_echo);

  VPolytope combo = minkowski_combo(parts, true, caps);
  const auto d = diameter(combo, SpaceModel::c0(top.m));
  cert.bodies["combo"] = polytope_json(combo);
  cert.claims.push_back(member_claim("combo", combo.vertices[d.i]));
  cert.claims.push_back(member_claim("combo", combo.vertices[d.j]));
  cert.claims.push_back(
      sup_norm_eq_claim(sub(combo.vertices[d.i], combo.vertices[d.j]), false, d.value.scalar()));
  cert.claims.push_back(diameter_eq_claim("combo", "sup", "", d.value.scalar()));

  cert.metrics["measured_diameter"] = scalar_json(d.value.scalar());
  cert.metrics["slice_count"] = st.l;
  cert.pass = recheck(cert);
  return cert;
}

namespace {

// Sorted generator families of the renormed ball: the recentered stage hull,
// its mirror, and the box corners.
struct BallGenerators {
  std::vector<SeqVector> pos, neg, box;
};

BallGenerators ball_generators(const StageLedger& ledger, const Scalar& eps) {
  const StageInfo& top = ledger.top();
  BallGenerators g;
  for (const auto& v : top.hull.vertices) {
    SeqVector a = recenter(v, top.m);
    g.neg.push_back(scale(Scalar(-1), a));
    g.pos.push_back(std::move(a));
  }
  const VPolytope box = box_ball_c(top.m, Scalar(1), Scalar(1) - eps);
  g.box = box.vertices;
  std::sort(g.pos.begin(), g.pos.end(), lex_less);
  std::sort(g.neg.begin(), g.neg.end(), lex_less);
  std::sort(g.box.begin(), g.box.end(), lex_less);
  return g;
}

// Decomposes x over the three generator families by one feasibility LP.
std::vector<std::vector<Scalar>> decompose_over_groups(
    const std::vector<const std::vector<SeqVector>*>& groups, const SpaceModel& model,
    const SeqVector& x) {
  size_t total = 0;
  for (const auto* g : groups) total += g->size();
  const size_t rows = 1 + static_cast<size_t>(model.dense_dim());
  LpProblem lp;
  lp.dir = OptDir::minimize;
  lp.objective.assign(total, Scalar(0));
  lp.rows.assign(rows, std::vector<Scalar>(total, Scalar(0)));
  lp.senses.assign(rows, RowSense::eq);
  lp.rhs.assign(rows, Scalar(0));
  lp.bounds.assign(total, VarBound::nonneg());
  size_t col = 0;
  for (const auto* g : groups) {
    for (const auto& vert : *g) {
      lp.rows[0][col] = 1;
      for (int r = 0; r < model.dim; ++r)
        lp.rows[1 + static_cast<size_t>(r)][col] = vert.coords[static_cast<size_t>(r)];
      if (model.has_limit) lp.rows[rows - 1][col] = vert.limit;
      ++col;
    }
  }
  lp.rhs[0] = 1;
  for (int r = 0; r < model.dim; ++r)
    lp.rhs[1 + static_cast<size_t>(r)] = x.coords[static_cast<size_t>(r)];
  if (model.has_limit) lp.rhs[rows - 1] = x.limit;
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::optimal)
    throw std::logic_error("decompose_over_groups: point not in the generator hull");
  std::vector<std::vector<Scalar>> out;
  col = 0;
  for (const auto* g : groups) {
    std::vector<Scalar> w;
    for (size_t i = 0; i < g->size(); ++i) w.push_back(res.solution[col++]);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

Certificate ball_combo_certificate(const StageLedger& ledger, const VPolytope& ball,
                                   const RenormParams& params, int stage, const Caps& caps) {
  const StageInfo& top = ledger.top();
  const SpaceModel c_model = SpaceModel::c(top.m);
  params.validate(c_model);
  const VPolytope& K = top.hull;

  Certificate cert;
  cert.kind = CertKind::ball_combo_upper;
  cert.params = renorm_params_json(params);
  cert.params["stage"] = stage;
  cert.bodies["ball"] = polytope_json(ball);

  // base slices at depth delta_tilde below the (normalized) supremum 1
  std::vector<std::pair<Scalar, VPolytope>> base_parts;
  for (size_t i = 0; i < params.funcs.size(); ++i) {
    const Functional& f = params.funcs[i];
    if (f.dim() != top.m || f.limit_coeff != 0)
      throw std::invalid_argument(
          "ball_combo_certificate: functionals must match the top stage with zero limit part");
    Functional f_c0 = f;
    const Scalar sup = support(K, f_c0);
    if (sup != 1)
      throw std::domain_error("ball_combo_certificate: slice functionals must be normalized");
    base_parts.emplace_back(params.weights[i], slice_of(K, f_c0, params.delta_tilde, caps));
  }
  VPolytope base_combo = minkowski_combo(base_parts, true, caps);
  const Scalar base_diam = diameter(base_combo, SpaceModel::c0(top.m)).value.scalar();
  const Scalar base_cap = (1 - params.eps) * params.gamma / 4;
  if (!(base_diam < base_cap))
    throw std::domain_error(
        "ball_combo_certificate: base slice combination diameter not below (1-eps)*gamma/4");
  cert.bodies["base_combo"] = polytope_json(base_combo);
  cert.claims.push_back(diameter_eq_claim("base_combo", "sup", "", base_diam));
  cert.claims.push_back(scalar_cmp_claim(base_diam, "lt", base_cap));
  cert.metrics["base_diameter"] = scalar_json(base_diam);

  const BallGenerators gens = ball_generators(ledger, params.eps);
  cert.bodies["gen_pos"] =
      polytope_json(VPolytope{c_model, gens.pos, false});
  cert.bodies["gen_neg"] =
      polytope_json(VPolytope{c_model, gens.neg, false});
  cert.bodies["gen_box"] =
      polytope_json(VPolytope{c_model, gens.box, false});

  const Scalar limit_cut = -1 + params.rho * params.rho;
  const Functional lim_f = Functional::limit(top.m);
  const auto slab = clip(ball, HalfSpace{lim_f, limit_cut, false}, caps);
  if (!slab) throw std::logic_error("ball_combo_certificate: empty limit slab");

  std::vector<std::pair<Scalar, VPolytope>> window_parts;
  Json windows_meta = Json::array();
  for (size_t i = 0; i < params.funcs.size(); ++i) {
    const Functional& f = params.funcs[i];
    const Scalar threshold =
        2 * (1 - params.delta - pair(f, scale(frac(1, 2), ones_vector(top.m)))) +
        params.rho * dual_norm(c_model, f) / 2;
    const auto window = clip(*slab, HalfSpace{f, threshold, true}, caps);
    if (!window) throw std::logic_error("ball_combo_certificate: empty closed window");

    // nonemptiness witness: a recentered net or hull point strictly inside
    SeqVector witness;
    bool found = false;
    auto try_point = [&](const SeqVector& x) {
      if (found) return;
      const SeqVector w = recenter(x, top.m);
      if (pair(f, w) > threshold && w.limit < limit_cut) {
        witness = w;
        found = true;
      }
    };
    for (const auto& vtx : K.vertices) try_point(vtx);
    for (const auto& g : ledger.net) try_point(g);
    if (!found)
      throw std::domain_error("ball_combo_certificate: no strict window witness found");
    cert.claims.push_back(member_claim("ball", witness));
    cert.claims.push_back(pair_cmp_claim(f, witness, "gt", threshold));
    cert.claims.push_back(pair_cmp_claim(lim_f, witness, "lt", limit_cut));

    // every closed-window vertex decomposes with dominant first group
    for (const auto& u : window->vertices) {
      const auto weights = decompose_over_groups({&gens.pos, &gens.neg, &gens.box}, c_model, u);
      cert.claims.push_back(decomposition_claim(
          u, {"gen_pos", "gen_neg", "gen_box"}, weights, 1 - params.rho / 2));
    }

    windows_meta.push_back(Json{{"threshold", scalar_json(threshold)},
                                {"vertices", window->vertices.size()}});
    window_parts.emplace_back(params.weights[i], std::move(*window));
  }
  cert.metrics["windows"] = std::move(windows_meta);

  VPolytope window_combo = minkowski_combo(window_parts, true, caps);
  cert.bodies["window_combo"] = polytope_json(window_combo);
  const auto gauge_model = SpaceModel::gauge_ball(std::make_shared<VPolytope>(ball));
  const auto d = diameter(window_combo, gauge_model);
  const Scalar measured = d.value.scalar();
  cert.claims.push_back(diameter_eq_claim("window_combo", "gauge", "ball", measured));
  cert.claims.push_back(scalar_cmp_claim(measured, "le", params.gamma));
  cert.metrics["window_combo_diameter"] = scalar_json(measured);
  cert.metrics["window_combo_vertices"] = window_combo.vertices.size();

  cert.pass = measured <= params.gamma && recheck(cert);
  return cert;
}

Certificate ball_open_witness(const StageLedger& ledger, const VPolytope& ball,
                              const Scalar& eps, const BallOpenInputs& in) {
  const int N = ledger.N();
  if (N < 2) throw std::invalid_argument("ball_open_witness: ledger too short");
  const StageInfo& top = ledger.top();
  const StageInfo& prev = ledger.stage(N - 1);
  const SpaceModel c_model = SpaceModel::c(top.m);
  if (in.bump_index < 0 || in.bump_index >= prev.l)
    throw std::invalid_argument("ball_open_witness: bump index out of range");
  if (in.lambda < 0 || in.lambda > 1)
    throw std::domain_error("ball_open_witness: lambda outside [0,1]");
  if (in.radius <= 0) throw std::domain_error("ball_open_witness: radius must be positive");
  if (!leq(vector_norm(c_model, in.x0), Scalar(1)))
    throw std::domain_error("ball_open_witness: x0 outside the unit ball");
  if (in.y0.limit != 0 || !leq(vector_norm(SpaceModel::c0(top.m), in.y0), Scalar(1)))
    throw std::domain_error("ball_open_witness: y0 outside the limit-free unit ball");
  for (int i = prev.m; i < top.m; ++i)
    if (in.y0.coords[static_cast<size_t>(i)] != 0)
      throw std::domain_error("ball_open_witness: y0 must be supported below the fresh block");
  for (const auto& f : in.funcs) {
    if (f.dim() != top.m) throw std::invalid_argument("ball_open_witness: functional dimension");
    if (max_support(f) >= prev.m)
      throw std::domain_error("ball_open_witness: functional support reaches the fresh block");
  }

  const int k = prev.m + in.bump_index;
  const SeqVector g = ledger.net[static_cast<size_t>(in.bump_index)];
  const SeqVector ones = ones_vector(top.m);
  const SeqVector ek = unit_vector(top.m, k);

  const auto [xk, yk] = bump_sequences(c_model, in.x0, k);

  auto mix = [&](const SeqVector& hull_part, const SeqVector& box_x, const SeqVector& box_y) {
    return add(scale(in.lambda, hull_part),
               scale(1 - in.lambda, add(scale(1 - eps, box_x), scale(eps, box_y))));
  };
  const SeqVector base_hull = sub(scale(Scalar(2), g), ones);
  const SeqVector bump_hull = sub(scale(Scalar(2), add(g, ek)), ones);
  const SeqVector base = mix(base_hull, in.x0, in.y0);
  const SeqVector x = mix(bump_hull, xk, add(in.y0, ek));
  const SeqVector y = mix(base_hull, yk, sub(in.y0, ek));

  Certificate cert;
  cert.kind = CertKind::ball_open_diameter;
  cert.params["bump_index"] = in.bump_index;
  cert.params["lambda"] = scalar_json(in.lambda);
  cert.params["radius"] = scalar_json(in.radius);
  cert.params["eps"] = scalar_json(eps);
  cert.params["x0"] = vector_json(in.x0);
  cert.params["y0"] = vector_json(in.y0);
  Json fecho = Json::array();
  for (const auto& f : in.funcs) fecho.push_back(functional_json(f));
  cert.params["functionals"] = std::move(fecho);
  cert.bodies["ball"] = polytope_json(ball);

  cert.claims.push_back(member_claim("ball", x));
  cert.claims.push_back(member_claim("ball", y));
  for (const auto& f : in.funcs) {
    cert.claims.push_back(pair_abs_lt_claim(f, x, base, in.radius));
    cert.claims.push_back(pair_abs_lt_claim(f, y, base, in.radius));
  }
  const SeqVector diff = sub(x, y);
  cert.claims.push_back(gauge_cmp_claim("ball", diff, "eq", Scalar(2)));

  // hull-split bookkeeping: which of the two halves each witness landed in
  const BallGenerators gens = ball_generators(ledger, eps);
  std::vector<SeqVector> pos_box = gens.pos, neg_box = gens.neg;
  pos_box.insert(pos_box.end(), gens.box.begin(), gens.box.end());
  neg_box.insert(neg_box.end(), gens.box.begin(), gens.box.end());
  const VPolytope half_pos = prune(VPolytope{c_model, pos_box, false});
  const VPolytope half_neg = prune(VPolytope{c_model, neg_box, false});
  cert.bodies["half_pos"] = polytope_json(half_pos);
  cert.bodies["half_neg"] = polytope_json(half_neg);
  Json sides = Json::object();
  const bool x_pos = contains(half_pos, x), x_neg = contains(half_neg, x);
  const bool y_pos = contains(half_pos, y), y_neg = contains(half_neg, y);
  sides["x"] = Json{{"pos", x_pos}, {"neg", x_neg}};
  sides["y"] = Json{{"pos", y_pos}, {"neg", y_neg}};
  cert.metrics["hull_split_sides"] = std::move(sides);
  cert.claims.push_back(member_any_claim({"half_pos", "half_neg"}, x));
  cert.claims.push_back(member_any_claim({"half_pos", "half_neg"}, y));

  cert.metrics["witness_x"] = vector_json(x);
  cert.metrics["witness_y"] = vector_json(y);
  cert.metrics["gauge_distance"] = scalar_json(Scalar(2));
  cert.pass = recheck(cert);
  return cert;
}

Certificate hull_split_check(const VPolytope& A, const VPolytope& B, const Caps& caps) {
  if (!A.model.same_shape(B.model))
    throw std::invalid_argument("hull_split_check: model mismatch");
  // hypothesis: (A - A)/2 inside B, checked on vertex pairs
  for (size_t i = 0; i < A.vertices.size(); ++i)
    for (size_t j = 0; j < A.vertices.size(); ++j) {
      const SeqVector half = scale(frac(1, 2), sub(A.vertices[i], A.vertices[j]));
      if (!contains(B, half))
        throw std::domain_error("hull_split_check: hypothesis fails at vertex pair (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
    }

  const SpaceModel& model = A.model;
  std::vector<SeqVector> all;
  for (const auto& v : A.vertices) {
    all.push_back(v);
    all.push_back(scale(Scalar(-1), v));
  }
  for (const auto& v : B.vertices) all.push_back(v);
  const VPolytope left = prune(VPolytope{model, all, false}, caps);

  std::vector<SeqVector> right1 = B.vertices, right2 = B.vertices;
  for (const auto& v : A.vertices) {
    right1.push_back(v);
    right2.push_back(scale(Scalar(-1), v));
  }
  const VPolytope pos = prune(VPolytope{model, right1, false}, caps);
  const VPolytope neg = prune(VPolytope{model, right2, false}, caps);

  Certificate cert;
  cert.kind = CertKind::hull_split_equality;
  cert.bodies["left"] = polytope_json(left);
  cert.bodies["pos_half"] = polytope_json(pos);
  cert.bodies["neg_half"] = polytope_json(neg);
  cert.bodies["B"] = polytope_json(B);

  for (const auto& v : left.vertices)
    cert.claims.push_back(member_any_claim({"pos_half", "neg_half"}, v));
  for (const auto& v : pos.vertices) cert.claims.push_back(member_claim("left", v));
  for (const auto& v : neg.vertices) cert.claims.push_back(member_claim("left", v));

  // a sample point decomposed the way the split works: with l1 >= l2,
  //   l1 a1 - l2 a2 + l3 b = (l1 - l2) a1 + 2 l2 (a1 - a2)/2 + l3 b
  {
    const SeqVector& a1 = A.vertices.front();
    const SeqVector& a2 = A.vertices.back();
    const SeqVector& b = B.vertices.front();
    const Scalar l1 = frac(1, 2), l2 = frac(1, 4), l3 = frac(1, 4);
    const SeqVector sample =
        add(add(scale(l1, a1), scale(-l2, a2)), scale(l3, b));
    const SeqVector half_diff = scale(frac(1, 2), sub(a1, a2));
    const SeqVector rebuilt =
        add(add(scale(l1 - l2, a1), scale(2 * l2, half_diff)), scale(l3, b));
    if (!equal(sample, rebuilt))
      throw std::logic_error("hull_split_check: decomposition identity failed");
    cert.metrics["sample_point"] = vector_json(sample);
    cert.metrics["sample_weights"] =
        Json{{"l1", scalar_json(l1)}, {"l2", scalar_json(l2)}, {"l3", scalar_json(l3)}};
    cert.claims.push_back(member_claim("B", half_diff));
    cert.claims.push_back(member_claim("pos_half", sample));
  }

  cert.pass = recheck(cert);
  return cert;
}

Certificate l1sum_inclusion_check(const VPolytope& B1, const VPolytope& B2,
                                  const Functional& f, const Scalar& alpha, const Scalar& mu,
                                  const Caps& caps) {
  if (!(mu > 0) || !(mu < alpha))
    throw std::domain_error("l1sum_inclusion_check: need 0 < mu < alpha");
  if (f.dim() != B1.model.dim)
    throw std::invalid_argument("l1sum_inclusion_check: functional dimension mismatch");
  if (support(B1, f) != 1)
    throw std::domain_error("l1sum_inclusion_check: functional must have support 1 on factor 1");

  const VPolytope Z = build_l1_sum_ball(B1, B2, caps);
  const int d1 = B1.model.dim, d2 = B2.model.dim;
  Functional F = Functional::zero(d1 + d2);
  for (int i = 0; i < d1; ++i) F.coeffs[static_cast<size_t>(i)] = f.coeffs[static_cast<size_t>(i)];
  const Scalar supZ = support(Z, F);
  if (supZ != 1) throw std::logic_error("l1sum_inclusion_check: sum-ball support must be 1");

  const VPolytope slice = slice_of(Z, F, mu, caps);

  Certificate cert;
  cert.kind = CertKind::l1sum_inclusion;
  cert.params["alpha"] = scalar_json(alpha);
  cert.params["mu"] = scalar_json(mu);
  cert.params["functional"] = functional_json(f);
  cert.bodies["factor1"] = polytope_json(B1);
  cert.bodies["factor2"] = polytope_json(B2);
  cert.bodies["slice"] = polytope_json(slice);

  for (const auto& vtx : slice.vertices) {
    SeqVector x = SeqVector::zero(d1), y = SeqVector::zero(d2);
    for (int i = 0; i < d1; ++i) x.coords[static_cast<size_t>(i)] = vtx.coords[static_cast<size_t>(i)];
    for (int i = 0; i < d2; ++i) y.coords[static_cast<size_t>(i)] = vtx.coords[static_cast<size_t>(d1 + i)];
    cert.claims.push_back(pair_cmp_claim(f, x, "gt", 1 - alpha));
    cert.claims.push_back(gauge_cmp_claim("factor2", y, "le", mu));
  }
  cert.metrics["slice_vertices"] = slice.vertices.size();
  cert.pass = recheck(cert);
  return cert;
}

}  // namespace d2lab
