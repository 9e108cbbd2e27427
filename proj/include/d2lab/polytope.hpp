#pragma once

#include <optional>
#include <vector>

#include "d2lab/seqspace.hpp"

namespace d2lab {

// Size caps for combinatorial blowups. Exceeding a cap raises SizeCapError
// naming the cap, so drivers can map it to a distinct exit code.
struct Caps {
  size_t max_candidate_sums = 200000;  // Minkowski vertex-choice products
  size_t max_vertices = 4000;          // vertices of any constructed polytope
  size_t max_grid_points = 200000;     // barycentric grid enumeration
};

// V-representation polytope. `canonical` asserts that every listed vertex is
// an extreme point of the hull (no vertex lies in the hull of the others).
struct VPolytope {
  SpaceModel model;
  std::vector<SeqVector> vertices;
  bool canonical = false;
};

struct HalfSpace {
  Functional f;
  Scalar bound;
  bool lower = true;  // true: f(x) >= bound, false: f(x) <= bound
};

VPolytope make_polytope(SpaceModel model, std::vector<SeqVector> vertices);

// Axis-aligned boxes used throughout: the truncated limit-model ball is
// [-s,s]^(dim+1), the limit-free ball is [-s,s]^dim x {0}.
VPolytope box_ball_c(int dim, const Scalar& coord_scale, const Scalar& limit_scale);
VPolytope box_ball_c0(int dim, const Scalar& scale);

// Exact membership: is x a convex combination of the vertices of P?
bool contains(const VPolytope& P, const SeqVector& x);

// Canonicalization: deduplicates and keeps exactly the extreme points of the
// hull. The result compares lexicographically sorted.
VPolytope prune(const VPolytope& P, const Caps& caps = {});

struct EdgeWitness {
  bool edge = false;
  Functional f;  // attains its max over P exactly on [v,w] with a positive gap
  Scalar gap;
};

// Is [v,w] an edge of canonical P? Decided by an LP maximizing the gap
// between the values on {v,w} and on every other vertex, with coefficients
// normalized to [-1,1].
EdgeWitness edge_witness(const VPolytope& P, size_t vi, size_t wi);
bool is_edge(const VPolytope& P, size_t vi, size_t wi);

// P intersected with a closed half-space, in V-representation. Empty
// intersections are a value, not an error.
std::optional<VPolytope> clip(const VPolytope& P, const HalfSpace& H,
                              const Caps& caps = {});

// Hull of { sum_i w_i v_i : v_i vertex of P_i }, pruned. In convex mode the
// weights must be nonnegative and sum to one; otherwise any nonnegative
// weights are allowed.
VPolytope minkowski_combo(const std::vector<std::pair<Scalar, VPolytope>>& parts,
                          bool convex_mode = true, const Caps& caps = {});

// Minkowski functional of P at x: min { sum nu_j : x = sum nu_j v_j, nu >= 0 }.
// Throws std::domain_error when x is not in any dilation of P.
Scalar gauge(const VPolytope& P, const SeqVector& x);

// Checks the preconditions under which the gauge is a norm: canonical,
// symmetric, and 0 interior. Throws std::domain_error with a diagnostic.
void validate_gauge_ball(const VPolytope& P);

// max_u f(u) over P, attained at a vertex.
Scalar support(const VPolytope& P, const Functional& f);
size_t support_argmax(const VPolytope& P, const Functional& f);

struct DiameterResult {
  NormValue value;
  size_t i = 0, j = 0;  // attaining vertex pair
};

// Exact diameter of canonical nonempty P under the given norm model, with an
// attaining vertex pair as witness.
DiameterResult diameter(const VPolytope& P, const SpaceModel& norm_model);

// Mutual containment of vertex sets (same hull).
bool hull_equal(const VPolytope& P, const VPolytope& Q);

}  // namespace d2lab
