#pragma once

#include <vector>

#include "d2lab/polytope.hpp"

namespace d2lab {

// Raised when a staged construction fails one of its build-time invariants.
class ConstructionError : public std::runtime_error {
 public:
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

struct StageInfo {
  VPolytope hull;     // stage hull K_n, limit-free model of dimension m
  int m = 0;          // top coordinate used by the hull
  int l = 0;          // cumulative net size after this stage
  Scalar net_radius;  // exact covering radius of the net over the stage grid
  Scalar mesh_bound;  // grid mesh bound (#vertices / mesh denominator)
  Scalar eps;         // reported radius, clamped nonincreasing across stages
};

// Bookkeeping for the staged construction: increasing hulls K_2 c K_3 c ...,
// a cumulative net g_1, g_2, ... (stage n owns the prefix of length l_n), and
// the achieved covering radii. Stage n+1 bumps net point g_i by the fresh
// basis vector e_(m_n+i), then m_(n+1) = l_(n+1) = m_n + l_n.
struct StageLedger {
  std::vector<StageInfo> stages;  // stages[k] is stage k+1
  std::vector<SeqVector> net;     // cumulative, stored at dimension m_N
  int mesh_denominator = 4;

  int N() const { return static_cast<int>(stages.size()); }
  const StageInfo& stage(int n) const { return stages.at(static_cast<size_t>(n - 1)); }
  const StageInfo& top() const { return stages.back(); }
};

struct NetResult {
  std::vector<SeqVector> points;  // seeds first, then greedy picks
  Scalar grid_radius;             // exact covering radius over the grid
  Scalar mesh_bound;              // k/q for k vertices and denominator q
};

// Farthest-point net over the barycentric rational grid of P with weight
// denominator `mesh_denominator`. Seeds default to the first vertex; the
// returned radius is exact over the grid, with the mesh bound reported
// separately.
NetResult greedy_net(const VPolytope& P, int size, int mesh_denominator,
                     const std::vector<SeqVector>& seeds = {},
                     const Caps& caps = {});

// Builds stages 1..N with stage-2 net size l2. All ledger invariants are
// verified during construction; violations abort with a diagnostic.
StageLedger build_stages(int N, int l2, int mesh_denominator, const Caps& caps = {});

// Re-checks every ledger invariant; throws ConstructionError on violation.
void verify_ledger(const StageLedger& ledger);

// The symmetric renormed ball over the ledger's top stage, in the limit
// model of dimension m_N: the hull of the recentered stage hull 2(K-1/2),
// its mirror, and the box (1-eps)B + eps B0. Canonical, symmetric, with 0
// interior.
VPolytope build_renormed_ball(const StageLedger& ledger, const Scalar& eps,
                              const Caps& caps = {});

// Unit ball of the 1-sum of two sup-normed factors of dimension d_each:
// co(B1 x {0} u {0} x B2) with box factors.
VPolytope build_product_ball_p1(int d_each, const Caps& caps = {});

// Unit ball of the 1-sum of two arbitrary symmetric factor balls.
VPolytope build_l1_sum_ball(const VPolytope& B1, const VPolytope& B2,
                            const Caps& caps = {});

// Parameter system for the renormed-ball window experiments.
struct RenormParams {
  Scalar eps;          // ball parameter, in (0,1)
  Scalar rho, delta, delta_tilde, gamma;
  std::vector<Functional> funcs;  // normalized slice functionals
  std::vector<Scalar> weights;    // convex weights

  // Checks the full constraint system; throws std::domain_error naming the
  // first violated inequality.
  void validate(const SpaceModel& model) const;
};

// Deterministic schedule resolving (rho, delta, delta_tilde) from eps and
// gamma with a rational 1/2 safety factor at each step.
RenormParams solve_renorm_params(const SpaceModel& model, const Scalar& eps,
                                 const Scalar& gamma,
                                 std::vector<Functional> funcs,
                                 std::vector<Scalar> weights);

}  // namespace d2lab
