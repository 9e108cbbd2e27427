#pragma once

#include "d2lab/json_io.hpp"

namespace d2lab {

// Raised when an exact witness would need coordinates beyond the truncation;
// never a refutation, only a request for a larger model.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

enum class CertKind {
  product_combo_lower_bound,
  stage_open_diameter,
  stage_small_combo,
  ball_combo_upper,
  ball_open_diameter,
  hull_split_equality,
  l1sum_inclusion,
};

std::string cert_kind_name(CertKind kind);
CertKind cert_kind_from_name(const std::string& name);

// A certificate carries named polytope payloads plus a list of primitive
// claims (memberships, pairings, norms, gauges, decompositions) from which
// the verdict can be reproduced without rerunning any construction.
struct Certificate {
  CertKind kind = CertKind::product_combo_lower_bound;
  bool pass = false;
  Json params = Json::object();
  Json bodies = Json::object();
  Json claims = Json::array();
  Json metrics = Json::object();

  Json to_json() const;
  static Certificate from_json(const Json& j);
};

// Re-evaluates every claim of the certificate from its payload alone.
bool recheck(const Certificate& cert);

// One slice of a combination: a functional on the ambient model, a depth
// alpha below the functional's supremum, and a convex weight.
struct SliceSpec {
  Functional f;
  Scalar alpha;
  Scalar weight;
};

// Closed slice of B at depth alpha: clip at f >= support(B, f) - alpha.
VPolytope slice_of(const VPolytope& B, const Functional& f, const Scalar& alpha,
                   const Caps& caps = {});

// Lower-bound certificate for convex combinations of slices of the
// two-factor sup product ball with exponent p: exhibits near-norming points
// of every slice, bumps them along a shared fresh coordinate, and bounds the
// combination diameter below by the exact p-th-power comparison against
// (1 - eps_prime).
Certificate product_combo_certificate(int p, int d_each,
                                      const std::vector<SliceSpec>& specs,
                                      const Scalar& eps_prime);

struct ExactComboResult {
  Scalar diameter;
  SeqVector witness_a, witness_b;
  VPolytope combo;
};

// Exact polytope route, p = 1 only: the closed slices of the polyhedral
// product ball are combined exactly and the diameter read off vertex pairs.
ExactComboResult product_combo_exact_p1(const std::vector<SliceSpec>& specs,
                                        int d_each, const Caps& caps = {});

// A basic neighborhood of a net point (functionals supported strictly below
// the previous stage top) contains a net point and its fresh-coordinate
// bump, so its trace on the stage hull has sup diameter exactly 1.
Certificate stage_open_witness(const StageLedger& ledger, int center_index,
                               const std::vector<Functional>& funcs,
                               const Scalar& radius);

// Equal-weight combination of slices exposing the stage-n bump vertices;
// the measured exact diameter is recorded for trend reporting.
Certificate stage_combo_search(const StageLedger& ledger, int stage,
                               const Scalar& alpha, const Caps& caps = {});

// Windows of the renormed ball: threshold the slice functionals just below
// their supremum over the recentered stage hull and pin the limit coordinate
// near -1. Certifies gauge-diameter of the closed-window average <= gamma,
// with nonemptiness witnesses and first-group weight extraction.
Certificate ball_combo_certificate(const StageLedger& ledger, const VPolytope& ball,
                                   const RenormParams& params, int stage,
                                   const Caps& caps = {});

struct BallOpenInputs {
  int bump_index = 0;  // 0-based index below the previous stage's net size
  Scalar lambda;       // mixing weight in [0,1]
  SeqVector x0;        // point of the limit-model unit ball
  SeqVector y0;        // limit-free ball point supported below the previous stage top
  std::vector<Functional> funcs;  // neighborhood functionals, low support
  Scalar radius;                  // neighborhood radius
};

// Exact witness pair inside a basic neighborhood of the renormed ball whose
// gauge distance is exactly 2.
Certificate ball_open_witness(const StageLedger& ledger, const VPolytope& ball,
                              const Scalar& eps, const BallOpenInputs& in);

// Exact verification of co(A u -A u B) = co(A u B) u co(-A u B) under the
// hypothesis (A - A)/2 c B, at vertex granularity in both directions.
Certificate hull_split_check(const VPolytope& A, const VPolytope& B,
                             const Caps& caps = {});

// Slices of the 1-sum ball factor through the first coordinate: every vertex
// of the depth-mu slice projects into the depth-alpha factor slice with a
// second factor of gauge at most mu.
Certificate l1sum_inclusion_check(const VPolytope& B1, const VPolytope& B2,
                                  const Functional& f, const Scalar& alpha,
                                  const Scalar& mu, const Caps& caps = {});

}  // namespace d2lab
