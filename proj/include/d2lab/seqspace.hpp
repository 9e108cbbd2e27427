#pragma once

#include <memory>
#include <vector>

#include "d2lab/scalar.hpp"

namespace d2lab {

struct VPolytope;

// Truncated models of the classical sequence spaces:
//   - has_limit == false: first `dim` coordinates of a null sequence, the
//     tail is identically zero.
//   - has_limit == true: `dim` explicit coordinates plus a limit coordinate
//     L; coordinates beyond `dim` all equal L.  The truncated unit ball is
//     then the box [-1,1]^(dim+1).
enum class NormKind { sup, product_p, l1sum, gauge };

struct SpaceModel {
  int dim = 0;
  bool has_limit = false;
  NormKind kind = NormKind::sup;
  int p = 0;      // product_p only (integer p >= 1)
  int split = 0;  // product_p / l1sum: factor 1 is coords [0, split)
  std::shared_ptr<const VPolytope> ball;  // gauge only

  static SpaceModel c0(int dim);
  static SpaceModel c(int dim);
  static SpaceModel product(int dim_each, int p);
  static SpaceModel l1_sum(int dim1, int dim2);
  static SpaceModel gauge_ball(std::shared_ptr<const VPolytope> ball);

  // Number of coordinates a dense representation carries (dim plus the
  // limit slot when present).
  int dense_dim() const { return dim + (has_limit ? 1 : 0); }
  bool same_shape(const SpaceModel& other) const {
    return dim == other.dim && has_limit == other.has_limit;
  }
};

// Finitely supported coordinate list plus a limit coordinate. For models
// without a limit the limit slot must stay 0.
struct SeqVector {
  std::vector<Scalar> coords;
  Scalar limit = 0;

  static SeqVector zero(int dim) { return {std::vector<Scalar>(static_cast<size_t>(dim), Scalar(0)), Scalar(0)}; }
  int dim() const { return static_cast<int>(coords.size()); }
};

SeqVector unit_vector(int dim, int index);  // e_index, 0-based
SeqVector ones_vector(int dim);             // all coordinates and limit equal 1

SeqVector add(const SeqVector& a, const SeqVector& b);
SeqVector sub(const SeqVector& a, const SeqVector& b);
SeqVector scale(const Scalar& t, const SeqVector& a);
SeqVector embed(const SeqVector& a, int new_dim);  // extend with zero coords
bool equal(const SeqVector& a, const SeqVector& b);
bool lex_less(const SeqVector& a, const SeqVector& b);

// l1-type functional: coefficient list plus a coefficient on the limit
// coordinate; f(x) = sum_k coeffs[k] * x(k) + limit_coeff * L(x).
struct Functional {
  std::vector<Scalar> coeffs;
  Scalar limit_coeff = 0;

  static Functional zero(int dim) { return {std::vector<Scalar>(static_cast<size_t>(dim), Scalar(0)), Scalar(0)}; }
  static Functional limit(int dim);            // x -> L(x)
  static Functional coordinate(int dim, int index);  // x -> x(index)
  int dim() const { return static_cast<int>(coeffs.size()); }
};

Functional scale(const Scalar& t, const Functional& f);
// Largest 0-based coordinate index with a nonzero coefficient; -1 if none.
int max_support(const Functional& f);

// Exact dual pairing; throws std::invalid_argument on dimension mismatch.
Scalar pair(const Functional& f, const SeqVector& x);

// Norm of x in the model. sup and l1sum produce exact scalars; product_p
// with p >= 2 produces a p-th power handle; gauge models delegate to the
// polytope gauge.
NormValue vector_norm(const SpaceModel& model, const SeqVector& x);

// Dual norm. Defined for sup models (sum of absolute coefficients plus the
// absolute limit coefficient) and gauge models (support over ball
// vertices); product_p and l1sum duals are unsupported.
Scalar dual_norm(const SpaceModel& model, const Functional& f);

// For x in the unit ball of the limit model and a 0-based coordinate k,
// returns the two unit-ball elements x + (1-x(k)) e_k and x - (1+x(k)) e_k,
// whose difference is exactly 2 e_k.
std::pair<SeqVector, SeqVector> bump_sequences(const SpaceModel& model,
                                               const SeqVector& x, int k);

}  // namespace d2lab
