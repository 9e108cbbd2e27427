#include "d2lab/seqspace.hpp"

#include <algorithm>

#include "d2lab/polytope.hpp"

namespace d2lab {

SpaceModel SpaceModel::c0(int dim) { return {dim, false, NormKind::sup, 0, 0, nullptr}; }

SpaceModel SpaceModel::c(int dim) { return {dim, true, NormKind::sup, 0, 0, nullptr}; }

SpaceModel SpaceModel::product(int dim_each, int p) {
  if (p < 1) throw std::invalid_argument("SpaceModel::product: p must be >= 1");
  if (dim_each < 1) throw std::invalid_argument("SpaceModel::product: empty factor");
  return {2 * dim_each, false, NormKind::product_p, p, dim_each, nullptr};
}

SpaceModel SpaceModel::l1_sum(int dim1, int dim2) {
  if (dim1 < 1 || dim2 < 1) throw std::invalid_argument("SpaceModel::l1_sum: empty factor");
  return {dim1 + dim2, false, NormKind::l1sum, 0, dim1, nullptr};
}

SpaceModel SpaceModel::gauge_ball(std::shared_ptr<const VPolytope> ball) {
  if (!ball) throw std::invalid_argument("SpaceModel::gauge_ball: null ball");
  SpaceModel m = ball->model;
  m.kind = NormKind::gauge;
  m.p = 0;
  m.split = 0;
  m.ball = std::move(ball);
  return m;
}

SeqVector unit_vector(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("unit_vector: index out of range");
  SeqVector v = SeqVector::zero(dim);
  v.coords[static_cast<size_t>(index)] = 1;
  return v;
}

SeqVector ones_vector(int dim) {
  SeqVector v{std::vector<Scalar>(static_cast<size_t>(dim), Scalar(1)), Scalar(1)};
  return v;
}

SeqVector add(const SeqVector& a, const SeqVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("SeqVector add: dimension mismatch");
  SeqVector r = a;
  for (int i = 0; i < r.dim(); ++i) r.coords[static_cast<size_t>(i)] += b.coords[static_cast<size_t>(i)];
  r.limit += b.limit;
  return r;
}

SeqVector sub(const SeqVector& a, const SeqVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("SeqVector sub: dimension mismatch");
  SeqVector r = a;
  for (int i = 0; i < r.dim(); ++i) r.coords[static_cast<size_t>(i)] -= b.coords[static_cast<size_t>(i)];
  r.limit -= b.limit;
  return r;
}

SeqVector scale(const Scalar& t, const SeqVector& a) {
  SeqVector r = a;
  for (auto& c : r.coords) c *= t;
  r.limit *= t;
  return r;
}

SeqVector embed(const SeqVector& a, int new_dim) {
  if (new_dim < a.dim()) throw std::invalid_argument("embed: cannot shrink");
  SeqVector r = a;
  r.coords.resize(static_cast<size_t>(new_dim), Scalar(0));
  return r;
}

bool equal(const SeqVector& a, const SeqVector& b) {
  return a.dim() == b.dim() && a.limit == b.limit && a.coords == b.coords;
}

bool lex_less(const SeqVector& a, const SeqVector& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (int i = 0; i < a.dim(); ++i) {
    const auto& x = a.coords[static_cast<size_t>(i)];
    const auto& y = b.coords[static_cast<size_t>(i)];
    if (x != y) return x < y;
  }
  return a.limit < b.limit;
}

Functional Functional::limit(int dim) {
  Functional f = Functional::zero(dim);
  f.limit_coeff = 1;
  return f;
}

Functional Functional::coordinate(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("Functional::coordinate: index out of range");
  Functional f = Functional::zero(dim);
  f.coeffs[static_cast<size_t>(index)] = 1;
  return f;
}

Functional scale(const Scalar& t, const Functional& f) {
  Functional r = f;
  for (auto& c : r.coeffs) c *= t;
  r.limit_coeff *= t;
  return r;
}

int max_support(const Functional& f) {
  for (int i = f.dim() - 1; i >= 0; --i)
    if (f.coeffs[static_cast<size_t>(i)] != 0) return i;
  return -1;
}

Scalar pair(const Functional& f, const SeqVector& x) {
  if (f.dim() != x.dim()) throw std::invalid_argument("pair: dimension mismatch");
  Scalar acc(0);
  for (int i = 0; i < f.dim(); ++i)
    acc += f.coeffs[static_cast<size_t>(i)] * x.coords[static_cast<size_t>(i)];
  acc += f.limit_coeff * x.limit;
  return acc;
}

namespace {

Scalar sup_of_range(const SeqVector& x, int lo, int hi) {
  Scalar m(0);
  for (int i = lo; i < hi; ++i) {
    Scalar a = abs(x.coords[static_cast<size_t>(i)]);
    if (a > m) m = a;
  }
  return m;
}

}  // namespace

NormValue vector_norm(const SpaceModel& model, const SeqVector& x) {
  if (x.dim() != model.dim) throw std::invalid_argument("vector_norm: dimension mismatch");
  if (!model.has_limit && x.limit != 0)
    throw std::invalid_argument("vector_norm: nonzero limit in a limit-free model");
  switch (model.kind) {
    case NormKind::sup: {
      Scalar m = sup_of_range(x, 0, model.dim);
      if (model.has_limit) {
        Scalar a = abs(x.limit);
        if (a > m) m = a;
      }
      return NormValue::exact(m);
    }
    case NormKind::l1sum: {
      return NormValue::exact(sup_of_range(x, 0, model.split) +
                              sup_of_range(x, model.split, model.dim));
    }
    case NormKind::product_p: {
      const Scalar a = sup_of_range(x, 0, model.split);
      const Scalar b = sup_of_range(x, model.split, model.dim);
      if (model.p == 1) return NormValue::exact(a + b);
      return NormValue{pow_int(a, model.p) + pow_int(b, model.p), model.p};
    }
    case NormKind::gauge:
      return NormValue::exact(gauge(*model.ball, x));
  }
  throw std::logic_error("vector_norm: unknown norm kind");
}

Scalar dual_norm(const SpaceModel& model, const Functional& f) {
  if (f.dim() != model.dim) throw std::invalid_argument("dual_norm: dimension mismatch");
  switch (model.kind) {
    case NormKind::sup: {
      Scalar acc(0);
      for (const auto& c : f.coeffs) acc += abs(c);
      acc += abs(f.limit_coeff);
      return acc;
    }
    case NormKind::gauge:
      return support(*model.ball, f);
    default:
      throw std::domain_error("dual_norm: unsupported for product/l1sum models");
  }
}

std::pair<SeqVector, SeqVector> bump_sequences(const SpaceModel& model,
                                               const SeqVector& x, int k) {
  if (!model.has_limit) throw std::invalid_argument("bump_sequences: limit model required");
  if (k < 0 || k >= model.dim) throw std::invalid_argument("bump_sequences: index out of range");
  const NormValue nx = vector_norm(model, x);
  if (!leq(nx, Scalar(1))) throw std::domain_error("bump_sequences: x outside the unit ball");
  const Scalar alpha = x.coords[static_cast<size_t>(k)];
  SeqVector up = x, down = x;
  up.coords[static_cast<size_t>(k)] = 1;    // x(k) + (1 - x(k))
  down.coords[static_cast<size_t>(k)] = -1; // x(k) - (1 + x(k))
  (void)alpha;
  return {up, down};
}

}  // namespace d2lab
