#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "d2lab/experiments.hpp"
#include "oracles.hpp"

using namespace d2lab;

namespace {

Functional product_functional(int d_each, std::vector<std::pair<int, Scalar>> factor1,
                              std::vector<std::pair<int, Scalar>> factor2) {
  Functional f = Functional::zero(2 * d_each);
  for (const auto& [i, c] : factor1) f.coeffs[static_cast<size_t>(i)] = c;
  for (const auto& [i, c] : factor2) f.coeffs[static_cast<size_t>(d_each + i)] = c;
  return f;
}

VPolytope diamond2() {
  return prune(make_polytope(SpaceModel::c0(2),
                             {unit_vector(2, 0), unit_vector(2, 1),
                              scale(Scalar(-1), unit_vector(2, 0)),
                              scale(Scalar(-1), unit_vector(2, 1))}));
}

}  // namespace

TEST_CASE("slices of simple bodies") {
  SUBCASE("square cut half a unit below the top") {
    const VPolytope sq = box_ball_c0(2, Scalar(1));
    const VPolytope S = slice_of(sq, Functional::coordinate(2, 0), frac(1, 2));
    REQUIRE(S.vertices.size() == 4);
    for (const auto& v : S.vertices) CHECK(v.coords[0] >= frac(1, 2));
  }
  SUBCASE("a thin slice of the diamond isolates one vertex") {
    const VPolytope d = diamond2();
    Functional f = Functional::zero(2);
    f.coeffs[0] = frac(2, 3);
    f.coeffs[1] = frac(1, 3);
    const VPolytope S = slice_of(d, f, frac(1, 8));
    CHECK(S.vertices.size() == 3);
    bool has_peak = false;
    for (const auto& v : S.vertices)
      if (equal(v, unit_vector(2, 0))) has_peak = true;
    CHECK(has_peak);
  }
  SUBCASE("alpha range is enforced") {
    const VPolytope sq = box_ball_c0(2, Scalar(1));
    CHECK_THROWS_AS(slice_of(sq, Functional::coordinate(2, 0), Scalar(3)), std::domain_error);
    CHECK_THROWS_AS(slice_of(sq, Functional::coordinate(2, 0), Scalar(0)), std::domain_error);
  }
}

TEST_CASE("product combo lower-bound certificates") {
  SUBCASE("single slice at p = 1 reaches the exact diameter") {
    std::vector<SliceSpec> specs = {
        {product_functional(2, {{0, Scalar(1)}}, {}), frac(1, 2), Scalar(1)}};
    const Certificate cert = product_combo_certificate(1, 2, specs, frac(1, 100));
    CHECK(cert.pass);
    CHECK(recheck(cert));
    CHECK(scalar_from_json(cert.metrics.at("bound_radicand")) == Scalar(2));
    const ExactComboResult exact = product_combo_exact_p1(specs, 2);
    CHECK(exact.diameter == Scalar(2));
    // the certificate bound never exceeds the exact diameter (p = 1 radicands
    // are the plain values)
    CHECK(scalar_from_json(cert.metrics.at("bound_radicand")) <= exact.diameter);
  }
  SUBCASE("two slices at p = 2") {
    std::vector<SliceSpec> specs = {
        {product_functional(3, {{0, Scalar(1)}, {1, frac(1, 2)}}, {}), frac(1, 4), frac(1, 2)},
        {product_functional(3, {}, {{0, Scalar(1)}}), frac(1, 3), frac(1, 2)}};
    const Certificate cert = product_combo_certificate(2, 3, specs, frac(1, 100));
    CHECK(cert.pass);
    CHECK(recheck(cert));
    // bound radicand >= 99/100 means the bound is at least (99/100)^(1/2)
    CHECK(scalar_from_json(cert.metrics.at("bound_radicand")) >= frac(99, 100));
  }
  SUBCASE("balanced split hits the even-weights case exactly") {
    // one slice pulls factor 1, the other factor 2, with equal weights: the
    // certified difference is 2(e_k/2 | e_k/2) whose 1-norm is exactly 2
    std::vector<SliceSpec> specs = {
        {product_functional(2, {{0, Scalar(1)}}, {}), frac(1, 4), frac(1, 2)},
        {product_functional(2, {}, {{0, Scalar(1)}}), frac(1, 4), frac(1, 2)}};
    const Certificate cert = product_combo_certificate(1, 2, specs, frac(1, 100));
    CHECK(cert.pass);
    CHECK(scalar_from_json(cert.metrics.at("u")) == frac(1, 2));
    CHECK(scalar_from_json(cert.metrics.at("v")) == frac(1, 2));
    CHECK(scalar_from_json(cert.metrics.at("bound_radicand")) == Scalar(2));
  }
  SUBCASE("p = 3 certificates pass with exact cube comparisons") {
    std::vector<SliceSpec> specs = {
        {product_functional(3, {{0, frac(1, 2)}, {1, frac(1, 3)}}, {{0, frac(1, 5)}}),
         frac(1, 6), frac(2, 3)},
        {product_functional(3, {}, {{1, Scalar(1)}}), frac(1, 4), frac(1, 3)}};
    const Certificate cert = product_combo_certificate(3, 3, specs, frac(1, 100));
    CHECK(cert.pass);
    CHECK(recheck(cert));
    CHECK(scalar_from_json(cert.metrics.at("bound_radicand")) >= frac(99, 100));
  }
  SUBCASE("no functional-free coordinate raises a truncation error") {
    std::vector<SliceSpec> specs = {
        {product_functional(1, {{0, Scalar(1)}}, {{0, Scalar(1)}}), frac(1, 4), Scalar(1)}};
    CHECK_THROWS_AS(product_combo_certificate(2, 1, specs, frac(1, 100)), TruncationError);
  }
  SUBCASE("tampered certificates fail recheck") {
    std::vector<SliceSpec> specs = {
        {product_functional(2, {{0, Scalar(1)}}, {}), frac(1, 2), Scalar(1)}};
    Certificate cert = product_combo_certificate(1, 2, specs, frac(1, 100));
    REQUIRE(recheck(cert));
    // claim a larger lower bound than the witnesses support
    for (auto& claim : cert.claims)
      if (claim.at("type") == "product_norm_pth_ge") claim["rhs_radicand"] = "5/2";
    CHECK(!recheck(cert));
  }
}

TEST_CASE("exact p = 1 combos") {
  SUBCASE("opposing slices still meet the unit bound") {
    std::vector<SliceSpec> specs = {
        {product_functional(2, {{0, Scalar(1)}}, {}), frac(1, 4), frac(1, 2)},
        {product_functional(2, {{0, Scalar(-1)}}, {}), frac(1, 4), frac(1, 2)}};
    const ExactComboResult r = product_combo_exact_p1(specs, 2);
    CHECK(r.diameter >= Scalar(1));
    const Scalar d = vector_norm(SpaceModel::product(2, 1), sub(r.witness_a, r.witness_b)).scalar();
    CHECK(d == r.diameter);
  }
  SUBCASE("slices close to the whole ball have diameter two") {
    std::vector<SliceSpec> specs = {
        {product_functional(2, {{0, Scalar(1)}}, {}), frac(99, 100), Scalar(1)}};
    const ExactComboResult r = product_combo_exact_p1(specs, 2);
    CHECK(r.diameter == Scalar(2));
  }
}

TEST_CASE("open neighborhoods of the stage hull") {
  const StageLedger ledger = build_stages(3, 3, 4);
  SUBCASE("first net point with one functional") {
    const Functional f = Functional::coordinate(5, 0);
    const Certificate cert = stage_open_witness(ledger, 0, {f}, frac(1, 4));
    CHECK(cert.pass);
    CHECK(recheck(cert));
    CHECK(equal(vector_from_json(cert.metrics.at("witness_a")), unit_vector(5, 0)));
    CHECK(equal(vector_from_json(cert.metrics.at("witness_b")),
                add(unit_vector(5, 0), unit_vector(5, 2))));
  }
  SUBCASE("no functionals means the whole hull qualifies") {
    const Certificate cert = stage_open_witness(ledger, 1, {}, frac(1, 8));
    CHECK(cert.pass);
  }
  SUBCASE("two functionals around the interior net point") {
    std::vector<Functional> funcs = {Functional::coordinate(5, 0), Functional::coordinate(5, 1)};
    const Certificate cert = stage_open_witness(ledger, 2, funcs, frac(1, 4));
    CHECK(cert.pass);
    const SeqVector a = vector_from_json(cert.metrics.at("witness_a"));
    const SeqVector b = vector_from_json(cert.metrics.at("witness_b"));
    CHECK(vector_norm(SpaceModel::c0(5), sub(a, b)).scalar() == Scalar(1));
  }
  SUBCASE("high functional support is rejected") {
    const Functional f = Functional::coordinate(5, 3);
    CHECK_THROWS_AS(stage_open_witness(ledger, 0, {f}, frac(1, 4)), std::domain_error);
  }
}

TEST_CASE("stage combo measurements shrink with alpha") {
  const StageLedger ledger3 = build_stages(3, 3, 4);
  SUBCASE("stage two at alpha 1/8 measures exactly 1/4") {
    const Certificate cert = stage_combo_search(ledger3, 2, frac(1, 8));
    CHECK(cert.pass);
    CHECK(recheck(cert));
    CHECK(scalar_from_json(cert.metrics.at("measured_diameter")) == frac(1, 4));
  }
  SUBCASE("halving alpha halves the measurement") {
    const Certificate a = stage_combo_search(ledger3, 2, frac(1, 8));
    const Certificate b = stage_combo_search(ledger3, 2, frac(1, 16));
    CHECK(scalar_from_json(b.metrics.at("measured_diameter")) ==
          scalar_from_json(a.metrics.at("measured_diameter")) / 2);
  }
  SUBCASE("degenerate single-slice stage") {
    const Certificate cert = stage_combo_search(ledger3, 1, frac(1, 8));
    CHECK(cert.pass);
    CHECK(scalar_from_json(cert.metrics.at("measured_diameter")) == Scalar(1));
  }
  SUBCASE("stage three of the four-stage ledger stays small") {
    const StageLedger ledger4 = build_stages(4, 3, 4);
    const Certificate stage3 = stage_combo_search(ledger4, 3, frac(1, 8));
    const Certificate stage2 = stage_combo_search(ledger3, 2, frac(1, 8));
    CHECK(scalar_from_json(stage3.metrics.at("measured_diameter")) <=
          scalar_from_json(stage2.metrics.at("measured_diameter")));
  }
}

TEST_CASE("renormed-ball window combination, two-stage smoke") {
  const StageLedger ledger = build_stages(2, 3, 4);
  const Scalar eps = frac(1, 4), gamma = frac(1, 8);
  const VPolytope ball = build_renormed_ball(ledger, eps);

  Functional f = Functional::zero(2);
  f.coeffs[0] = frac(1, 2);
  f.coeffs[1] = frac(1, 2);
  RenormParams params =
      solve_renorm_params(SpaceModel::c(2), eps, gamma, {f}, {Scalar(1)});

  const Certificate cert = ball_combo_certificate(ledger, ball, params, 1);
  CHECK(cert.pass);
  CHECK(recheck(cert));
  CHECK(scalar_from_json(cert.metrics.at("window_combo_diameter")) <= gamma);
  CHECK(scalar_from_json(cert.metrics.at("base_diameter")) < (1 - eps) * gamma / 4);

  SUBCASE("parameter guard is enforced") {
    RenormParams bad = params;
    bad.rho = eps;  // violates 2*rho < eps
    CHECK_THROWS_AS(ball_combo_certificate(ledger, ball, bad, 1), std::domain_error);
  }
}

TEST_CASE("renormed-ball open witnesses") {
  const StageLedger ledger = build_stages(2, 3, 4);
  const Scalar eps = frac(1, 4);
  const VPolytope ball = build_renormed_ball(ledger, eps);

  SUBCASE("pure hull point with one low functional") {
    BallOpenInputs in;
    in.bump_index = 0;
    in.lambda = Scalar(1);
    in.x0 = SeqVector::zero(2);
    in.y0 = SeqVector::zero(2);
    in.funcs = {Functional::coordinate(2, 0)};
    in.radius = frac(1, 2);
    const Certificate cert = ball_open_witness(ledger, ball, eps, in);
    CHECK(cert.pass);
    CHECK(recheck(cert));
    CHECK(scalar_from_json(cert.metrics.at("gauge_distance")) == Scalar(2));
  }
  SUBCASE("balanced mix cancels into a doubled basis vector") {
    BallOpenInputs in;
    in.bump_index = 0;
    in.lambda = frac(1, 2);
    in.x0 = SeqVector::zero(2);
    in.y0 = SeqVector::zero(2);
    in.funcs = {};
    in.radius = frac(1, 8);
    const Certificate cert = ball_open_witness(ledger, ball, eps, in);
    CHECK(cert.pass);
    const SeqVector x = vector_from_json(cert.metrics.at("witness_x"));
    const SeqVector y = vector_from_json(cert.metrics.at("witness_y"));
    CHECK(equal(sub(x, y), scale(Scalar(2), unit_vector(2, 1))));
  }
  SUBCASE("input validation") {
    BallOpenInputs in;
    in.bump_index = 0;
    in.lambda = frac(1, 2);
    in.x0 = SeqVector::zero(2);
    in.y0 = SeqVector::zero(2);
    in.radius = frac(1, 8);
    in.funcs = {Functional::coordinate(2, 1)};  // support reaches the fresh block
    CHECK_THROWS_AS(ball_open_witness(ledger, ball, eps, in), std::domain_error);
    in.funcs = {};
    in.y0 = unit_vector(2, 1);  // y0 support in the fresh block
    CHECK_THROWS_AS(ball_open_witness(ledger, ball, eps, in), std::domain_error);
  }
}

TEST_CASE("hull split equality") {
  const auto m2 = SpaceModel::c0(2);
  SUBCASE("singleton against the origin") {
    auto A = make_polytope(m2, {unit_vector(2, 0)});
    A.canonical = true;
    auto B = make_polytope(m2, {SeqVector::zero(2)});
    B.canonical = true;
    const Certificate cert = hull_split_check(A, B);
    CHECK(cert.pass);
    CHECK(recheck(cert));
  }
  SUBCASE("stage segment against the unit box") {
    auto A = make_polytope(m2, {unit_vector(2, 0), add(unit_vector(2, 0), unit_vector(2, 1))});
    A.canonical = true;
    const Certificate cert = hull_split_check(A, box_ball_c0(2, Scalar(1)));
    CHECK(cert.pass);
  }
  SUBCASE("hypothesis violations are rejected with the offending pair") {
    auto A = make_polytope(m2, {unit_vector(2, 0), scale(Scalar(3), unit_vector(2, 0))});
    A.canonical = true;
    CHECK_THROWS_AS(hull_split_check(A, box_ball_c0(2, frac(1, 2))), std::domain_error);
  }
  SUBCASE("randomized hypothesis-satisfying instances") {
    oracles::Rng rng(1312);
    for (int t = 0; t < 15; ++t) {
      const int dim = static_cast<int>(rng.next_int(2, 4));
      std::vector<SeqVector> a_verts;
      const int na = static_cast<int>(rng.next_int(1, 4));
      for (int i = 0; i < na; ++i) {
        SeqVector v = SeqVector::zero(dim);
        for (int j = 0; j < dim; ++j) v.coords[static_cast<size_t>(j)] = rng.next_scalar(2, 2);
        a_verts.push_back(std::move(v));
      }
      const VPolytope A = prune(make_polytope(SpaceModel::c0(dim), a_verts));
      std::vector<SeqVector> b_verts;
      const int nb = static_cast<int>(rng.next_int(1, 4));
      for (int i = 0; i < nb; ++i) {
        SeqVector v = SeqVector::zero(dim);
        for (int j = 0; j < dim; ++j) v.coords[static_cast<size_t>(j)] = rng.next_scalar(2, 2);
        b_verts.push_back(std::move(v));
      }
      for (const auto& u : A.vertices)
        for (const auto& w : A.vertices) b_verts.push_back(scale(frac(1, 2), sub(u, w)));
      const VPolytope B = prune(make_polytope(SpaceModel::c0(dim), b_verts));
      const Certificate cert = hull_split_check(A, B);
      CHECK(cert.pass);
    }
  }
}

TEST_CASE("slices of 1-sums stay close to the first factor") {
  SUBCASE("two segments") {
    const VPolytope seg = box_ball_c0(1, Scalar(1));
    const Certificate cert =
        l1sum_inclusion_check(seg, seg, Functional::coordinate(1, 0), frac(1, 2), frac(1, 4));
    CHECK(cert.pass);
    CHECK(recheck(cert));
  }
  SUBCASE("mu below alpha is required") {
    const VPolytope seg = box_ball_c0(1, Scalar(1));
    CHECK_THROWS_AS(
        l1sum_inclusion_check(seg, seg, Functional::coordinate(1, 0), frac(1, 4), frac(1, 4)),
        std::domain_error);
  }
  SUBCASE("diamond and square factors") {
    const VPolytope d = diamond2();
    Functional f = Functional::zero(2);
    f.coeffs[0] = frac(1, 2);
    f.coeffs[1] = frac(1, 2);
    // support of f over the diamond is 1/2; normalize to 1
    const Functional fn = scale(Scalar(1) / support(d, f), f);
    const Certificate cert =
        l1sum_inclusion_check(d, box_ball_c0(2, Scalar(1)), fn, frac(1, 3), frac(1, 6));
    CHECK(cert.pass);
    CHECK(cert.metrics.at("slice_vertices").get<int>() > 0);
  }
}

TEST_CASE("certificates survive a JSON round trip") {
  std::vector<SliceSpec> specs = {
      {product_functional(2, {{0, Scalar(1)}}, {}), frac(1, 2), Scalar(1)}};
  const Certificate cert = product_combo_certificate(1, 2, specs, frac(1, 100));
  const Json j = cert.to_json();
  const Certificate back = Certificate::from_json(j);
  CHECK(back.pass == cert.pass);
  CHECK(back.kind == cert.kind);
  CHECK(recheck(back));
  CHECK(j.dump() == back.to_json().dump());
}
