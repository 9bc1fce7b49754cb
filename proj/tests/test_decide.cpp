#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"

using namespace conreach;
using testing::box;
using testing::interval;
using testing::mat;
using testing::vec;

namespace {

bool mentions(const std::vector<std::string>& notes, const std::string& word) {
  for (const auto& n : notes)
    if (n.find(word) != std::string::npos) return true;
  return false;
}

// Witnesses of a negative verdict must stand on their own.
void check_witnesses(const Sigma& sys, const Polyhedron& y, const Decision& d) {
  if (d.verdict.status != Status::NotReachable) return;
  REQUIRE_FALSE(d.verdict.certificates.empty());
  for (const auto& c : d.verdict.certificates) {
    if (c.kind == "eigenpair" && c.eigen->exact()) {
      const MapTag tag = c.eigen->cone == ConeTag::Yplus ? MapTag::Fminus : MapTag::Fb;
      CHECK(eigen_membership(build_dual(sys, y, tag), *c.eigen->lambda_exact, c.eigen->q_exact));
    } else if (c.kind == "state-outside") {
      REQUIRE(d.sequences.size() >= 1);
      const Polyhedron& x = d.sequences.front().sets.back();
      const Polyhedron outside = d.sequences.size() > 1 ? d.sequences.back().sets.back()
                                                        : Polyhedron::from_subspace(tstar(sys));
      CHECK_FALSE(subset_eq(x, outside));
    } else if (c.kind == "uncontrollable-direction") {
      const RatVector q = *c.vector;
      CHECK_FALSE(q.isZero());
      CHECK((RatMatrix(q.transpose()) * sys.B).isZero());
    }
  }
}

}  // namespace

TEST_CASE("validation") {
  const auto ex = testing::ex1();
  CHECK(validation_issues(ex.sys, ex.y).empty());
  const Polyhedron flat = Polyhedron::from_hrep(mat({{0, 1}, {0, -1}}), vec({1, 1}), mat({{1, 0}}), vec({0}));
  CHECK(validation_issues(ex.sys, flat) == std::vector<std::string>{"constraint set has empty interior"});
  const Polyhedron shifted = Polyhedron::from_hrep(mat({{-1, 0}}), vec({-1}));
  CHECK(validation_issues(ex.sys, shifted) == std::vector<std::string>{"constraint set does not contain the origin"});
  const Sigma thin = make_sigma(mat({{1}}), mat({{0}}), mat({{1}, {1}}), mat({{0}, {0}}));
  CHECK(validation_issues(thin, box(2, 1)) == std::vector<std::string>{"[C D] is not surjective"});
  CHECK_THROWS_AS(validate(ex.sys, shifted), ValidationError);
  CHECK(validation_issues(ex.sys, interval(-1, 1)).size() == 1);
}

TEST_CASE("case classification") {
  const auto t1 = classify(testing::ex1().sys, testing::ex1().y);
  CHECK(t1.variant == CaseVariant::Case1Weak);
  CHECK(t1.interior.found);
  CHECK_FALSE(t1.sum_is_universe);
  CHECK(classify(testing::ex5().sys, testing::ex5().y).variant == CaseVariant::Case1Strong);
  CHECK(classify(testing::ex4().sys, testing::ex4().y).variant == CaseVariant::Case1Strong);
  CHECK(classify(testing::ex2().sys, testing::ex2().y).variant == CaseVariant::Case2);
  CHECK(classify(testing::ex3().sys, testing::ex3().y).variant == CaseVariant::Case2);
  const auto t3 = classify(testing::case3().sys, testing::case3().y);
  CHECK(t3.variant == CaseVariant::Case3);
  CHECK_FALSE(t3.meets_only_at_origin);
}

TEST_CASE("spectral conditions") {
  SUBCASE("expanding scalar system") {
    const auto c = check_conditions(testing::ex5().sys, testing::ex5().y);
    CHECK(c.all());
    CHECK_FALSE(c.numerical());
  }
  SUBCASE("EX1") {
    const auto c = check_conditions(testing::ex1().sys, testing::ex1().y);
    CHECK(c.a);
    CHECK(c.b.holds);
    CHECK_FALSE(c.c);
    CHECK(c.c_subspace.value.is_full());
    CHECK_FALSE(c.d.holds);
    REQUIRE(c.d.certificate.has_value());
    CHECK(*c.d.certificate->lambda_exact == 1);
    CHECK(c.d.certificate->q_exact == vec({1, 1}));
  }
  SUBCASE("pure delay") {
    const auto c = check_conditions(testing::ex4().sys, testing::ex4().y);
    CHECK_FALSE(c.c);
    CHECK(c.c_subspace.value.is_full());
  }
}

TEST_CASE("case 1 decisions") {
  SUBCASE("EX1") {
    const auto ex = testing::ex1();
    const auto d = decide_case1(ex.sys, ex.y, classify(ex.sys, ex.y));
    CHECK(d.verdict.status == Status::Reachable);
    CHECK(d.verdict.route == Route::DirectIteration);
    REQUIRE(d.sequences.size() == 2);
    CHECK(d.sequences[0].stabilized_at == 2);
    CHECK(d.sequences[0].sets.back() == box(2, 1));
    CHECK(d.sequences[1].stabilized_at == 4);
    CHECK(d.sequences[1].sets.back() == box(2, 2));
  }
  SUBCASE("expanding scalar system") {
    const auto ex = testing::ex5();
    const auto d = decide_case1(ex.sys, ex.y, classify(ex.sys, ex.y));
    CHECK(d.verdict.status == Status::Reachable);
    CHECK(d.verdict.route == Route::Spectral);
  }
  SUBCASE("pure delay") {
    const auto ex = testing::ex4();
    const auto d = decide_case1(ex.sys, ex.y, classify(ex.sys, ex.y));
    CHECK(d.verdict.status == Status::NotReachable);
    REQUIRE(d.verdict.certificates.size() == 1);
    CHECK(d.verdict.certificates[0].condition == "c");
    check_witnesses(ex.sys, ex.y, d);
    const auto direct = direct_route(ex.sys, ex.y);
    CHECK(direct.verdict.status == Status::NotReachable);
    check_witnesses(ex.sys, ex.y, direct);
  }
  CHECK_THROWS_AS(decide_case1(testing::ex2().sys, testing::ex2().y, classify(testing::ex2().sys, testing::ex2().y)),
                  std::invalid_argument);
}

TEST_CASE("case 2 decisions") {
  SUBCASE("integrator") {
    const auto d = decide_case2(testing::ex2().sys, testing::ex2().y);
    CHECK(d.verdict.status == Status::NotReachable);
    CHECK(d.sequences[0].stabilized_at == 1);
    check_witnesses(testing::ex2().sys, testing::ex2().y, d);
  }
  SUBCASE("expanding autonomous system") {
    const auto d = decide_case2(testing::ex3().sys, testing::ex3().y, 10);
    CHECK(d.verdict.status == Status::Inconclusive);
    CHECK(mentions(d.verdict.notes, "contraction"));
    CHECK(d.sequences[0].sets.size() == 10);
  }
  SUBCASE("unobservable but unreachable direction") {
    const Sigma sys = make_sigma(RatMatrix::Identity(2, 2), RatMatrix::Zero(2, 1), mat({{1, 0}}), mat({{0}}));
    const auto d = decide_case2(sys, interval(-1, 1));
    CHECK(d.verdict.status == Status::NotReachable);
    CHECK(d.verdict.certificates[0].kind == "subspace-gap");
    CHECK(d.verdict.steps_used == 0);
  }
}

TEST_CASE("full analysis") {
  const auto r1 = analyze(testing::ex1().sys, testing::ex1().y);
  CHECK(r1.case_tag.variant == CaseVariant::Case1Weak);
  CHECK(r1.verdict.status == Status::Reachable);
  CHECK(r1.subspaces.tstar.is_zero());
  CHECK(r1.subspaces.ksub == Subspace::span(mat({{1}, {0}})));
  const auto r2 = analyze(testing::ex2().sys, testing::ex2().y);
  CHECK(r2.case_tag.variant == CaseVariant::Case2);
  CHECK(r2.verdict.status == Status::NotReachable);
  CHECK_FALSE(r2.conditions.has_value());
  const auto r3 = analyze(testing::case3().sys, testing::case3().y);
  CHECK(r3.case_tag.variant == CaseVariant::Case3);
  CHECK(r3.verdict.status == Status::Inconclusive);
  CHECK(mentions(r3.verdict.notes, "case 3"));
  CHECK_THROWS_AS(analyze(testing::ex1().sys, interval(-1, 1)), ValidationError);
  CHECK_THROWS_AS(analyze(testing::ex1().sys, testing::ex1().y, 0), std::invalid_argument);
}

TEST_CASE("oracle comparison on the reference systems") {
  const auto c5 = oracle_compare(testing::ex5().sys, testing::ex5().y, 8);
  CHECK(c5.spectral == Status::Reachable);
  CHECK(c5.direct == Status::Inconclusive);
  CHECK(c5.consistent());
  const auto c1 = oracle_compare(testing::ex1().sys, testing::ex1().y);
  CHECK(c1.spectral == Status::Inconclusive);
  CHECK(c1.direct == Status::Reachable);
  CHECK(c1.consistent());
  const auto c4 = oracle_compare(testing::ex4().sys, testing::ex4().y);
  CHECK(c4.spectral == Status::NotReachable);
  CHECK(c4.direct == Status::NotReachable);
  CHECK(c4.consistent());
  CHECK_THROWS_AS(oracle_compare(testing::ex2().sys, testing::ex2().y), std::invalid_argument);
}

TEST_CASE("strong case properties on random systems") {
  testing::Rng rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ex = testing::random_strong(rng, 3);
    const Index n = ex.sys.n();
    INFO("trial " << trial);
    const auto f = build_primal(ex.sys, ex.y, MapTag::F);
    const auto x = reach_feas(f, static_cast<int>(n) + 1, SequenceKind::Feasible);
    CHECK(x[static_cast<std::size_t>(n)] == x[static_cast<std::size_t>(n - 1)]);
    // conv(X(F) u T*) = Q^n through its polar.
    const Polyhedron vdual = Polyhedron::from_subspace(vstar(dual(ex.sys)));
    CHECK(intersect(polar(x.back()), vdual).is_origin());
    const Polyhedron dom = structure_queries(f).domain;
    CHECK(is_solid(minkowski_sum(Polyhedron::from_subspace(tstar(ex.sys)), dom)));
    const auto cmp = oracle_compare(ex.sys, ex.y, 12, 2);
    CHECK(cmp.verdicts_agree);
    const auto d = decide_case1(ex.sys, ex.y, classify(ex.sys, ex.y), 12);
    check_witnesses(ex.sys, ex.y, d);
  }
}

TEST_CASE("case 2 properties on random systems") {
  testing::Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const auto ex = testing::random_case2(rng, 3);
    INFO("trial " << trial);
    REQUIRE(classify(ex.sys, ex.y).variant == CaseVariant::Case2);
    const Polyhedron t = Polyhedron::from_subspace(tstar(ex.sys));
    const auto r = reach_feas(build_primal(ex.sys, ex.y, MapTag::F), 8, SequenceKind::Reach);
    for (const auto& p : r) CHECK(subset_eq(p, t));
    CHECK(r[static_cast<std::size_t>(ex.sys.n() - 1)] == t);
    check_witnesses(ex.sys, ex.y, decide_case2(ex.sys, ex.y, 8));
  }
}

TEST_CASE("finite-step duality needs the polar of the product") {
  // Y = (-inf, 2]: X_2(F) = {x1 <= 1, x2 <= 1/2} has a triangular polar,
  // while stepping the polar map twice fills the box [0,1] x [0,2].
  const Sigma sys = make_sigma(mat({{0, 2}, {-1, 2}}), mat({{0}, {1}}), mat({{2, 0}}), mat({{0}}));
  const Polyhedron y = Polyhedron::from_hrep(mat({{1}}), vec({2}));
  REQUIRE(classify(sys, y).variant == CaseVariant::Case1Strong);
  const auto x = reach_feas(build_primal(sys, y, MapTag::F), 2, SequenceKind::Feasible);
  const auto r = reach_feas(build_dual(sys, y, MapTag::Fpolar), 2, SequenceKind::Reach);
  CHECK(polar(x[0]) == negate(r[0]));
  CHECK(x[1] == Polyhedron::from_hrep(mat({{1, 0}, {0, 2}}), vec({1, 1})));
  CHECK(negate(r[1]) == Polyhedron::box(vec({0, 0}), vec({1, 2})));
  CHECK(polar(x[1]) != negate(r[1]));
  const auto rm = recursive_matrices(sys, 2);
  const Polyhedron ker = Polyhedron::from_subspace(kernel(RatMatrix(rm.theta.transpose())));
  CHECK(polar(x[1]) == image(rm.gamma.transpose(), intersect(ker, polar(power(y, 2)))));
  const auto cmp = oracle_compare(sys, y, 6, 2);
  CHECK(cmp.verdicts_agree);
  CHECK_FALSE(cmp.duality_holds);
}
