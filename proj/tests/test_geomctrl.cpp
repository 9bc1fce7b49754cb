#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"

using namespace conreach;
using testing::mat;
using testing::vec;

namespace {

Subspace span_of(const RatMatrix& m) { return Subspace::span(m); }

}  // namespace

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(make_sigma(mat({{1, 0}, {0, 1}}), mat({{1}, {0}, {0}}), mat({{1, 0}}), mat({{0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_sigma(mat({{1, 0}}), mat({{1}}), mat({{1, 0}}), mat({{0}})), std::invalid_argument);
  CHECK_NOTHROW(make_sigma(mat({{1}}), mat({{1}}), mat({{1}}), mat({{1}})));
}

TEST_CASE("weakly unobservable subspace") {
  CHECK(vstar(testing::ex1().sys).is_zero());
  CHECK(vstar(testing::ex2().sys).is_zero());
  const Sigma free = make_sigma(mat({{1, 2}, {0, 1}}), mat({{1}, {1}}), RatMatrix::Zero(1, 2), RatMatrix::Zero(1, 1));
  CHECK(vstar(free).is_full());
  const auto it = vstar_iteration(testing::ex1().sys);
  CHECK(it.steps == 2);
  CHECK(it.sequence[1] == span_of(mat({{1}, {0}})));
}

TEST_CASE("strongly reachable subspace") {
  CHECK(tstar(testing::ex1().sys).is_zero());
  CHECK(tstar(testing::ex2().sys).is_zero());
  const Sigma free = make_sigma(mat({{1, 2}, {0, 1}}), RatMatrix::Identity(2, 2), RatMatrix::Zero(1, 2),
                                RatMatrix::Zero(1, 2));
  CHECK(tstar(free).is_full());
  CHECK(tstar(testing::ex5().sys).is_zero());
  CHECK(tstar_closed_form(testing::ex1().sys).is_zero());
}

TEST_CASE("K and L subspaces") {
  const auto r1 = kl_subspaces(testing::ex1().sys);
  CHECK(r1.ksub == span_of(mat({{1}, {0}})));
  CHECK_FALSE(r1.right_invertible);
  CHECK(r1.duality_holds);
  CHECK(r1.rstar.is_zero());
  CHECK(kl_subspaces(testing::ex2().sys).ksub.is_zero());
  const auto r5 = kl_subspaces(testing::ex5().sys);
  CHECK(r5.ksub.is_full());
  CHECK(r5.right_invertible);
  CHECK(r5.left_invertible);
}

TEST_CASE("dual and restricted systems") {
  const Sigma s = testing::ex1().sys;
  const Sigma d = dual(s);
  CHECK(d.A == s.A);
  CHECK(d.B == s.C.transpose());
  CHECK(d.C == s.B.transpose());
  CHECK(d.D == s.D.transpose());
  CHECK(d.m() == 2);
  CHECK(d.s() == 1);

  const Sigma full = restrict_inputs(s, Subspace::full(1));
  CHECK(column_span(full.B) == column_span(s.B));
  const Sigma none = restrict_inputs(s, Subspace::zero(1));
  CHECK(none.m() == 0);
  CHECK(vstar(none).is_zero());
  CHECK_THROWS_AS(restrict_inputs(s, Subspace::full(2)), std::invalid_argument);
}

TEST_CASE("bounded output-nulling subspace") {
  SUBCASE("dual of EX1") {
    const auto g = vstar_g(dual(testing::ex1().sys), Subspace::full(2));
    CHECK(g.exact);
    CHECK(g.value.is_full());
  }
  SUBCASE("dual of the expanding scalar system") {
    const auto g = vstar_g(dual(testing::ex5().sys), Subspace::full(1));
    CHECK(g.value.is_zero());
  }
  SUBCASE("dual of the pure delay") {
    CHECK(vstar_g(dual(testing::ex4().sys), Subspace::full(1)).value.is_full());
  }
  SUBCASE("trivial V*") { CHECK(vstar_g(testing::ex1().sys, Subspace::full(1)).value.is_zero()); }
  SUBCASE("unit circle needs semisimplicity") {
    // Output-free rotation (bounded) versus a Jordan block at 1 (unbounded).
    const Sigma rot = make_sigma(mat({{0, -1}, {1, 0}}), RatMatrix::Zero(2, 0), RatMatrix::Zero(0, 2),
                                 RatMatrix::Zero(0, 0));
    CHECK(vstar_g(rot, Subspace::zero(0)).value.is_full());
    const Sigma shear = make_sigma(mat({{1, 1}, {0, 1}}), RatMatrix::Zero(2, 0), RatMatrix::Zero(0, 2),
                                   RatMatrix::Zero(0, 0));
    CHECK(vstar_g(shear, Subspace::zero(0)).value == span_of(mat({{1}, {0}})));
  }
  SUBCASE("irrational split") {
    // x^2 - 3x + 1 has one root inside and one outside the unit disc.
    const Sigma s = make_sigma(mat({{0, -1}, {1, 3}}), RatMatrix::Zero(2, 0), RatMatrix::Zero(0, 2),
                               RatMatrix::Zero(0, 0));
    const auto g = vstar_g(s, Subspace::zero(0));
    CHECK_FALSE(g.exact);
    CHECK_FALSE(g.value.is_zero());
  }
  SUBCASE("rational quadratic factors are separated") {
    // Block diagonal: rotation by 90 degrees and scaling by 3 on a 2-cycle.
    const RatMatrix a = mat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 9}, {0, 0, 1, 0}});
    const Sigma s = make_sigma(a, RatMatrix::Zero(4, 0), RatMatrix::Zero(0, 4), RatMatrix::Zero(0, 0));
    const auto g = vstar_g(s, Subspace::zero(0));
    CHECK(g.exact);
    CHECK(g.value == span_of(mat({{1, 0}, {0, 1}, {0, 0}, {0, 0}})));
  }
}

TEST_CASE("recursive matrices") {
  const Sigma s1 = testing::ex1().sys;
  const auto r1 = recursive_matrices(s1, 1);
  CHECK(r1.gamma == s1.C);
  CHECK(r1.lambda == s1.B);
  CHECK(r1.theta == s1.D);
  CHECK(recursive_matrices(s1, 2).gamma == mat({{0, 0}, {1, 0}, {0, 0}, {0, 1}}));
  CHECK(recursive_matrices(testing::ex5().sys, 2).lambda == mat({{2, 1}}));
  CHECK(recursive_matrices(testing::ex5().sys, 2).theta == mat({{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(recursive_matrices(s1, 0), std::invalid_argument);
}

TEST_CASE("Kalman controllability") {
  CHECK(kalman_controllable(testing::ex1().sys));
  CHECK_FALSE(kalman_controllable(testing::ex2().sys));
  CHECK(kalman_controllable(testing::ex5().sys));
  CHECK(uncontrollable_direction(testing::ex2().sys) == vec({1}));
  CHECK_FALSE(uncontrollable_direction(testing::ex1().sys).has_value());
}

TEST_CASE("subspace algorithms on random systems") {
  testing::Rng rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const Index n = rng.uniform(1, 4), m = rng.uniform(0, 2), s = rng.uniform(0, 2);
    const Sigma sys = testing::random_sigma(rng, n, m, s);
    const auto rep = kl_subspaces(sys);
    INFO("trial " << trial);
    CHECK(rep.tstar == tstar_closed_form(sys));
    CHECK(rep.duality_holds);
    CHECK(rep.vstar_steps <= n);
    CHECK(rep.tstar_steps <= n);
    CHECK(rep.vstar.contains(rep.rstar));
    CHECK(rep.tstar.contains(rep.rstar));
    const auto seq = vstar_iteration(sys).sequence;
    for (std::size_t j = 1; j < seq.size(); ++j) CHECK(seq[j - 1].contains(seq[j]));
    const Subspace u = Subspace::span(rng.matrix(m, rng.uniform(0, m)));
    CHECK(vstar(restrict_inputs(sys, u)).contains(vstar_g(sys, u).value));
  }
}
