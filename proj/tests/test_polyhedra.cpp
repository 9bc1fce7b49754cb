#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyhedra_properties.hpp"
#include "support.hpp"

using namespace conreach;
using testing::box;
using testing::interval;
using testing::mat;
using testing::vec;

namespace {

Polyhedron cone_of(const RatMatrix& rays) {
  return Polyhedron::from_vrep(RatMatrix(RatVector::Zero(rays.rows())), rays, RatMatrix(rays.rows(), 0));
}

// {(x, y) : |x| <= 1, y >= 2|x|}
Polyhedron cusp_graph() { return Polyhedron::from_hrep(mat({{1, 0}, {-1, 0}, {2, -1}, {-2, -1}}), vec({1, 1, 0, 0})); }

}  // namespace

TEST_CASE("double description conversion") {
  SUBCASE("square") {
    const Polyhedron b = box(2, 1);
    CHECK(b.vertices() == mat({{-1, -1, 1, 1}, {-1, 1, -1, 1}}));
    CHECK(b.rays().cols() == 0);
    CHECK(b.lineality().cols() == 0);
    CHECK(b.ineq_matrix().rows() == 4);
  }
  SUBCASE("half line") {
    const Polyhedron p = Polyhedron::from_hrep(mat({{-1}}), vec({0}));
    CHECK(p.vertices() == mat({{0}}));
    CHECK(p.rays() == mat({{1}}));
  }
  SUBCASE("origin") {
    const Polyhedron p = Polyhedron::origin(2);
    CHECK(p.vertices() == mat({{0}, {0}}));
    CHECK(p.eq_matrix().rows() == 2);
  }
  SUBCASE("redundant constraints are dropped") {
    const Polyhedron p = Polyhedron::from_hrep(mat({{1}, {2}, {-1}, {1}}), vec({1, 5, 0, 3}));
    CHECK(p == interval(0, 1));
    CHECK(p.ineq_matrix().rows() == 2);
  }
  SUBCASE("line") {
    const Polyhedron p = Polyhedron::from_hrep(mat({{1, -1}, {-1, 1}}), vec({0, 0}));
    CHECK(p.lineality().cols() == 1);
    CHECK(p.eq_matrix().rows() == 1);
    CHECK(p.ineq_matrix().rows() == 0);
  }
  SUBCASE("empty") {
    const Polyhedron p = Polyhedron::from_hrep(mat({{1}, {-1}}), vec({-1, 0}));
    CHECK(p.is_empty());
    CHECK(p == Polyhedron::empty(1));
    CHECK(p != Polyhedron::empty(2));
    CHECK_FALSE(p.contains(vec({0})));
  }
}

TEST_CASE("polar sets") {
  const Polyhedron cross =
      Polyhedron::from_vrep(mat({{1, -1, 0, 0}, {0, 0, 1, -1}}), RatMatrix(2, 0), RatMatrix(2, 0));
  CHECK(polar(box(2, 1)) == cross);
  CHECK(polar(cross) == box(2, 1));
  CHECK(neg_polar_cone(box(2, 1)).is_origin());
  CHECK(pos_polar_cone(box(2, 1)).is_origin());
  CHECK(polar(Polyhedron::universe(3)).is_origin());
  CHECK_THROWS_AS(polar(interval(1, 2)), std::domain_error);
}

TEST_CASE("recession cone") {
  CHECK(recession_cone(box(2, 1)).is_origin());
  CHECK(recession_cone(cusp_graph()) == cone_of(mat({{0}, {1}})));
  const Polyhedron c = cone_of(mat({{1, 1}, {0, 2}}));
  CHECK(recession_cone(c) == c);
  CHECK_THROWS_AS(recession_cone(Polyhedron::empty(2)), std::domain_error);
}

TEST_CASE("barrier cone") {
  CHECK(barrier_cone(box(2, 1)).is_universe());
  CHECK(barrier_cone(Polyhedron::from_hrep(mat({{-1}}), vec({0}))) == Polyhedron::from_hrep(mat({{1}}), vec({0})));
  CHECK(barrier_cone(Polyhedron::universe(2)).is_origin());
}

TEST_CASE("conic hull") {
  CHECK(conic_hull(box(2, 1)).is_universe());
  const Polyhedron segment = Polyhedron::from_vrep(mat({{1, 1}, {0, 1}}), RatMatrix(2, 0), RatMatrix(2, 0));
  CHECK(conic_hull(segment) == cone_of(mat({{1, 1}, {0, 1}})));
  CHECK(conic_hull(Polyhedron::origin(2)).is_origin());
}

TEST_CASE("interior queries") {
  const auto w = subspace_meets_interior(Subspace::span(mat({{1}, {0}})), box(2, 1));
  CHECK(w.found);
  CHECK(w.point == vec({0, 0}));
  CHECK_FALSE(is_solid(Polyhedron::origin(2)));
  CHECK(is_solid(box(3, 2)));
  const Polyhedron side = Polyhedron::from_hrep(mat({{0, 1}, {0, -1}}), vec({1, 1}), mat({{1, 0}}), vec({1}));
  CHECK_FALSE(subspace_meets_interior(Subspace::span(mat({{1}, {0}})), side).found);
  // Touches only the boundary.
  const Polyhedron corner = Polyhedron::from_hrep(mat({{-1, 0}, {0, -1}, {1, 1}}), vec({0, 0, 1}));
  CHECK_FALSE(subspace_meets_interior(Subspace::span(mat({{1}, {0}})), corner).found);
  CHECK(subspace_meets_interior(Subspace::span(mat({{1}, {1}})), corner).found);
}

TEST_CASE("linear transforms") {
  const Polyhedron b = box(2, 1);
  CHECK(image(RatMatrix::Identity(2, 2), b) == b);
  // [C D] of EX1 maps (x1, x2, u) to (u, x2).
  const Polyhedron pre = preimage(mat({{0, 0, 1}, {0, 1, 0}}), b);
  CHECK(pre == Polyhedron::from_hrep(mat({{0, 0, 1}, {0, 0, -1}, {0, 1, 0}, {0, -1, 0}}), vec({1, 1, 1, 1})));
  CHECK(pre.lineality() == mat({{1}, {0}, {0}}));
  CHECK(image(mat({{1, 1}}), b) == interval(-2, 2));
  CHECK_THROWS_AS(image(mat({{1, 1, 1}}), b), std::invalid_argument);
  CHECK_THROWS_AS(preimage(mat({{1, 1, 1}}), b), std::invalid_argument);
  CHECK(project(cusp_graph(), 1, 1) == Polyhedron::from_hrep(mat({{-1}}), vec({0})));
}

TEST_CASE("set algebra") {
  CHECK(minkowski_sum(interval(-1, 1), interval(-1, 1)) == interval(-2, 2));
  CHECK(product(interval(-1, 1), interval(-1, 1)) == box(2, 1));
  CHECK(power(interval(-1, 1), 3) == box(3, 1));
  CHECK(power(interval(-1, 1), 0).dim() == 0);
  CHECK(subset_eq(box(2, 1), box(2, 2)));
  CHECK_FALSE(subset_eq(box(2, 2), box(2, 1)));
  CHECK(subset_eq(Polyhedron::empty(2), box(2, 1)));
  CHECK_FALSE(subset_eq(box(2, 1), Polyhedron::empty(2)));
  CHECK(intersect(interval(0, 2), interval(1, 3)) == interval(1, 2));
  CHECK(intersect(interval(0, 1), interval(2, 3)).is_empty());
  CHECK(box(2, 1).contains(vec({1, -1})));
  CHECK_FALSE(box(2, 1).contains(vec({1, Rational(3, 2)})));
  const auto v = containment_violation(Polyhedron::universe(1), interval(-1, 1));
  REQUIRE(v.has_value());
  CHECK(v->second == "lineality");
  CHECK_THROWS_AS(intersect(box(2, 1), box(3, 1)), std::invalid_argument);
}

TEST_CASE("hyperbolicity witness") {
  CHECK(hyperbolicity_witness(box(2, 1)) == 1);
  CHECK(hyperbolicity_witness(Polyhedron::from_hrep(mat({{-1}}), vec({0}))) == 0);
  const Polyhedron shifted = Polyhedron::from_vrep(mat({{3}, {0}}), mat({{0}, {1}}), RatMatrix(2, 0));
  CHECK(hyperbolicity_witness(shifted) == 3);
  CHECK_THROWS_AS(hyperbolicity_witness(Polyhedron::empty(1)), std::domain_error);
}

TEST_CASE("polyhedral identities on random polyhedra") {
  testing::Rng rng(2024);
  int nonempty = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto sys = rng.raw_system(rng.uniform(1, 4));
    const Polyhedron p = Polyhedron::from_hrep(sys.g, sys.h, sys.e, sys.f);
    nonempty += !p.is_empty();
    const std::string failure = testing::check_polyhedron_identities(p, sys.g, sys.h, sys.e, sys.f, rng);
    INFO("trial " << trial << ": " << failure);
    CHECK(failure.empty());
  }
  CHECK(nonempty > 60);
}
