#include "dini/compose.hpp"
#include "dini/errors.hpp"
#include "dini/seminorms.hpp"
#include "dini/witness.hpp"

#include <doctest.h>

#include <cmath>

using namespace dini;

TEST_CASE("composition with the identity") {
  const auto d = Domain::unit_square(33);
  const auto a = random_smooth_field(d, 12);
  const auto b = compose(a, identity_map(d));
  CHECK((b.values == a.values).all());
  CHECK(seminorm_cstar(b) == seminorm_cstar(a));
}

TEST_CASE("rotation on a disk is an isometry up to interpolation") {
  const auto d = Domain::disk(Point(0.5, 0.5), 0.5, 65);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto a = random_smooth_field(d, seed);
    const auto b = compose(a, rotation_map(d, Point(0.5, 0.5), 0.7));
    const double ca = seminorm_cstar(a);
    CHECK(std::abs(seminorm_cstar(b) - ca) <= 0.02 * ca);
  }
}

TEST_CASE("radial holder map has unit holder constant") {
  const auto d = Domain::unit_square(33);
  const Point c(0.5, 0.5);
  for (double delta : {0.5, 0.75}) {
    const auto U = radial_holder_map(d, c, delta);
    double worst = 0.0;
    for (Index j = 0; j < d.ny(); j += 3)
      for (Index i = 0; i < d.nx(); i += 3)
        for (Index l = 0; l < d.ny(); l += 2)
          for (Index k = 0; k < d.nx(); k += 2) {
            const double dist = (d.point(i, j) - d.point(k, l)).norm();
            if (dist > 0.0) worst = std::max(worst, (U(i, j) - U(k, l)).norm() / std::pow(dist, delta));
          }
    CHECK(worst <= 1.0 + 1e-12);
    CHECK(worst >= 0.9);
    // Maps the square into itself.
    CHECK(U.X.minCoeff() >= -1e-15);
    CHECK(U.X.maxCoeff() <= 1.0 + 1e-15);
    CHECK(U.Y.minCoeff() >= -1e-15);
    CHECK(U.Y.maxCoeff() <= 1.0 + 1e-15);
  }
  CHECK_THROWS_AS(radial_holder_map(d, c, 0.0), invalid_argument);
  CHECK_THROWS_AS(radial_holder_map(d, c, 1.5), invalid_argument);
}

TEST_CASE("composition with a delta-Holder map costs at most 1/delta") {
  const auto d = Domain::unit_square(49);
  const Point c(0.5, 0.5);
  for (double delta : {0.75, 0.5}) {
    const auto U = radial_holder_map(d, c, delta);
    for (std::uint64_t seed = 20; seed < 23; ++seed) {
      const auto a = random_smooth_field(d, seed);
      const double lhs = seminorm_cstar(compose(a, U));
      CHECK(lhs <= 1.05 * seminorm_cstar(a) / delta);
    }
  }
}

TEST_CASE("escaping images are reported") {
  const auto d = Domain::unit_square(9);
  const auto a = random_smooth_field(d, 2);
  auto U = identity_map(d);
  U.X(8, 3) = 1.0 + 0.4 * d.spacing();  // within half a spacing: allowed
  CHECK_NOTHROW(compose(a, U));
  U.X(8, 4) = 1.3;
  U.Y(2, 2) = -0.5;
  try {
    compose(a, U);
    FAIL("expected range_error");
  } catch (const range_error& e) {
    CHECK(e.offenders().size() == 2);
  }

  const auto disk = Domain::disk(Point(0.0, 0.0), 1.0, 17);
  const auto b = random_smooth_field(disk, 3);
  auto V = identity_map(disk);
  V.X(8, 8) = 0.99;
  V.Y(8, 8) = 0.99;  // inside the box but off the disk
  CHECK_THROWS_AS(compose(b, V), range_error);
}
