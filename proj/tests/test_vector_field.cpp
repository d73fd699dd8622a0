#include "dini/errors.hpp"
#include "dini/poisson.hpp"
#include "dini/vector_field.hpp"
#include "dini/witness.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dini;

TEST_CASE("staggered component grids") {
  const auto d = Domain::unit_square(9);
  const auto a = component_domain(d, 1);
  const auto b = component_domain(d, 2);
  CHECK(a.nx() == 9);
  CHECK(a.ny() == 8);
  CHECK(a.y(0) == doctest::Approx(d.dy() / 2));
  CHECK(b.nx() == 8);
  CHECK(b.x(0) == doctest::Approx(d.dx() / 2));
  CHECK(cell_domain(d).nx() == 8);
  CHECK_THROWS_AS(component_domain(d, 3), invalid_argument);
  CHECK_THROWS_AS(VectorField(d, Array2d::Zero(9, 9), Array2d::Zero(8, 9)), invalid_argument);
}

TEST_CASE("rot of zero is zero") {
  const auto d = Domain::unit_square(17);
  const auto v = rot(SampledField(d));
  CHECK(v.sup() == 0.0);
  CHECK(curl(v).values.abs().maxCoeff() == 0.0);
}

TEST_CASE("rot of the eigen-sine stream function") {
  constexpr double pi = std::numbers::pi;
  double prev = 0.0;
  for (Index n : {33, 65, 129}) {
    const auto d = Domain::unit_square(n);
    const auto v = rot(make_witness(d, WitnessKind::eigen_sine));
    const auto exact = sample_vector(
        d, [](double x, double y) { return pi * std::sin(pi * x) * std::cos(pi * y); },
        [](double x, double y) { return -pi * std::cos(pi * x) * std::sin(pi * y); });
    const double e =
        std::max((v.v1 - exact.v1).abs().maxCoeff(), (v.v2 - exact.v2).abs().maxCoeff());
    if (prev > 0.0) CHECK(std::log2(prev / e) >= 1.9);
    prev = e;
  }
}

TEST_CASE("div of rot vanishes and curl of rot is the 5-point Laplacian") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto d = Domain(0.0, 0.0, 0.03, 0.05, 31, 19);
    const auto psi = random_smooth_field(d, seed, 6, 3.0);
    const auto v = rot(psi);
    CHECK(div(v).values.abs().maxCoeff() <= 1e-11);
    const Array2d c = curl(v).values;
    const Array2d l = neg_laplacian(psi);
    CHECK((c - l).abs().maxCoeff() <= 1e-13 * l.abs().maxCoeff() * 10);
  }
}

TEST_CASE("curl of a rigid rotation is 2") {
  const auto d = Domain::unit_square(21);
  const auto v = sample_vector(d, [](double, double y) { return -y; }, [](double x, double) { return x; });
  const Array2d c = curl(v).values;
  CHECK((c.block(1, 1, 19, 19) - 2.0).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("evaluate interpolates each component on its grid") {
  const auto d = Domain::unit_square(11);
  const auto v = sample_vector(d, [](double x, double y) { return 2 * x + y; },
                               [](double x, double y) { return x - 3 * y; });
  const Point p(0.33, 0.71);
  const Point e = evaluate(v, p);
  CHECK(e.x() == doctest::Approx(2 * 0.33 + 0.71).epsilon(1e-13));
  CHECK(e.y() == doctest::Approx(0.33 - 3 * 0.71).epsilon(1e-13));
}
