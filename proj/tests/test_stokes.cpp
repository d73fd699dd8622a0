#include "dini/errors.hpp"
#include "dini/stokes.hpp"
#include "dini/vector_field.hpp"

#include <doctest.h>

#include <cmath>

using namespace dini;

namespace {

// psi = a(x) a(y), a = (x (1 - x))^2; u = rot psi = (a b', -a' b).
double a0(double x) { return std::pow(x * (1 - x), 2); }
double a1(double x) { return 2 * x * (1 - x) * (1 - 2 * x); }
double a2(double x) { return 2 * std::pow(1 - 2 * x, 2) - 4 * x * (1 - x); }
double a3(double x) { return -12 * (1 - 2 * x); }

struct Errors {
  double u, p, div;
};

Errors manufactured(Index n) {
  const auto d = Domain::unit_square(n);
  // f = -Lap u + grad p with p = x + y - 1.
  const auto f = sample_vector(
      d, [](double x, double y) { return -(a2(x) * a1(y) + a0(x) * a3(y)) + 1.0; },
      [](double x, double y) { return a3(x) * a0(y) + a1(x) * a2(y) + 1.0; });
  const auto s = stokes_solve(f);
  const auto u = sample_vector(d, [](double x, double y) { return a0(x) * a1(y); },
                               [](double x, double y) { return -a1(x) * a0(y); });
  const auto p = sample(cell_domain(d), [](double x, double y) { return x + y - 1.0; });
  // The exact pressure has mean zero on the cell grid as well.
  const Array2d pe = p.values - p.values.mean();
  return {std::max((s.u.v1 - u.v1).abs().maxCoeff(), (s.u.v2 - u.v2).abs().maxCoeff()),
          (s.p.values - pe).abs().maxCoeff(), s.divergence};
}

}  // namespace

TEST_CASE("zero forcing") {
  const auto s = stokes_solve(VectorField(Domain::unit_square(17)));
  CHECK(s.u.sup() == 0.0);
  CHECK(s.p.values.abs().maxCoeff() == 0.0);
  CHECK(s.iterations == 0);
}

TEST_CASE("manufactured solution converges at second order") {
  const auto e1 = manufactured(65);
  const auto e2 = manufactured(129);
  CHECK(std::log2(e1.u / e2.u) >= 1.8);
  CHECK(std::log2(e1.p / e2.p) >= 1.8);
  CHECK(e2.div <= 1e-10);
}

TEST_CASE("gradient forcing is balanced by pressure") {
  const auto d = Domain::unit_square(33);
  const auto f = sample_vector(d, [](double, double) { return 1.0; }, [](double, double) { return 0.0; });
  const auto s = stokes_solve(f);
  CHECK(s.u.sup() <= 1e-10);
  const auto p = sample(cell_domain(d), [](double x, double) { return x - 0.5; });
  CHECK((s.p.values - p.values).abs().maxCoeff() <= 1e-10);
  for (Index j = 0; j < 32; ++j)
    for (Index i = 0; i < 33; ++i) CHECK(std::abs(s.u.v1(i, j) - s.u.v1(i, 31 - j)) <= 1e-10);
}

TEST_CASE("reflection symmetry in y") {
  const auto d = Domain::unit_square(41);
  const auto f = sample_vector(
      d, [](double x, double y) { return std::sin(3 * x) * (1 + std::cos(2 * (y - 0.5))); },
      [](double x, double y) { return (y - 0.5) * std::exp(x); });
  const auto s = stokes_solve(f);
  CHECK(s.u.sup() > 1e-4);
  double e1 = 0.0, e2 = 0.0;
  for (Index j = 0; j < 40; ++j)
    for (Index i = 0; i < 41; ++i) e1 = std::max(e1, std::abs(s.u.v1(i, j) - s.u.v1(i, 39 - j)));
  for (Index j = 0; j < 41; ++j)
    for (Index i = 0; i < 40; ++i) e2 = std::max(e2, std::abs(s.u.v2(i, j) + s.u.v2(i, 40 - j)));
  CHECK(e1 <= 1e-10 * s.u.sup());
  CHECK(e2 <= 1e-10 * s.u.sup());
}

TEST_CASE("momentum residual and divergence") {
  const auto d = Domain(0.0, 0.0, 1.0 / 24, 1.0 / 30, 25, 31);
  const auto f = sample_vector(d, [](double x, double y) { return std::cos(4 * x * y); },
                               [](double x, double y) { return x * x - y; });
  const auto s = stokes_solve(f);
  CHECK(stokes_residual(f, s) <= 1e-9);
  CHECK(s.divergence <= 1e-10);
  CHECK(std::abs(s.p.values.mean()) <= 1e-14);
  CHECK(s.residuals.size() == std::size_t(s.iterations));
  CHECK(s.residuals.back() <= 1e-12);
}

TEST_CASE("iteration limit raises solver_failure with the residual history") {
  const auto d = Domain::unit_square(33);
  const auto f = sample_vector(d, [](double x, double y) { return x * y; },
                               [](double x, double) { return std::sin(5 * x); });
  try {
    stokes_solve(f, {.tol = 1e-14, .max_iterations = 2});
    FAIL("expected solver_failure");
  } catch (const solver_failure& e) {
    CHECK(e.residuals().size() == 2);
  }
  CHECK_THROWS_AS(stokes_solve(VectorField(Domain::disk(Point(0, 0), 1, 9))), unsupported_domain);
}
