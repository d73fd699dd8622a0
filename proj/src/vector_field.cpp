#include "dini/vector_field.hpp"

#include "dini/errors.hpp"

namespace dini {

namespace {

void require_square(const Domain& d, const char* op) {
  if (d.masked()) throw unsupported_domain(std::string(op) + ": masked domains are not supported");
}

}  // namespace

VectorField::VectorField(Domain d)
    : domain(d), v1(Array2d::Zero(d.nx(), d.ny() - 1)), v2(Array2d::Zero(d.nx() - 1, d.ny())) {}

VectorField::VectorField(Domain d, Array2d a, Array2d b)
    : domain(d), v1(std::move(a)), v2(std::move(b)) {
  if (v1.rows() != d.nx() || v1.cols() != d.ny() - 1 || v2.rows() != d.nx() - 1 ||
      v2.cols() != d.ny())
    throw invalid_argument("VectorField: component shapes do not match the staggered grid");
  if (!v1.allFinite() || !v2.allFinite())
    throw invalid_argument("VectorField: values must be finite");
}

double VectorField::sup() const {
  return std::max(v1.abs().maxCoeff(), v2.abs().maxCoeff());
}

Domain component_domain(const Domain& d, int c) {
  if (c == 1) return Domain(d.x0(), d.y0() + 0.5 * d.dy(), d.dx(), d.dy(), d.nx(), d.ny() - 1);
  if (c == 2) return Domain(d.x0() + 0.5 * d.dx(), d.y0(), d.dx(), d.dy(), d.nx() - 1, d.ny());
  throw invalid_argument("component index must be 1 or 2");
}

SampledField component(const VectorField& v, int c) {
  return SampledField(component_domain(v.domain, c), c == 1 ? v.v1 : v.v2);
}

Domain cell_domain(const Domain& d) {
  return Domain(d.x0() + 0.5 * d.dx(), d.y0() + 0.5 * d.dy(), d.dx(), d.dy(), d.nx() - 1,
                d.ny() - 1);
}

VectorField sample_vector(const Domain& d, const std::function<double(double, double)>& f1,
                          const std::function<double(double, double)>& f2) {
  return VectorField(d, sample(component_domain(d, 1), f1).values,
                     sample(component_domain(d, 2), f2).values);
}

VectorField rot(const SampledField& psi) {
  const Domain& d = psi.domain;
  require_square(d, "rot");
  const Index nx = d.nx();
  const Index ny = d.ny();
  const auto& s = psi.values;
  Array2d a = (s.rightCols(ny - 1) - s.leftCols(ny - 1)) / d.dy();
  Array2d b = -(s.bottomRows(nx - 1) - s.topRows(nx - 1)) / d.dx();
  return VectorField(d, std::move(a), std::move(b));
}

SampledField curl(const VectorField& v) {
  const Domain& d = v.domain;
  const Index nx = d.nx();
  const Index ny = d.ny();
  Array2d c = Array2d::Zero(nx, ny);
  if (nx > 2 && ny > 2) {
    // d v2 / dx at interior nodes: v2(i, j) - v2(i - 1, j)
    const auto dv2 = (v.v2.block(1, 1, nx - 2, ny - 2) - v.v2.block(0, 1, nx - 2, ny - 2)) / d.dx();
    const auto dv1 = (v.v1.block(1, 1, nx - 2, ny - 2) - v.v1.block(1, 0, nx - 2, ny - 2)) / d.dy();
    c.block(1, 1, nx - 2, ny - 2) = dv2 - dv1;
  }
  return SampledField(d, std::move(c));
}

SampledField div(const VectorField& v) {
  const Domain& d = v.domain;
  const Index mx = d.nx() - 1;
  const Index my = d.ny() - 1;
  Array2d out = (v.v1.bottomRows(mx) - v.v1.topRows(mx)) / d.dx() +
                (v.v2.rightCols(my) - v.v2.leftCols(my)) / d.dy();
  return SampledField(cell_domain(d), std::move(out));
}

Point evaluate(const VectorField& v, const Point& p) {
  const Domain a = component_domain(v.domain, 1);
  const Domain b = component_domain(v.domain, 2);
  return {bilinear(v.v1, a.x0(), a.y0(), a.dx(), a.dy(), p),
          bilinear(v.v2, b.x0(), b.y0(), b.dx(), b.dy(), p)};
}

}  // namespace dini
