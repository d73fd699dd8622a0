#include "dini/norms.hpp"

#include <algorithm>
#include <cmath>

namespace dini {

namespace {

Array2d diff_x(const Array2d& g, double dx) {
  const Index n = g.rows() - 1;
  return (g.bottomRows(n) - g.topRows(n)) / dx;
}

Array2d diff_y(const Array2d& g, double dy) {
  const Index n = g.cols() - 1;
  return (g.rightCols(n) - g.leftCols(n)) / dy;
}

double max_abs(const Array2d& a) { return a.size() == 0 ? 0.0 : a.abs().maxCoeff(); }

}  // namespace

double gradient_sup(const Array2d& g, double dx, double dy) {
  double best = 0.0;
  if (g.rows() > 1) best = std::max(best, max_abs(diff_x(g, dx)));
  if (g.cols() > 1) best = std::max(best, max_abs(diff_y(g, dy)));
  return best;
}

double gradient_sup(const SampledField& g) {
  return gradient_sup(g.values, g.domain.dx(), g.domain.dy());
}

double gradient_sup(const VectorField& v) {
  const double dx = v.domain.dx();
  const double dy = v.domain.dy();
  return std::max(gradient_sup(v.v1, dx, dy), gradient_sup(v.v2, dx, dy));
}

double hessian_sup(const SampledField& psi) {
  const Index nx = psi.domain.nx();
  const Index ny = psi.domain.ny();
  if (nx < 3 || ny < 3) return 0.0;
  const double dx = psi.domain.dx();
  const double dy = psi.domain.dy();
  const auto& s = psi.values;
  const Index mx = nx - 2;
  const Index my = ny - 2;
  const Array2d xx =
      (s.block(2, 1, mx, my) - 2.0 * s.block(1, 1, mx, my) + s.block(0, 1, mx, my)) / (dx * dx);
  const Array2d yy =
      (s.block(1, 2, mx, my) - 2.0 * s.block(1, 1, mx, my) + s.block(1, 0, mx, my)) / (dy * dy);
  const Array2d xy = (s.block(2, 2, mx, my) - s.block(0, 2, mx, my) - s.block(2, 0, mx, my) +
                      s.block(0, 0, mx, my)) /
                     (4.0 * dx * dy);
  return std::max({max_abs(xx), max_abs(yy), max_abs(xy)});
}

double c2_norm(const SampledField& psi) {
  const Index nx = psi.domain.nx();
  const Index ny = psi.domain.ny();
  double best = psi.values.abs().maxCoeff();
  if (nx < 3 || ny < 3) return best;
  const auto& s = psi.values;
  const Array2d px = (s.block(2, 1, nx - 2, ny - 2) - s.block(0, 1, nx - 2, ny - 2)) /
                     (2.0 * psi.domain.dx());
  const Array2d py = (s.block(1, 2, nx - 2, ny - 2) - s.block(1, 0, nx - 2, ny - 2)) /
                     (2.0 * psi.domain.dy());
  return std::max({best, max_abs(px), max_abs(py), hessian_sup(psi)});
}

double lipschitz_seminorm(const Array2d& g, double dx, double dy) {
  if (g.rows() < 2 || g.cols() < 2) return gradient_sup(g, dx, dy);
  const Index mx = g.rows() - 1;
  const Index my = g.cols() - 1;
  // Corner gradients of the bilinear patch on each cell: the x-slope along the
  // bottom and top edges, the y-slope along the left and right edges.
  const Array2d sx0 = (g.block(1, 0, mx, my) - g.block(0, 0, mx, my)) / dx;
  const Array2d sx1 = (g.block(1, 1, mx, my) - g.block(0, 1, mx, my)) / dx;
  const Array2d sy0 = (g.block(0, 1, mx, my) - g.block(0, 0, mx, my)) / dy;
  const Array2d sy1 = (g.block(1, 1, mx, my) - g.block(1, 0, mx, my)) / dy;
  const Array2d c = (sx0.square() + sy0.square())
                        .max(sx0.square() + sy1.square())
                        .max(sx1.square() + sy0.square())
                        .max(sx1.square() + sy1.square());
  return std::sqrt(c.maxCoeff());
}

double lipschitz_seminorm(const SampledField& g) {
  const Domain& d = g.domain;
  if (!d.masked()) return lipschitz_seminorm(g.values, d.dx(), d.dy());
  const Mask& m = *d.mask();
  const Index mx = d.nx() - 1;
  const Index my = d.ny() - 1;
  double best = 0.0;
  for (Index j = 0; j < my; ++j)
    for (Index i = 0; i < mx; ++i) {
      if (!(m(i, j) && m(i + 1, j) && m(i, j + 1) && m(i + 1, j + 1))) continue;
      best = std::max(best, lipschitz_seminorm(g.values.block(i, j, 2, 2), d.dx(), d.dy()));
    }
  return best;
}

double c11_norm(const VectorField& u) {
  const double dx = u.domain.dx();
  const double dy = u.domain.dy();
  double sup = u.sup();
  double grad = gradient_sup(u);
  double lip = 0.0;
  for (const Array2d* c : {&u.v1, &u.v2}) {
    if (c->rows() > 1) lip = std::max(lip, lipschitz_seminorm(diff_x(*c, dx), dx, dy));
    if (c->cols() > 1) lip = std::max(lip, lipschitz_seminorm(diff_y(*c, dy), dx, dy));
  }
  return sup + grad + lip;
}

double c01_norm(const SampledField& p) { return p.sup() + lipschitz_seminorm(p); }

}  // namespace dini
