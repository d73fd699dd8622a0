#include "dini/poisson.hpp"

#include "dini/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace dini {

void dst1_columns(Eigen::Ref<Array2d> a) {
  const Index m = a.rows();
  if (m == 0) return;
  const Index len = 2 * (m + 1);
  Eigen::FFT<double> fft;
  std::vector<double> y(static_cast<std::size_t>(len));
  std::vector<std::complex<double>> Y;
  for (Index c = 0; c < a.cols(); ++c) {
    y[0] = 0.0;
    y[static_cast<std::size_t>(m + 1)] = 0.0;
    for (Index j = 1; j <= m; ++j) {
      y[static_cast<std::size_t>(j)] = a(j - 1, c);
      y[static_cast<std::size_t>(len - j)] = -a(j - 1, c);
    }
    fft.fwd(Y, y);
    for (Index k = 1; k <= m; ++k) a(k - 1, c) = -0.5 * Y[static_cast<std::size_t>(k)].imag();
  }
}

Array2d neg_laplacian(const SampledField& psi) {
  const Domain& d = psi.domain;
  const Index nx = d.nx();
  const Index ny = d.ny();
  const auto& s = psi.values;
  Array2d out = Array2d::Zero(nx, ny);
  if (nx < 3 || ny < 3) return out;
  const double cx = 1.0 / (d.dx() * d.dx());
  const double cy = 1.0 / (d.dy() * d.dy());
  const auto c = s.block(1, 1, nx - 2, ny - 2);
  out.block(1, 1, nx - 2, ny - 2) =
      cx * (2.0 * c - s.block(0, 1, nx - 2, ny - 2) - s.block(2, 1, nx - 2, ny - 2)) +
      cy * (2.0 * c - s.block(1, 0, nx - 2, ny - 2) - s.block(1, 2, nx - 2, ny - 2));
  return out;
}

SampledField poisson_solve(const SampledField& theta) {
  const Domain& d = theta.domain;
  if (d.masked()) throw unsupported_domain("poisson_solve: only unmasked rectangular grids");
  const Index mx = d.nx() - 2;
  const Index my = d.ny() - 2;
  Array2d psi = Array2d::Zero(d.nx(), d.ny());
  if (mx <= 0 || my <= 0) return SampledField(d, psi);

  Array2d w = theta.values.block(1, 1, mx, my);
  dst1_columns(w);
  Array2d wt = w.transpose();
  dst1_columns(wt);

  const double pi = std::numbers::pi;
  Eigen::ArrayXd lx(mx), ly(my);
  for (Index k = 0; k < mx; ++k) {
    const double s = std::sin(pi * double(k + 1) / (2.0 * double(mx + 1)));
    lx(k) = 4.0 * s * s / (d.dx() * d.dx());
  }
  for (Index k = 0; k < my; ++k) {
    const double s = std::sin(pi * double(k + 1) / (2.0 * double(my + 1)));
    ly(k) = 4.0 * s * s / (d.dy() * d.dy());
  }
  // wt is (my x mx): row index l along y, column k along x.
  for (Index k = 0; k < mx; ++k)
    for (Index l = 0; l < my; ++l) wt(l, k) /= lx(k) + ly(l);

  dst1_columns(wt);
  w = wt.transpose();
  dst1_columns(w);
  const double scale = 4.0 / (double(mx + 1) * double(my + 1));
  psi.block(1, 1, mx, my) = scale * w;
  return SampledField(d, std::move(psi));
}

double poisson_residual(const SampledField& theta, const SampledField& psi) {
  const Domain& d = theta.domain;
  if (!d.same_grid(psi.domain)) throw invalid_argument("poisson_residual: grid mismatch");
  const Index nx = d.nx();
  const Index ny = d.ny();
  if (nx < 3 || ny < 3) return 0.0;
  const Array2d r = neg_laplacian(psi) - theta.values;
  const double rn = r.block(1, 1, nx - 2, ny - 2).abs().maxCoeff();
  const double tn = theta.values.block(1, 1, nx - 2, ny - 2).abs().maxCoeff();
  const double an = 4.0 / (d.dx() * d.dx()) + 4.0 / (d.dy() * d.dy());
  const double denom = an * psi.values.abs().maxCoeff() + tn;
  return denom > 0.0 ? rn / denom : 0.0;
}

VectorField velocity_from_vorticity(const SampledField& theta) {
  return rot(poisson_solve(theta));
}

}  // namespace dini
