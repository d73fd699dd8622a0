#pragma once

#include "dini/errors.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>

namespace dini {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

namespace detail {

template <typename Scalar>
void check_disk_pair(const Point2<Scalar>& x, const Point2<Scalar>& y) {
  if (!(x.norm() <= Scalar(1)) || !(y.norm() < Scalar(1)))
    throw invalid_argument("greens_disk: points must lie in the closed/open unit disk");
  if (x == y) throw singularity_error("greens_disk: x == y");
}

}  // namespace detail

/// Dirichlet Green's function of -Lap on the unit disk by the image formula,
/// G(x, y) = (1/2pi) log(|y| |x - y*| / |x - y|), y* = y / |y|^2. x may lie
/// on the boundary (where G = 0); y must be interior.
template <typename Scalar>
Scalar greens_disk(const Point2<Scalar>& x, const Point2<Scalar>& y) {
  detail::check_disk_pair(x, y);
  const Scalar c = Scalar(1) / (Scalar(2) * std::numbers::pi_v<Scalar>);
  const Scalar r = (x - y).norm();
  const Scalar ny2 = y.squaredNorm();
  // |y|^2 |x - y*|^2 = |x|^2 |y|^2 - 2 x.y + 1
  const Scalar img = x.squaredNorm() * ny2 - Scalar(2) * x.dot(y) + Scalar(1);
  return c * (Scalar(0.5) * std::log(img) - std::log(r));
}

/// Gradient of G in x.
template <typename Scalar>
Point2<Scalar> greens_disk_gradient(const Point2<Scalar>& x, const Point2<Scalar>& y) {
  detail::check_disk_pair(x, y);
  const Scalar c = Scalar(1) / (Scalar(2) * std::numbers::pi_v<Scalar>);
  const Point2<Scalar> d = x - y;
  // grad_x of (1/2) log(|x|^2 |y|^2 - 2 x.y + 1) = (|y|^2 x - y) / img
  const Scalar ny2 = y.squaredNorm();
  const Scalar img = x.squaredNorm() * ny2 - Scalar(2) * x.dot(y) + Scalar(1);
  return c * ((ny2 * x - y) / img - d / d.squaredNorm());
}

}  // namespace dini
