#pragma once

#include "dini/grid.hpp"

namespace dini {

/// Image position U(x) for every node x of `domain`.
struct DiscreteMap {
  Domain domain;
  Array2d X;
  Array2d Y;

  explicit DiscreteMap(Domain d)
      : domain(d), X(Array2d::Zero(d.nx(), d.ny())), Y(Array2d::Zero(d.nx(), d.ny())) {}
  Point operator()(Index i, Index j) const { return {X(i, j), Y(i, j)}; }
};

DiscreteMap identity_map(const Domain& d);
DiscreteMap rotation_map(const Domain& d, const Point& center, double angle);

/// U(p) = c + 2^(delta-1) |p - c|^(delta-1) (p - c): direction preserving,
/// delta-Holder with constant 1, maps discs about c (and the unit square
/// about its center) into themselves.
DiscreteMap radial_holder_map(const Domain& d, const Point& center, double delta);

/// x -> a(U(x)) by bilinear interpolation of a. Images may leave a's grid box
/// by at most half a spacing (they are clamped); farther images, or images
/// whose interpolation cell has no included corner, raise range_error
/// listing the nodes.
SampledField compose(const SampledField& a, const DiscreteMap& U);

}  // namespace dini
