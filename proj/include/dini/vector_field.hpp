#pragma once

#include "dini/grid.hpp"

#include <functional>

namespace dini {

/// Staggered (MAC) vector field on the node grid `domain`:
///   v1 at (x_i, y_{j+1/2}), shape nx x (ny - 1)
///   v2 at (x_{i+1/2}, y_j), shape (nx - 1) x ny
/// v1 lives on vertical cell edges and v2 on horizontal ones, so div is a
/// cell-centred telescoping sum and curl is node-centred.
struct VectorField {
  Domain domain;
  Array2d v1;
  Array2d v2;

  explicit VectorField(Domain d);
  VectorField(Domain d, Array2d a, Array2d b);

  /// Largest component magnitude.
  double sup() const;
};

/// Grid carrying component c (1 or 2).
Domain component_domain(const Domain& d, int c);
SampledField component(const VectorField& v, int c);

/// Cell-centred grid, (nx - 1) x (ny - 1).
Domain cell_domain(const Domain& d);

VectorField sample_vector(const Domain& d, const std::function<double(double, double)>& f1,
                          const std::function<double(double, double)>& f2);

/// v = (d psi / dy, -d psi / dx) by edge differences.
VectorField rot(const SampledField& psi);

/// d v2/dx - d v1/dy at nodes; boundary nodes are set to 0.
SampledField curl(const VectorField& v);

/// d v1/dx + d v2/dy at cell centres.
SampledField div(const VectorField& v);

/// Velocity at an arbitrary point, each component interpolated bilinearly on
/// its own grid.
Point evaluate(const VectorField& v, const Point& p);

}  // namespace dini
