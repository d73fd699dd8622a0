#pragma once

#include "dini/grid.hpp"
#include "dini/vector_field.hpp"

namespace dini {

/// Largest |first difference| along x and y.
double gradient_sup(const Array2d& g, double dx, double dy);
double gradient_sup(const SampledField& g);
/// Largest |difference quotient| of either component in either direction.
double gradient_sup(const VectorField& v);

/// max(|psi_xx|, |psi_yy|, |psi_xy|) over interior nodes, centred differences.
double hessian_sup(const SampledField& psi);

/// max over derivative orders 0, 1, 2 of the sup of the centred differences.
double c2_norm(const SampledField& psi);

/// Lipschitz constant of the piecewise-bilinear interpolant: the largest
/// gradient magnitude at a cell corner. Masked domains use cells whose four
/// corners are included.
double lipschitz_seminorm(const Array2d& g, double dx, double dy);
double lipschitz_seminorm(const SampledField& g);

/// |u|_{1,1}: sup + gradient sup + Lipschitz constant of the difference
/// quotients, maximized over components.
double c11_norm(const VectorField& u);

/// sup + Lipschitz constant.
double c01_norm(const SampledField& p);

}  // namespace dini
