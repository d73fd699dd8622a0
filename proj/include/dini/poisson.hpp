#pragma once

#include "dini/grid.hpp"
#include "dini/vector_field.hpp"

namespace dini {

/// In-place DST-I along the first index of every column:
/// X_k = sum_{j=1..m} x_j sin(pi j k / (m + 1)). Applying it twice scales by
/// (m + 1) / 2.
void dst1_columns(Eigen::Ref<Array2d> a);

/// 5-point -Laplacian at interior nodes; boundary entries are 0.
Array2d neg_laplacian(const SampledField& psi);

/// Solves -Lap_h psi = theta at interior nodes, psi = 0 on the boundary, by
/// sine-transform diagonalization. Boundary values of theta are ignored.
/// Throws unsupported_domain for masked domains.
SampledField poisson_solve(const SampledField& theta);

/// Normwise backward error ||r|| / (||A|| ||psi|| + ||theta||) in the max norm,
/// with r = theta + Lap_h psi on interior nodes and ||A|| = 4/dx^2 + 4/dy^2.
double poisson_residual(const SampledField& theta, const SampledField& psi);

/// rot of the stream function: curl v = theta, div v = 0, v . n = 0.
VectorField velocity_from_vorticity(const SampledField& theta);

}  // namespace dini
