#pragma once

#include "dini/grid.hpp"
#include "dini/vector_field.hpp"

#include <vector>

namespace dini {

struct StokesOptions {
  double tol = 1e-12;    ///< relative residual of the pressure Schur system
  int max_iterations = 500;
};

struct StokesSolution {
  VectorField u;
  SampledField p;  ///< cell-centred, mean zero
  int iterations = 0;
  std::vector<double> residuals;  ///< relative Schur residual per iteration
  double divergence = 0.0;        ///< max |div u| over cells
};

/// -Lap u + grad p = f, div u = 0, u = 0 on the boundary of the (unmasked)
/// rectangle, on the MAC grid of f's domain: normal components sit on the
/// boundary, tangential ones use ghost reflection. Velocity solves use fast
/// diagonalization; the pressure solves the Schur complement
/// G^T A^-1 G p = G^T A^-1 f by conjugate gradients on mean-zero fields.
/// Boundary-face entries of f are ignored. Throws solver_failure when the
/// tolerance is not reached.
StokesSolution stokes_solve(const VectorField& f, const StokesOptions& opt = {});

/// Momentum residual max |A u + G p - f| over interior faces, divided by max |f|.
double stokes_residual(const VectorField& f, const StokesSolution& s);

}  // namespace dini
