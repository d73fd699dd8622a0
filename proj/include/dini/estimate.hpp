#pragma once

#include "dini/seminorms.hpp"
#include "dini/witness.hpp"

#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dini {

/// One measured inequality lhs <= C rhs. The constant is measured, never
/// assumed; `pass` compares it with a configured ceiling.
struct EstimateCheck {
  std::string name;
  Index grid = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;  ///< lhs / rhs, 0 when skipped
  double ceiling = std::numeric_limits<double>::infinity();
  bool pass = true;
  bool skipped = false;  ///< rhs <= 0; passes only when lhs <= 0
  double time = 0.0;     ///< evolution time, for time-dependent checks
};

EstimateCheck make_check(std::string name, Index grid, double lhs, double rhs,
                         double ceiling = std::numeric_limits<double>::infinity());

/// CSV with header name,grid,lhs,rhs,constant,pass; pass is true, false or
/// skipped (a passing check with rhs <= 0).
void write_csv(std::ostream& os, std::span<const EstimateCheck> checks);

enum class StudyKind {
  laplace_c2,         ///< |psi|_2 against |theta| + [theta]*
  laplace_hessian,    ///< |D^2 psi|_inf against |theta|
  velocity_gradient,  ///< |grad v|_inf against |theta| + (theta)*
  stokes_lipschitz,   ///< |u|_{1,1} + |p|_{0,1} against |f| + (f)*, f = (g, 0)
};

StudyKind parse_study_kind(std::string_view name);
std::string to_string(StudyKind k);

struct StudyOptions {
  /// An unset r_lo becomes 2 h of the coarsest grid, shared by all grids.
  Cutoffs cutoffs;
  double ceiling = std::numeric_limits<double>::infinity();
};

struct StudyResult {
  std::vector<EstimateCheck> checks;
  double variation = 0.0;  ///< max / min - 1 of the non-skipped constants
  double slope = 0.0;      ///< least-squares slope of lhs against log(1/h)
  double r2 = 0.0;         ///< coefficient of determination of that fit
};

/// Samples `data` on unit-square grids of the given sizes (n nodes per side,
/// at least three sizes) and records lhs / rhs for each.
StudyResult regularity_ratio_study(StudyKind kind, const Witness& data,
                                   std::span<const Index> grids, const StudyOptions& opt = {});

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fitted decay constants of the disk Green's function on random interior
/// pairs: max |G| / log(2 / |x - y|) and max |grad_x G| |x - y| (2-D analogs
/// of the 3-D kernel bounds).
struct GreensDecay {
  double log_constant = 0.0;
  double gradient_constant = 0.0;
  int pairs = 0;
};
GreensDecay greens_decay_fit(int pairs, std::uint64_t seed);

}  // namespace dini
