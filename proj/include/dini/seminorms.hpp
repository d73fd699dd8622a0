#pragma once

#include "dini/grid.hpp"
#include "dini/modulus.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace dini {

/// Integration range and node count for Dini-type integrals. Unset cutoffs
/// resolve to r_lo = 2 * spacing and rho = diameter / 2.
struct Cutoffs {
  std::optional<double> r_lo;
  std::optional<double> rho;
  int nodes = 128;
};

struct ResolvedCutoffs {
  double r_lo = 0.0;
  double rho = 0.0;
  int nodes = 0;
};

ResolvedCutoffs resolve(const Cutoffs& c, const Domain& d);

struct SeminormOptions {
  Cutoffs cutoffs;
  bool cstar = true;
  bool bstar = true;
  bool dstar = true;
  std::vector<double> holderlog_alphas;
  std::vector<double> holder_lambdas;
  /// Shell width for the sphere modulus; defaults to the grid spacing.
  std::optional<double> shell_width;
  int threads = 1;
};

struct SeminormReport {
  double sup = 0.0;
  double cstar = 0.0;  ///< global Dini integral [f]*
  double bstar = 0.0;  ///< sup over anchors of the ball Dini integral <f>*
  double dstar = 0.0;  ///< sup over anchors of the shell Dini integral (f)*
  std::vector<std::pair<double, double>> holderlog;  ///< (alpha, [f]_{0;alpha})
  std::vector<std::pair<double, double>> holder;     ///< (lambda, [f]_{0,lambda})
  double r_lo = 0.0;
  double rho = 0.0;
  int nodes = 0;
  double shell_width = 0.0;
  /// Quadrature bound shared by the three Dini entries (see dini_error_bound).
  double quadrature_bound = 0.0;
  GridIndex bstar_anchor;
  GridIndex dstar_anchor;
};

/// All requested semi-norms in one pass over pair offsets.
SeminormReport seminorm_report(const SampledField& f, const SeminormOptions& opt = {});

double seminorm_cstar(const SampledField& f, const Cutoffs& c = {});
double seminorm_bstar(const SampledField& f, const Cutoffs& c = {});
/// `c.rho` plays the role of the upper limit R of the sphere integral.
double seminorm_dstar(const SampledField& f, const Cutoffs& c = {});
/// [f]* for each lower cutoff in `r_lows` with a common upper limit, from one
/// global modulus sampled on `nodes` log-spaced radii over [min r_lo, rho].
std::vector<double> cstar_cutoff_sweep(const SampledField& f, std::span<const double> r_lows,
                                       double rho, int nodes = 512);

/// sup over pairs with 0 < |x - y| < 1 of |f(x) - f(y)| (-log|x - y|)^alpha.
double seminorm_holderlog(const SampledField& f, double alpha);
/// sup over distinct pairs of |f(x) - f(y)| / |x - y|^lambda, lambda in (0, 1].
double seminorm_holder(const SampledField& f, double lambda);

/// Per-anchor ball and shell Dini integrals on shared nodes; entries for
/// masked-out anchors are zero.
struct AnchorIntegrals {
  Array2d ball;
  Array2d shell;
  double omega_max = 0.0;  ///< global modulus at the last node
};

AnchorIntegrals anchor_integrals(const SampledField& f, std::span<const double> nodes,
                                 bool ball, bool shell, double shell_width);

}  // namespace dini
