#pragma once

#include "dini/grid.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace dini {

enum class ModulusKind { global, pointwise, sphere };

/// Table r -> omega(r) of a modulus of continuity.
struct ModulusProfile {
  std::vector<double> radii;
  std::vector<double> omegas;
  std::optional<Point> anchor;
  ModulusKind kind = ModulusKind::global;
  /// Some requested radii exceeded the domain diameter and were clamped.
  bool clamped = false;
  /// Sphere profiles only: shells that contained no samples (omega reported 0).
  std::vector<bool> empty_shell;
};

/// Lattice offset between two grid nodes.
struct Offset {
  int di = 0;
  int dj = 0;
  double distance = 0.0;
};

/// Offsets (di > 0, or di == 0 and dj > 0) with distance <= r_max, sorted by
/// distance, ties broken by (di, dj).
std::vector<Offset> half_offsets(const Domain& d, double r_max);

/// For each offset o: max |f(p + o) - f(p)| over pairs with both nodes included.
/// Work is split across `threads`; the result does not depend on the split.
std::vector<double> offset_maxima(const SampledField& f, std::span<const Offset> offsets,
                                  int threads = 1);

/// `count` log-spaced nodes from r_lo to r_hi inclusive.
std::vector<double> log_nodes(double r_lo, double r_hi, int count);

/// Weights w such that sum_k w_k omega(r_k) is the exact integral of the
/// piecewise-linear interpolant of omega against dr/r over [r_0, r_last].
template <typename Scalar>
std::vector<Scalar> dini_weights(std::span<const Scalar> nodes) {
  const std::size_t n = nodes.size();
  std::vector<Scalar> w(n, Scalar(0));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Scalar a = nodes[k];
    const Scalar b = nodes[k + 1];
    const Scalar x = (b - a) / a;
    const Scalar L = std::log1p(x);
    // theta = 1 - a L / (b - a); series near x = 0 avoids cancellation
    const Scalar theta = x < Scalar(1e-4)
                             ? x / Scalar(2) - x * x / Scalar(3) + x * x * x / Scalar(4)
                             : Scalar(1) - L / x;
    w[k] += L - theta;
    w[k + 1] += theta;
  }
  return w;
}

/// Integral of omega(r)/r over [r_lo, r_hi], omega linearly interpolated
/// between profile nodes. Throws if r_lo <= 0 or the profile does not cover
/// the interval.
double dini_integral(const ModulusProfile& profile, double r_lo, double r_hi);

/// Bound on the difference between dini_integral and the integral of any
/// nondecreasing function through the same node values:
/// max panel log-width times the node-value range.
double dini_error_bound(const ModulusProfile& profile, double r_lo, double r_hi);

/// omega_f(r) = max |f(x) - f(y)| over included pairs with |x - y| <= r,
/// computed by one pass over pair offsets bucketed by grid spacing.
ModulusProfile modulus_global(const SampledField& f, std::span<const double> radii,
                              int threads = 1);

/// omega_f(x0; r) = max |f(x0) - f(y)| over included y with |y - x0| <= r.
ModulusProfile modulus_pointwise(const SampledField& f, GridIndex anchor,
                                 std::span<const double> radii);
ModulusProfile modulus_pointwise(const SampledField& f, const Point& anchor,
                                 std::span<const double> radii);

/// Sphere variant: max over the shell r - w < |y - x0| <= r. The shell lies
/// inside the closed ball of radius r, so it never exceeds the pointwise
/// modulus at the same radius.
ModulusProfile modulus_sphere(const SampledField& f, GridIndex anchor,
                              std::span<const double> radii, double shell_width);
ModulusProfile modulus_sphere(const SampledField& f, const Point& anchor,
                              std::span<const double> radii, double shell_width);

/// Resolves a point to an included grid node (within half a spacing).
GridIndex anchor_index(const Domain& d, const Point& p);

}  // namespace dini
