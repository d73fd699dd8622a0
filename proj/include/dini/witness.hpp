#pragma once

#include "dini/grid.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dini {

enum class WitnessKind {
  constant,
  linear,
  holder,
  holderlog,
  log_reciprocal,
  bump_cascade,
  eigen_sine,
};

WitnessKind parse_witness_kind(std::string_view name);
std::string to_string(WitnessKind k);

struct WitnessParams {
  double value = 1.0;   ///< constant value; amplitude for eigen_sine
  double a = 1.0;       ///< linear: f = a x + b y
  double b = 0.0;
  double lambda = 0.5;  ///< holder exponent
  double alpha = 2.0;   ///< holderlog: f = (-log r)^-alpha, constant beyond r = e^-max(1, alpha)
  int mode = 0;         ///< log_reciprocal angular mode: f = cos(mode phi) / log(e D / r)
  int depth = 3;        ///< bump_cascade
  double ratio = 4.0;   ///< bump_cascade radius ratio between consecutive bumps
  std::optional<Point> center;  ///< defaults to the domain center

  friend bool operator==(const WitnessParams&, const WitnessParams&) = default;
};

struct Bump {
  Point center;
  double radius = 0.0;
  double height = 0.0;
};

/// Bump k = 1..depth: radius (1/4) L ratio^-(k-1) (L the shorter box side),
/// height 1/k, cone profile height (1 - d/r). A cone has the
/// smallest slope a bump of given height can have, so each new bump governs the
/// global modulus at its own scale once ratio > k / (k - 1). Centers are placed greedily in
/// raster order with supports inside the box and a gap of at least r_k
/// between bump k and every larger bump (center separation >= 3 r_k).
std::vector<Bump> bump_cascade_layout(const Domain& d, int depth, double ratio);

struct Witness {
  WitnessKind kind;
  WitnessParams params;
};

SampledField make_witness(const Domain& d, WitnessKind kind, const WitnessParams& p = {});
inline SampledField make_witness(const Domain& d, const Witness& w) {
  return make_witness(d, w.kind, w.params);
}

/// Smooth random field: a few low Fourier modes with uniform random
/// coefficients, deterministic in the seed.
SampledField random_smooth_field(const Domain& d, std::uint64_t seed, int modes = 4,
                                 double amplitude = 1.0);

/// Random nonnegative smooth field (used for maximum-principle checks).
SampledField random_nonneg_field(const Domain& d, std::uint64_t seed);

}  // namespace dini
