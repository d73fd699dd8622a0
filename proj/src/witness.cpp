#include "dini/witness.hpp"

#include "dini/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dini {

namespace {

Point box_center(const Domain& d) {
  return {0.5 * (d.x0() + d.x_max()), 0.5 * (d.y0() + d.y_max())};
}

}  // namespace

WitnessKind parse_witness_kind(std::string_view s) {
  if (s == "constant") return WitnessKind::constant;
  if (s == "linear") return WitnessKind::linear;
  if (s == "holder") return WitnessKind::holder;
  if (s == "holderlog") return WitnessKind::holderlog;
  if (s == "log_reciprocal") return WitnessKind::log_reciprocal;
  if (s == "bump_cascade") return WitnessKind::bump_cascade;
  if (s == "eigen_sine") return WitnessKind::eigen_sine;
  throw invalid_argument("unknown witness kind '" + std::string(s) + "'");
}

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::constant: return "constant";
    case WitnessKind::linear: return "linear";
    case WitnessKind::holder: return "holder";
    case WitnessKind::holderlog: return "holderlog";
    case WitnessKind::log_reciprocal: return "log_reciprocal";
    case WitnessKind::bump_cascade: return "bump_cascade";
    case WitnessKind::eigen_sine: return "eigen_sine";
  }
  return "?";
}

std::vector<Bump> bump_cascade_layout(const Domain& d, int depth, double ratio) {
  if (depth < 1) throw invalid_argument("bump_cascade: depth must be >= 1");
  if (!(ratio > 1.0)) throw invalid_argument("bump_cascade: ratio must be > 1");
  const double lx = d.x_max() - d.x0();
  const double ly = d.y_max() - d.y0();
  const double side = std::min(lx, ly);

  std::vector<Bump> bumps;
  for (int k = 1; k <= depth; ++k) {
    const double r = 0.25 * side * std::pow(ratio, -(k - 1));
    // Candidate centers on a lattice of pitch r/4 in raster order (y, then x).
    const double pitch = r / 4.0;
    std::vector<Point> cand;
    for (double y = d.y0() + r; y <= d.y_max() - r + 1e-12; y += pitch)
      for (double x = d.x0() + r; x <= d.x_max() - r + 1e-12; x += pitch) cand.push_back({x, y});
    bool placed = false;
    for (const Point& p : cand) {
      bool ok = true;
      for (const Bump& q : bumps)
        if ((p - q.center).norm() < q.radius + 2.0 * r) {
          ok = false;
          break;
        }
      if (ok) {
        bumps.push_back({p, r, 1.0 / double(k)});
        placed = true;
        break;
      }
    }
    if (!placed) throw invalid_argument("bump_cascade: cannot place bump " + std::to_string(k));
  }
  return bumps;
}

SampledField make_witness(const Domain& d, WitnessKind kind, const WitnessParams& p) {
  const Point c = p.center.value_or(box_center(d));
  switch (kind) {
    case WitnessKind::constant:
      return SampledField(d, Array2d::Constant(d.nx(), d.ny(), p.value));
    case WitnessKind::linear:
      return sample(d, [&](double x, double y) { return p.a * x + p.b * y; });
    case WitnessKind::holder: {
      if (!(p.lambda > 0.0 && p.lambda <= 1.0))
        throw invalid_argument("holder witness: lambda must lie in (0, 1]");
      return sample(d, [&](double x, double y) {
        return std::pow(std::hypot(x - c.x(), y - c.y()), p.lambda);
      });
    }
    case WitnessKind::holderlog: {
      if (!(p.alpha > 0.0)) throw invalid_argument("holderlog witness: alpha must be > 0");
      // Clipping inside r = e^-alpha keeps the steep part of the profile away
      // from the pairs that realize the semi-norm.
      const double clip = std::exp(-std::max(1.0, p.alpha));
      return sample(d, [&](double x, double y) {
        const double r = std::hypot(x - c.x(), y - c.y());
        if (r == 0.0) return 0.0;
        return std::pow(-std::log(std::min(r, clip)), -p.alpha);
      });
    }
    case WitnessKind::log_reciprocal: {
      const double scale = std::numbers::e * d.diameter();
      return sample(d, [&](double x, double y) {
        const double r = std::hypot(x - c.x(), y - c.y());
        if (r == 0.0) return 0.0;
        const double ang = p.mode == 0 ? 1.0 : std::cos(p.mode * std::atan2(y - c.y(), x - c.x()));
        return ang / std::log(scale / r);
      });
    }
    case WitnessKind::bump_cascade: {
      const auto bumps = bump_cascade_layout(d, p.depth, p.ratio);
      return sample(d, [&](double x, double y) {
        double v = 0.0;
        for (const Bump& b : bumps) {
          const double s = std::hypot(x - b.center.x(), y - b.center.y()) / b.radius;
          if (s < 1.0) v += b.height * (1.0 - s);
        }
        return v;
      });
    }
    case WitnessKind::eigen_sine: {
      const double lx = d.x_max() - d.x0();
      const double ly = d.y_max() - d.y0();
      return sample(d, [&](double x, double y) {
        return p.value * std::sin(std::numbers::pi * (x - d.x0()) / lx) *
               std::sin(std::numbers::pi * (y - d.y0()) / ly);
      });
    }
  }
  throw invalid_argument("make_witness: unknown kind");
}

SampledField random_smooth_field(const Domain& d, std::uint64_t seed, int modes,
                                 double amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double lx = d.x_max() - d.x0();
  const double ly = d.y_max() - d.y0();
  struct Term {
    double c, kx, ky, px, py;
  };
  std::vector<Term> terms;
  for (int m = 1; m <= modes; ++m)
    for (int n = 1; n <= modes; ++n)
      terms.push_back({u(rng) / double(m * n), double(m), double(n), std::numbers::pi * u(rng),
                       std::numbers::pi * u(rng)});
  return sample(d, [&](double x, double y) {
    double v = 0.0;
    const double s = (x - d.x0()) / lx;
    const double t = (y - d.y0()) / ly;
    for (const Term& q : terms)
      v += q.c * std::cos(std::numbers::pi * q.kx * s + q.px) *
           std::cos(std::numbers::pi * q.ky * t + q.py);
    return amplitude * v;
  });
}

SampledField random_nonneg_field(const Domain& d, std::uint64_t seed) {
  SampledField f = random_smooth_field(d, seed, 3);
  f.values = f.values - f.values.minCoeff();
  return f;
}

}  // namespace dini
