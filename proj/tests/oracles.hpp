#pragma once

// Brute-force reference computations. These deliberately avoid the offset
// tables and anchor sweeps used by the library.

#include "dini/grid.hpp"
#include "dini/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace oracle {

using namespace dini;

inline std::vector<GridIndex> included_nodes(const Domain& d) {
  std::vector<GridIndex> out;
  for (Index j = 0; j < d.ny(); ++j)
    for (Index i = 0; i < d.nx(); ++i)
      if (d.included(i, j)) out.push_back({i, j});
  return out;
}

/// O(N^2 |radii|) double loop.
inline std::vector<double> global_modulus(const SampledField& f, std::span<const double> radii) {
  const auto pts = included_nodes(f.domain);
  std::vector<double> out(radii.size(), 0.0);
  for (std::size_t q = 0; q < radii.size(); ++q) {
    double w = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const double dist = offset_distance(pts[b].i - pts[a].i, pts[b].j - pts[a].j,
                                            f.domain.dx(), f.domain.dy());
        if (dist <= radii[q])
          w = std::max(w, std::abs(f(pts[a].i, pts[a].j) - f(pts[b].i, pts[b].j)));
      }
    out[q] = w;
  }
  return out;
}

/// Ball (inner = -1) or shell (inner = r - w) modulus at one anchor, by direct loop.
inline std::vector<double> anchor_modulus(const SampledField& f, GridIndex g,
                                          std::span<const double> radii, double shell_width) {
  const auto pts = included_nodes(f.domain);
  std::vector<double> out(radii.size(), 0.0);
  for (std::size_t q = 0; q < radii.size(); ++q) {
    const double inner = shell_width > 0.0 ? radii[q] - shell_width : -1.0;
    double w = 0.0;
    for (const auto& p : pts) {
      if (p == g) continue;
      const double dist = offset_distance(p.i - g.i, p.j - g.j, f.domain.dx(), f.domain.dy());
      if (dist <= radii[q] && dist > inner) w = std::max(w, std::abs(f(p.i, p.j) - f(g.i, g.j)));
    }
    out[q] = w;
  }
  return out;
}

inline ModulusProfile as_profile(std::span<const double> radii, std::vector<double> omegas) {
  ModulusProfile p;
  p.radii.assign(radii.begin(), radii.end());
  p.omegas = std::move(omegas);
  return p;
}

/// sup over anchors of the Dini integral of the ball (shell_width = 0) or
/// shell modulus, every anchor profiled by direct loop.
inline double anchor_seminorm(const SampledField& f, std::span<const double> nodes,
                              double shell_width) {
  double best = 0.0;
  for (const auto& g : included_nodes(f.domain)) {
    const auto prof = as_profile(nodes, anchor_modulus(f, g, nodes, shell_width));
    best = std::max(best, dini_integral(prof, nodes.front(), nodes.back()));
  }
  return best;
}

/// Exact integral of the discrete (step) global modulus against dr/r over
/// [r_lo, r_hi]: omega is constant between consecutive pair distances.
inline double step_dini(const SampledField& f, double r_lo, double r_hi) {
  const auto pts = included_nodes(f.domain);
  std::vector<std::pair<double, double>> pd;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      pd.emplace_back(offset_distance(pts[b].i - pts[a].i, pts[b].j - pts[a].j, f.domain.dx(),
                                      f.domain.dy()),
                      std::abs(f(pts[a].i, pts[a].j) - f(pts[b].i, pts[b].j)));
  std::sort(pd.begin(), pd.end());
  double sum = 0.0;
  double omega = 0.0;
  double r = r_lo;
  std::size_t k = 0;
  while (k < pd.size() && pd[k].first <= r_lo) omega = std::max(omega, pd[k++].second);
  while (r < r_hi) {
    const double next = k < pd.size() ? std::min(pd[k].first, r_hi) : r_hi;
    sum += omega * std::log(next / r);
    r = next;
    while (k < pd.size() && pd[k].first <= r) omega = std::max(omega, pd[k++].second);
  }
  return sum;
}

}  // namespace oracle
