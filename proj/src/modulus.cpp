#include "dini/modulus.hpp"

#include "dini/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace dini {

namespace {

void check_radii(std::span<const double> radii, const char* op) {
  if (radii.empty()) throw invalid_argument(std::string(op) + ": empty radii list");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || !std::isfinite(radii[k]))
      throw invalid_argument(std::string(op) + ": radii must be positive and finite");
    if (k > 0 && !(radii[k] > radii[k - 1]))
      throw invalid_argument(std::string(op) + ": radii must be strictly increasing");
  }
}

double pair_max(const SampledField& f, const Offset& o) {
  const Index nx = f.domain.nx();
  const Index ny = f.domain.ny();
  const Index w = nx - o.di;
  const Index h = ny - std::abs(o.dj);
  if (w <= 0 || h <= 0) return 0.0;
  const Index jb = o.dj < 0 ? -o.dj : 0;
  const auto a = f.values.block(o.di, jb + o.dj, w, h);
  const auto b = f.values.block(0, jb, w, h);
  if (!f.domain.masked()) return (a - b).abs().maxCoeff();
  const Mask& m = *f.domain.mask();
  return (m.block(o.di, jb + o.dj, w, h) && m.block(0, jb, w, h))
      .select((a - b).abs(), 0.0)
      .maxCoeff();
}

// Distance / |f(y) - f(anchor)| pairs around one anchor, sorted by distance.
struct AnchorPairs {
  std::vector<double> distance;
  std::vector<double> diff;
};

AnchorPairs anchor_pairs(const SampledField& f, GridIndex g) {
  const Domain& d = f.domain;
  std::vector<std::pair<double, double>> rows;
  rows.reserve(static_cast<std::size_t>(d.size()));
  const double f0 = f.values(g.i, g.j);
  for (Index j = 0; j < d.ny(); ++j)
    for (Index i = 0; i < d.nx(); ++i) {
      if (!d.included(i, j) || (i == g.i && j == g.j)) continue;
      rows.emplace_back(offset_distance(i - g.i, j - g.j, d.dx(), d.dy()),
                        std::abs(f.values(i, j) - f0));
    }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  AnchorPairs out;
  out.distance.reserve(rows.size());
  out.diff.reserve(rows.size());
  for (const auto& [dist, diff] : rows) {
    out.distance.push_back(dist);
    out.diff.push_back(diff);
  }
  return out;
}

double interpolate(const ModulusProfile& p, double r) {
  const auto& x = p.radii;
  if (r <= x.front()) return p.omegas.front();
  if (r >= x.back()) return p.omegas.back();
  const auto it = std::lower_bound(x.begin(), x.end(), r);
  const std::size_t k = static_cast<std::size_t>(it - x.begin());
  if (*it == r) return p.omegas[k];
  const double a = x[k - 1];
  const double b = x[k];
  const double t = (r - a) / (b - a);
  return p.omegas[k - 1] + t * (p.omegas[k] - p.omegas[k - 1]);
}

// Integration breakpoints over [r_lo, r_hi] and interpolated values there.
void breakpoints(const ModulusProfile& p, double r_lo, double r_hi, std::vector<double>& nodes,
                 std::vector<double>& values) {
  if (!(r_lo > 0.0)) throw invalid_argument("dini_integral: lower cutoff r_lo must be > 0");
  if (!(r_hi > r_lo)) throw invalid_argument("dini_integral: need r_lo < r_hi");
  if (p.radii.empty() || p.radii.size() != p.omegas.size())
    throw invalid_argument("dini_integral: malformed profile");
  constexpr double slack = 1e-12;
  if (p.radii.front() > r_lo * (1.0 + slack) || p.radii.back() < r_hi * (1.0 - slack))
    throw invalid_argument("dini_integral: profile does not cover [r_lo, r_hi]");
  nodes.clear();
  values.clear();
  nodes.push_back(r_lo);
  values.push_back(interpolate(p, r_lo));
  for (std::size_t k = 0; k < p.radii.size(); ++k) {
    if (p.radii[k] > r_lo && p.radii[k] < r_hi) {
      nodes.push_back(p.radii[k]);
      values.push_back(p.omegas[k]);
    }
  }
  nodes.push_back(r_hi);
  values.push_back(interpolate(p, r_hi));
}

}  // namespace

std::vector<Offset> half_offsets(const Domain& d, double r_max) {
  std::vector<Offset> out;
  const Index ny = d.ny();
  for (Index di = 0; di < d.nx(); ++di) {
    for (Index dj = -(ny - 1); dj < ny; ++dj) {
      if (di == 0 && dj <= 0) continue;
      const double dist = offset_distance(di, dj, d.dx(), d.dy());
      if (dist <= r_max) out.push_back({int(di), int(dj), dist});
    }
  }
  std::sort(out.begin(), out.end(), [](const Offset& a, const Offset& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.di != b.di) return a.di < b.di;
    return a.dj < b.dj;
  });
  return out;
}

std::vector<double> offset_maxima(const SampledField& f, std::span<const Offset> offsets,
                                  int threads) {
  std::vector<double> out(offsets.size(), 0.0);
  const std::size_t n = offsets.size();
  const std::size_t t = static_cast<std::size_t>(std::max(1, threads));
  if (t == 1 || n < 64) {
    for (std::size_t k = 0; k < n; ++k) out[k] = pair_max(f, offsets[k]);
    return out;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < n; k += t) out[k] = pair_max(f, offsets[k]);
    });
  }
  return out;
}

std::vector<double> log_nodes(double r_lo, double r_hi, int count) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw invalid_argument("log_nodes: need 0 < r_lo < r_hi");
  if (count < 2) throw invalid_argument("log_nodes: need at least 2 nodes");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double span = std::log(r_hi / r_lo);
  for (int k = 0; k < count; ++k)
    out[static_cast<std::size_t>(k)] = r_lo * std::exp(span * double(k) / double(count - 1));
  out.front() = r_lo;
  out.back() = r_hi;
  return out;
}

double dini_integral(const ModulusProfile& profile, double r_lo, double r_hi) {
  std::vector<double> nodes, values;
  breakpoints(profile, r_lo, r_hi, nodes, values);
  const auto w = dini_weights<double>(nodes);
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) sum += w[k] * values[k];
  return sum;
}

double dini_error_bound(const ModulusProfile& profile, double r_lo, double r_hi) {
  std::vector<double> nodes, values;
  breakpoints(profile, r_lo, r_hi, nodes, values);
  double widest = 0.0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k)
    widest = std::max(widest, std::log(nodes[k + 1] / nodes[k]));
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return widest * (*hi - *lo);
}

ModulusProfile modulus_global(const SampledField& f, std::span<const double> radii,
                              int threads) {
  check_radii(radii, "modulus_global");
  const Domain& d = f.domain;
  ModulusProfile out;
  out.kind = ModulusKind::global;
  out.radii.assign(radii.begin(), radii.end());
  out.omegas.assign(radii.size(), 0.0);

  const double diam = d.diameter();
  const double r_max = std::min(radii.back(), diam);
  out.clamped = radii.back() > diam;

  const auto offsets = half_offsets(d, r_max);
  const auto maxima = offset_maxima(f, offsets, threads);

  // Bucket b holds offsets with floor(distance / h) == b; offsets are sorted,
  // so each bucket is a contiguous range [start[b], start[b + 1]).
  const double h = d.spacing();
  const std::size_t nb = static_cast<std::size_t>(std::floor(r_max / h)) + 2;
  std::vector<std::size_t> start(nb + 1, offsets.size());
  std::vector<double> bucket_max(nb, 0.0);
  for (std::size_t k = offsets.size(); k-- > 0;) {
    const auto b = std::min(nb - 1, static_cast<std::size_t>(std::floor(offsets[k].distance / h)));
    start[b] = k;
    bucket_max[b] = std::max(bucket_max[b], maxima[k]);
  }
  for (std::size_t b = nb; b-- > 0;) start[b] = std::min(start[b], start[b + 1]);
  std::vector<double> prefix(nb, 0.0);  // max over buckets < b
  for (std::size_t b = 1; b < nb; ++b) prefix[b] = std::max(prefix[b - 1], bucket_max[b - 1]);

  for (std::size_t q = 0; q < radii.size(); ++q) {
    const double r = std::min(radii[q], diam);
    const auto b = std::min(nb - 1, static_cast<std::size_t>(std::floor(r / h)));
    double w = prefix[b];
    for (std::size_t k = start[b]; k < start[b + 1] && offsets[k].distance <= r; ++k)
      w = std::max(w, maxima[k]);
    out.omegas[q] = w;
  }
  return out;
}

GridIndex anchor_index(const Domain& d, const Point& p) {
  const auto g = d.nearest(p);
  if (!g) throw invalid_argument("anchor lies outside the domain");
  return *g;
}

ModulusProfile modulus_pointwise(const SampledField& f, GridIndex anchor,
                                 std::span<const double> radii) {
  check_radii(radii, "modulus_pointwise");
  if (!f.domain.included(anchor.i, anchor.j))
    throw invalid_argument("modulus_pointwise: anchor outside domain");
  const auto pairs = anchor_pairs(f, anchor);
  ModulusProfile out;
  out.kind = ModulusKind::pointwise;
  out.anchor = f.domain.point(anchor);
  out.radii.assign(radii.begin(), radii.end());
  out.omegas.assign(radii.size(), 0.0);
  out.clamped = radii.back() > f.domain.diameter();
  double run = 0.0;
  std::size_t k = 0;
  for (std::size_t q = 0; q < radii.size(); ++q) {
    while (k < pairs.distance.size() && pairs.distance[k] <= radii[q]) run = std::max(run, pairs.diff[k++]);
    out.omegas[q] = run;
  }
  return out;
}

ModulusProfile modulus_pointwise(const SampledField& f, const Point& anchor,
                                 std::span<const double> radii) {
  return modulus_pointwise(f, anchor_index(f.domain, anchor), radii);
}

ModulusProfile modulus_sphere(const SampledField& f, GridIndex anchor,
                              std::span<const double> radii, double shell_width) {
  check_radii(radii, "modulus_sphere");
  if (!(shell_width >= f.domain.spacing()))
    throw invalid_argument("modulus_sphere: shell width below grid spacing");
  if (!f.domain.included(anchor.i, anchor.j))
    throw invalid_argument("modulus_sphere: anchor outside domain");
  const auto pairs = anchor_pairs(f, anchor);
  ModulusProfile out;
  out.kind = ModulusKind::sphere;
  out.anchor = f.domain.point(anchor);
  out.radii.assign(radii.begin(), radii.end());
  out.omegas.assign(radii.size(), 0.0);
  out.empty_shell.assign(radii.size(), true);
  out.clamped = radii.back() > f.domain.diameter();
  const auto& dist = pairs.distance;
  for (std::size_t q = 0; q < radii.size(); ++q) {
    const double inner = radii[q] - shell_width;
    auto k = static_cast<std::size_t>(std::upper_bound(dist.begin(), dist.end(), inner) - dist.begin());
    double w = 0.0;
    for (; k < dist.size() && dist[k] <= radii[q]; ++k) {
      w = std::max(w, pairs.diff[k]);
      out.empty_shell[q] = false;
    }
    out.omegas[q] = w;
  }
  return out;
}

ModulusProfile modulus_sphere(const SampledField& f, const Point& anchor,
                              std::span<const double> radii, double shell_width) {
  return modulus_sphere(f, anchor_index(f.domain, anchor), radii, shell_width);
}

}  // namespace dini
