#include "dini/euler.hpp"

#include "dini/errors.hpp"
#include "dini/norms.hpp"
#include "dini/poisson.hpp"
#include "dini/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace dini {

namespace {

double clampd(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

Point clamp_to_box(const Domain& d, const Point& p, bool& grazed) {
  const Point q{clampd(p.x(), d.x0(), d.x_max()), clampd(p.y(), d.y0(), d.y_max())};
  if (q != p) grazed = true;
  return q;
}

double cubic_weight(double t, int k) {
  // Catmull-Rom weights for nodes -1, 0, 1, 2.
  switch (k) {
    case 0: return ((-t + 2.0) * t - 1.0) * t / 2.0;
    case 1: return ((3.0 * t - 5.0) * t * t + 2.0) / 2.0;
    case 2: return ((-3.0 * t + 4.0) * t + 1.0) * t / 2.0;
    default: return (t - 1.0) * t * t / 2.0;
  }
}

double trapezoid(std::span<const double> t, std::span<const double> f) {
  double s = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) s += 0.5 * (t[k] - t[k - 1]) * (f[k] + f[k - 1]);
  return s;
}

double forcing_sup(const Forcing& phi, const Domain& d, double t) {
  if (!phi) return 0.0;
  double m = 0.0;
  for (Index j = 0; j < d.ny(); ++j)
    for (Index i = 0; i < d.nx(); ++i) m = std::max(m, std::abs(phi(t, d.x(i), d.y(j))));
  return m;
}

double max_diff(const SampledField& a, const SampledField& b) {
  return (a.values - b.values).abs().maxCoeff();
}

}  // namespace

VelocitySeries::VelocitySeries(std::vector<double> times, std::vector<VectorField> fields)
    : times_(std::move(times)), fields_(std::move(fields)) {
  if (times_.empty() || times_.size() != fields_.size())
    throw invalid_argument("VelocitySeries: need one field per time, at least one");
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k] > times_[k - 1]))
      throw invalid_argument("VelocitySeries: times must increase strictly");
    if (!fields_[k].domain.same_grid(fields_[0].domain))
      throw invalid_argument("VelocitySeries: fields on different grids");
  }
  const Domain a = component_domain(domain(), 1);
  const Domain b = component_domain(domain(), 2);
  x1_ = a.x0();
  y1_ = a.y0();
  x2_ = b.x0();
  y2_ = b.y0();
  dx_ = a.dx();
  dy_ = a.dy();
}

VelocitySeries VelocitySeries::steady(const VectorField& v, double t0, double t1) {
  if (!(t1 > t0)) throw invalid_argument("VelocitySeries::steady: need t0 < t1");
  return VelocitySeries({t0, t1}, {v, v});
}

Point VelocitySeries::at(std::size_t k, const Point& p) const {
  const VectorField& f = fields_[k];
  return {bilinear(f.v1, x1_, y1_, dx_, dy_, p), bilinear(f.v2, x2_, y2_, dx_, dy_, p)};
}

Point VelocitySeries::velocity(double t, const Point& p) const {
  if (times_.size() == 1 || t <= times_.front()) return at(0, p);
  if (t >= times_.back()) return at(times_.size() - 1, p);
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - times_.begin()) - 1;
  const double w = (t - times_[k]) / (times_[k + 1] - times_[k]);
  if (w == 0.0) return at(k, p);
  return (1.0 - w) * at(k, p) + w * at(k + 1, p);
}

std::vector<Point> advect_path(const VelocitySeries& v, double t, double s, const Point& x,
                               int steps, bool* grazing) {
  if (steps < 1) throw invalid_argument("advect_trace: step count must be >= 1");
  const Domain& d = v.domain();
  const double h = (s - t) / double(steps);
  std::vector<Point> path;
  path.reserve(std::size_t(steps) + 1);
  path.push_back(x);
  Point p = x;
  bool grazed = false;
  for (int k = 0; k < steps; ++k) {
    const double tau = t + double(k) * h;
    const Point k1 = v.velocity(tau, p);
    const Point k2 = v.velocity(tau + 0.5 * h, p + 0.5 * h * k1);
    const Point k3 = v.velocity(tau + 0.5 * h, p + 0.5 * h * k2);
    const Point k4 = v.velocity(tau + h, p + h * k3);
    p = clamp_to_box(d, p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), grazed);
    path.push_back(p);
  }
  if (grazing) *grazing = grazed;
  return path;
}

Point advect_trace(const VelocitySeries& v, double t, double s, const Point& x, int steps,
                   bool* grazing) {
  return advect_path(v, t, s, x, steps, grazing).back();
}

FlowMap flow_map(const VelocitySeries& v, double t, double s, int steps, double jacobian_step) {
  const Domain& d = v.domain();
  FlowMap m{s, t, identity_map(d), 0, Array2d::Ones(d.nx(), d.ny()), 0.0};
  if (t == s) return m;
  for (Index j = 0; j < d.ny(); ++j)
    for (Index i = 0; i < d.nx(); ++i) {
      bool g = false;
      const Point p = advect_trace(v, t, s, d.point(i, j), steps, &g);
      m.U.X(i, j) = p.x();
      m.U.Y(i, j) = p.y();
      if (g) ++m.grazing;
    }
  if (!(jacobian_step > 0.0)) return m;
  const double e = jacobian_step;
  auto trace = [&](const Point& p) { return advect_trace(v, t, s, p, steps); };
  for (Index j = 1; j + 1 < d.ny(); ++j)
    for (Index i = 1; i + 1 < d.nx(); ++i) {
      const Point x = d.point(i, j);
      const Point ax = (trace(x + Point(e, 0.0)) - trace(x - Point(e, 0.0))) / (2.0 * e);
      const Point ay = (trace(x + Point(0.0, e)) - trace(x - Point(0.0, e))) / (2.0 * e);
      m.det(i, j) = ax.x() * ay.y() - ax.y() * ay.x();
      m.det_deviation = std::max(m.det_deviation, std::abs(m.det(i, j) - 1.0));
    }
  return m;
}

Array2d jacobian_det(const DiscreteMap& U) {
  const Domain& d = U.domain;
  Array2d det = Array2d::Ones(d.nx(), d.ny());
  for (Index j = 1; j + 1 < d.ny(); ++j)
    for (Index i = 1; i + 1 < d.nx(); ++i) {
      const double xx = (U.X(i + 1, j) - U.X(i - 1, j)) / (2.0 * d.dx());
      const double xy = (U.X(i, j + 1) - U.X(i, j - 1)) / (2.0 * d.dy());
      const double yx = (U.Y(i + 1, j) - U.Y(i - 1, j)) / (2.0 * d.dx());
      const double yy = (U.Y(i, j + 1) - U.Y(i, j - 1)) / (2.0 * d.dy());
      det(i, j) = xx * yy - xy * yx;
    }
  return det;
}

double interpolate(const SampledField& f, const Point& p, Interpolation how) {
  const Domain& d = f.domain;
  if (how == Interpolation::bilinear) return bilinear(f, p);
  const Index nx = d.nx();
  const Index ny = d.ny();
  const double s = clampd((p.x() - d.x0()) / d.dx(), 0.0, double(nx - 1));
  const double t = clampd((p.y() - d.y0()) / d.dy(), 0.0, double(ny - 1));
  const Index i = std::min(static_cast<Index>(s), nx - 2);
  const Index j = std::min(static_cast<Index>(t), ny - 2);
  const double a = s - double(i);
  const double b = t - double(j);
  double v = 0.0;
  for (int q = 0; q < 4; ++q) {
    const Index jj = std::clamp<Index>(j - 1 + q, 0, ny - 1);
    double row = 0.0;
    for (int k = 0; k < 4; ++k)
      row += cubic_weight(a, k) * f.values(std::clamp<Index>(i - 1 + k, 0, nx - 1), jj);
    v += cubic_weight(b, q) * row;
  }
  return v;
}

SampledField transport_vorticity(const SampledField& zeta_s, const Forcing& phi,
                                 const VelocitySeries& v, double s, double t, int steps,
                                 Index* grazing, Interpolation how) {
  const Domain& d = zeta_s.domain;
  if (d.masked()) throw unsupported_domain("transport_vorticity: masked domains unsupported");
  if (!d.same_grid(v.domain())) throw invalid_argument("transport_vorticity: grid mismatch");
  if (grazing) *grazing = 0;
  if (t == s) return zeta_s;
  SampledField out(d);
  const double h = (s - t) / double(steps);
  for (Index j = 0; j < d.ny(); ++j)
    for (Index i = 0; i < d.nx(); ++i) {
      bool g = false;
      const auto path = advect_path(v, t, s, d.point(i, j), steps, &g);
      double z = interpolate(zeta_s, path.back(), how);
      if (phi) {
        double q = 0.0;
        for (std::size_t k = 0; k < path.size(); ++k) {
          const double w = (k == 0 || k + 1 == path.size()) ? 0.5 : 1.0;
          q += w * phi(t + double(k) * h, path[k].x(), path[k].y());
        }
        z += std::abs(h) * q;
      }
      out.values(i, j) = z;
      if (g && grazing) ++*grazing;
    }
  return out;
}

VelocitySeries velocity_series(const PicardWindow& w, std::span<const SampledField> theta) {
  if (w.steps < 1 || theta.size() != std::size_t(w.steps) + 1 || !(w.dt > 0.0))
    throw invalid_argument("velocity_series: need steps + 1 levels and dt > 0");
  std::vector<double> times;
  std::vector<VectorField> fields;
  for (int k = 0; k <= w.steps; ++k) {
    times.push_back(w.time(k));
    fields.push_back(velocity_from_vorticity(theta[std::size_t(k)]));
  }
  return VelocitySeries(std::move(times), std::move(fields));
}

std::vector<SampledField> picard_step(const PicardWindow& w, std::span<const SampledField> theta,
                                      const SampledField& zeta_start, const Forcing& phi,
                                      double B, const PicardOptions& opt, PicardStats* stats) {
  if (opt.substeps < 1) throw invalid_argument("picard_step: substeps must be >= 1");
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double s = theta[k].sup();
    if (s > B * (1.0 + opt.slack)) {
      std::ostringstream os;
      os << "picard_step: iterate leaves K at level " << k << ": sup " << s << " > B = " << B;
      throw invariant_violation(os.str());
    }
  }
  const VelocitySeries v = velocity_series(w, theta);
  std::vector<SampledField> out;
  out.reserve(theta.size());
  out.push_back(zeta_start);
  for (int k = 1; k <= w.steps; ++k) {
    Index g = 0;
    out.push_back(transport_vorticity(zeta_start, phi, v, w.t0, w.time(k), k * opt.substeps, &g,
                                      opt.interpolation));
    if (stats) {
      stats->grazing += g;
      stats->traces += zeta_start.domain.size();
    }
  }
  return out;
}

EulerTrajectory euler_solve(const SampledField& zeta0, const Forcing& phi,
                            const EulerOptions& opt) {
  const Domain& d = zeta0.domain;
  if (!(opt.T > 0.0) || !(opt.window > 0.0) || opt.steps_per_window < 1 || !(opt.tol > 0.0) ||
      opt.max_iterations < 1)
    throw invalid_argument("euler_solve: need T, window, tol > 0 and positive step counts");

  const int windows = std::max(1, int(std::ceil(opt.T / opt.window - 1e-9)));
  std::vector<double> edges;
  for (int w = 0; w <= windows; ++w) edges.push_back(std::min(opt.T, double(w) * opt.window));
  edges.back() = opt.T;

  EulerTrajectory traj;
  traj.T = opt.T;
  traj.cutoffs = opt.cutoffs;
  traj.forced = bool(phi);

  // B = |zeta_0| + int_0^T |phi| on the inner levels, and its running value
  // at the window ends.
  std::vector<double> fine_t, fine_f;
  for (int w = 0; w < windows; ++w) {
    const double dt = (edges[w + 1] - edges[w]) / double(opt.steps_per_window);
    for (int k = (w == 0 ? 0 : 1); k <= opt.steps_per_window; ++k) {
      fine_t.push_back(edges[w] + double(k) * dt);
      fine_f.push_back(forcing_sup(phi, d, fine_t.back()));
    }
  }
  for (int w = 0; w <= windows; ++w) {
    const std::size_t n = std::size_t(w) * std::size_t(opt.steps_per_window) + 1;
    traj.forcing_integral.push_back(
        trapezoid(std::span(fine_t).first(n), std::span(fine_f).first(n)));
  }
  traj.B = zeta0.sup() + traj.forcing_integral.back();

  auto record = [&](double t, const SampledField& z) {
    SampledField psi = poisson_solve(z);
    VectorField v = rot(psi);
    traj.states.push_back({t, z, std::move(psi), std::move(v)});
  };
  record(0.0, zeta0);

  std::vector<double> times;
  std::vector<VectorField> fields;
  SampledField start = zeta0;
  for (int w = 0; w < windows; ++w) {
    const PicardWindow win{edges[w], (edges[w + 1] - edges[w]) / double(opt.steps_per_window),
                           opt.steps_per_window};
    std::vector<SampledField> theta(std::size_t(win.steps) + 1, start);
    WindowLog log{edges[w], edges[w + 1], 0, {}};
    PicardStats stats;
    bool converged = false;
    while (log.iterations < opt.max_iterations) {
      stats = {};
      auto next = picard_step(win, theta, start, phi, traj.B, opt.picard, &stats);
      double res = 0.0;
      for (std::size_t k = 0; k < next.size(); ++k) res = std::max(res, max_diff(next[k], theta[k]));
      theta = std::move(next);
      ++log.iterations;
      log.residuals.push_back(res);
      if (res <= opt.tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream os;
      os << "euler_solve: window [" << log.t0 << ", " << log.t1 << "] not converged after "
         << log.iterations << " iterations, residual " << log.residuals.back();
      throw solver_failure(os.str(), log.residuals);
    }
    traj.grazing += stats.grazing;
    traj.traces += stats.traces;
    const VelocitySeries v = velocity_series(win, theta);
    for (std::size_t k = (w == 0 ? 0 : 1); k < v.times().size(); ++k) {
      times.push_back(v.times()[k]);
      fields.push_back(v.fields()[k]);
    }
    start = theta.back();
    traj.windows.push_back(std::move(log));
    record(edges[w + 1], start);
  }
  traj.velocity = VelocitySeries(std::move(times), std::move(fields));

  SeminormOptions so;
  so.cutoffs = opt.cutoffs;
  for (const EulerState& s : traj.states) {
    traj.sup.push_back(s.zeta.sup());
    if (!opt.histories) continue;
    const auto rep = seminorm_report(s.zeta, so);
    traj.cstar.push_back(rep.cstar);
    traj.bstar.push_back(rep.bstar);
    traj.dstar.push_back(rep.dstar);
    if (phi) {
      const SampledField f = sample(d, [&](double x, double y) { return phi(s.t, x, y); });
      traj.forcing_cstar.push_back(seminorm_cstar(f, opt.cutoffs));
    } else {
      traj.forcing_cstar.push_back(0.0);
    }
  }
  return traj;
}

double holder_c2(double diameter) { return std::max(1.0, std::numbers::e * diameter); }

std::vector<std::pair<GridIndex, GridIndex>> sample_pairs(const Domain& d, int count,
                                                          std::uint64_t seed) {
  if (count < 1) throw invalid_argument("sample_pairs: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> ix(0, d.nx() - 1), iy(0, d.ny() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double lo = std::log(d.spacing());
  const double hi = std::log(0.5 * d.diameter());
  std::vector<std::pair<GridIndex, GridIndex>> out;
  out.reserve(std::size_t(count));
  while (int(out.size()) < count) {
    const GridIndex a{ix(rng), iy(rng)};
    if (!d.included(a.i, a.j)) continue;
    const double r = std::exp(lo + (hi - lo) * u(rng));
    const double th = 2.0 * std::numbers::pi * u(rng);
    const Index bi = a.i + static_cast<Index>(std::lround(r * std::cos(th) / d.dx()));
    const Index bj = a.j + static_cast<Index>(std::lround(r * std::sin(th) / d.dy()));
    if (!d.included(bi, bj) || (bi == a.i && bj == a.j)) continue;
    out.push_back({a, {bi, bj}});
  }
  return out;
}

HolderCheck holder_check(const DiscreteMap& U,
                         std::span<const std::pair<GridIndex, GridIndex>> pairs, double c1,
                         double B, double T) {
  const Domain& d = U.domain;
  HolderCheck h;
  h.c1 = c1;
  h.c2 = holder_c2(d.diameter());
  h.B = B;
  h.T = T;
  h.delta = std::exp(-c1 * B * T);
  h.K = h.c2 * (1.0 + c1 * B);
  h.pairs = int(pairs.size());
  int ok = 0;
  for (const auto& [a, b] : pairs) {
    const double lhs = (U(a.i, a.j) - U(b.i, b.j)).norm();
    const double r = (d.point(a) - d.point(b)).norm();
    if (lhs <= h.K * std::pow(r, h.delta)) ++ok;
  }
  h.fraction = pairs.empty() ? 1.0 : double(ok) / double(pairs.size());
  return h;
}

double fit_c1(const DiscreteMap& U, std::span<const std::pair<GridIndex, GridIndex>> pairs,
              double B, double T) {
  if (!(B > 0.0) || !(T > 0.0)) throw invalid_argument("fit_c1: need B > 0 and T > 0");
  auto all = [&](double c) { return holder_check(U, pairs, c, B, T).fraction >= 1.0; };
  if (all(0.0)) return 0.0;
  double hi = 1.0 / (B * T);
  while (!all(hi)) {
    hi *= 2.0;
    if (hi > 1e6) throw solver_failure("fit_c1: no constant satisfies every pair", {});
  }
  double lo = 0.0;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (all(mid) ? hi : lo) = mid;
  }
  return hi;
}

double calibrate_c1() {
  const Domain d = Domain::unit_square(129);
  const SampledField z0 =
      make_witness(d, WitnessKind::eigen_sine, {.value = 2.0 * std::numbers::pi * std::numbers::pi});
  EulerOptions opt;
  opt.histories = false;
  const auto traj = euler_solve(z0, {}, opt);
  const auto U = flow_map(traj.velocity, opt.T, 0.0, 256);
  const auto pairs = sample_pairs(d, 10000, 1);
  return fit_c1(U.U, pairs, traj.B, opt.T);
}

void write_diagnostics_csv(std::ostream& os, const EulerTrajectory& traj,
                           std::span<const EstimateCheck> checks) {
  os << "name,time,sup,cstar,bstar,lhs,bound,margin,pass\n";
  const auto prec = os.precision(17);
  for (const auto& c : checks) {
    std::size_t k = 0;
    while (k + 1 < traj.states.size() && traj.states[k].t < c.time) ++k;
    const double bound = std::isfinite(c.ceiling) ? c.rhs * c.ceiling : c.rhs;
    os << c.name << ',' << c.time << ',' << traj.sup[k] << ','
       << (k < traj.cstar.size() ? traj.cstar[k] : 0.0) << ','
       << (k < traj.bstar.size() ? traj.bstar[k] : 0.0) << ',' << c.lhs << ',' << bound << ','
       << bound - c.lhs << ',' << (!c.pass ? "false" : (c.skipped ? "skipped" : "true")) << '\n';
  }
  os.precision(prec);
}

std::vector<EstimateCheck> diagnostics(const EulerTrajectory& traj, double c1) {
  const std::size_t n = traj.states.size();
  if (n == 0 || traj.cstar.size() != n || traj.bstar.size() != n || traj.dstar.size() != n ||
      traj.forcing_cstar.size() != n || traj.sup.size() != n)
    throw invalid_argument("diagnostics: trajectory lacks semi-norm histories");
  const SampledField& z0 = traj.states.front().zeta;
  const Domain& d = z0.domain;
  const Index grid = d.nx();
  const double sup0 = traj.sup.front();
  const double B = traj.B;

  // Transport bound for <zeta(t)>*: (1/delta) <zeta_0>* over [K r_lo^delta, K rho^delta].
  const auto cut = resolve(traj.cutoffs, d);
  const double c2 = holder_c2(d.diameter());
  const double delta = std::exp(-c1 * B * traj.T);
  const double K = c2 * (1.0 + c1 * B);
  double bstar_bound = 0.0;
  if (!traj.forced && sup0 > 0.0) {
    Cutoffs moved;
    moved.r_lo = K * std::pow(cut.r_lo, delta);
    moved.rho = K * std::pow(cut.rho, delta);
    moved.nodes = cut.nodes;
    bstar_bound = seminorm_bstar(z0, moved) / delta;
  }

  std::vector<double> ts;
  for (const auto& s : traj.states) ts.push_back(s.t);
  std::vector<EstimateCheck> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = ts[k];
    auto add = [&](EstimateCheck c) {
      c.time = t;
      out.push_back(std::move(c));
    };
    add(make_check("sup_bound", grid, traj.sup[k], sup0 + traj.forcing_integral[k], 1.01));
    if (!traj.forced) add(make_check("sup_drift", grid, std::abs(traj.sup[k] - sup0), sup0, 0.01));
    const double phi_cstar = trapezoid(std::span(ts).first(k + 1),
                                       std::span(traj.forcing_cstar).first(k + 1));
    add(make_check("cstar_growth", grid, traj.sup[k] + traj.cstar[k],
                   std::exp(c1 * B * t) * (3.0 * B + traj.cstar.front() + phi_cstar), 1.0));
    if (!traj.forced) add(make_check("bstar_transport", grid, traj.bstar[k], bstar_bound, 1.0));
    add(make_check("velocity_gradient", grid, gradient_sup(traj.states[k].v),
                   traj.sup[k] + traj.dstar[k]));
  }
  return out;
}

}  // namespace dini
