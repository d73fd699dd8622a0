#include "dini/seminorms.hpp"

#include "dini/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dini {

namespace {

struct PairBlocks {
  Index w, h, jb;
};

PairBlocks blocks_for(const Domain& d, const Offset& o) {
  return {d.nx() - o.di, d.ny() - std::abs(o.dj), o.dj < 0 ? Index(-o.dj) : Index(0)};
}

// Folds |f(p + o) - f(p)| into `target` at both anchors p and p + o.
void fold_offset(Array2d& target, Array2d& scratch, const SampledField& f, const Offset& o) {
  const auto [w, h, jb] = blocks_for(f.domain, o);
  if (w <= 0 || h <= 0) return;
  auto e = scratch.topLeftCorner(w, h);
  const auto a = f.values.block(o.di, jb + o.dj, w, h);
  const auto b = f.values.block(0, jb, w, h);
  if (f.domain.masked()) {
    const Mask& m = *f.domain.mask();
    e = (m.block(o.di, jb + o.dj, w, h) && m.block(0, jb, w, h)).select((a - b).abs(), 0.0);
  } else {
    e = (a - b).abs();
  }
  auto lo = target.block(0, jb, w, h);
  lo = lo.max(e);
  auto hi = target.block(o.di, jb + o.dj, w, h);
  hi = hi.max(e);
}

double masked_max(const SampledField& f, const Array2d& v, GridIndex& where) {
  double best = -std::numeric_limits<double>::infinity();
  where = {0, 0};
  // Column-major scan; first maximum wins, so ties resolve deterministically.
  for (Index j = 0; j < v.cols(); ++j)
    for (Index i = 0; i < v.rows(); ++i)
      if (f.domain.included(i, j) && v(i, j) > best) {
        best = v(i, j);
        where = {i, j};
      }
  return best;
}

}  // namespace

ResolvedCutoffs resolve(const Cutoffs& c, const Domain& d) {
  ResolvedCutoffs r;
  r.r_lo = c.r_lo.value_or(2.0 * d.spacing());
  r.rho = c.rho.value_or(0.5 * d.diameter());
  r.nodes = c.nodes;
  if (!(r.r_lo > 0.0)) throw invalid_argument("cutoffs: r_lo must be > 0");
  if (!(r.rho > r.r_lo)) throw invalid_argument("cutoffs: need r_lo < rho");
  if (r.nodes < 2) throw invalid_argument("cutoffs: need at least 2 quadrature nodes");
  return r;
}

AnchorIntegrals anchor_integrals(const SampledField& f, std::span<const double> nodes,
                                 bool ball, bool shell, double shell_width) {
  const Domain& d = f.domain;
  const auto weights = dini_weights<double>(nodes);
  const auto offsets = half_offsets(d, nodes.back());
  std::vector<double> dist(offsets.size());
  for (std::size_t k = 0; k < offsets.size(); ++k) dist[k] = offsets[k].distance;

  AnchorIntegrals out;
  out.ball = Array2d::Zero(d.nx(), d.ny());
  out.shell = Array2d::Zero(d.nx(), d.ny());
  Array2d running = Array2d::Zero(d.nx(), d.ny());
  Array2d ring(d.nx(), d.ny());
  Array2d scratch(d.nx(), d.ny());

  std::size_t next = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double r = nodes[k];
    while (next < offsets.size() && offsets[next].distance <= r)
      fold_offset(running, scratch, f, offsets[next++]);
    if (ball) out.ball += weights[k] * running;
    if (shell) {
      ring.setZero();
      auto q = static_cast<std::size_t>(
          std::upper_bound(dist.begin(), dist.end(), r - shell_width) - dist.begin());
      for (; q < next; ++q) fold_offset(ring, scratch, f, offsets[q]);
      out.shell += weights[k] * ring;
    }
  }
  out.omega_max = running.maxCoeff();
  return out;
}

SeminormReport seminorm_report(const SampledField& f, const SeminormOptions& opt) {
  const Domain& d = f.domain;
  const auto cut = resolve(opt.cutoffs, d);
  SeminormReport rep;
  rep.sup = f.sup();
  rep.r_lo = cut.r_lo;
  rep.rho = cut.rho;
  rep.nodes = cut.nodes;
  rep.shell_width = opt.shell_width.value_or(d.spacing());
  if (!(rep.shell_width >= d.spacing()))
    throw invalid_argument("seminorm_report: shell width below grid spacing");

  const auto nodes = log_nodes(cut.r_lo, cut.rho, cut.nodes);
  double omega_rho = 0.0;
  if (opt.cstar) {
    const auto prof = modulus_global(f, nodes, opt.threads);
    rep.cstar = dini_integral(prof, cut.r_lo, cut.rho);
    omega_rho = prof.omegas.back();
  }
  if (opt.bstar || opt.dstar) {
    const auto ai = anchor_integrals(f, nodes, opt.bstar, opt.dstar, rep.shell_width);
    if (opt.bstar) rep.bstar = masked_max(f, ai.ball, rep.bstar_anchor);
    if (opt.dstar) rep.dstar = masked_max(f, ai.shell, rep.dstar_anchor);
    omega_rho = ai.omega_max;
  }
  rep.quadrature_bound = std::log(nodes[1] / nodes[0]) * omega_rho;

  if (!opt.holder_lambdas.empty() || !opt.holderlog_alphas.empty()) {
    for (double a : opt.holderlog_alphas)
      if (!(a > 0.0)) throw invalid_argument("holderlog: alpha must be > 0");
    for (double l : opt.holder_lambdas)
      if (!(l > 0.0 && l <= 1.0)) throw invalid_argument("holder: lambda must lie in (0, 1]");
    const auto offsets = half_offsets(d, d.diameter());
    const auto maxima = offset_maxima(f, offsets, opt.threads);
    for (double a : opt.holderlog_alphas) {
      double best = 0.0;
      for (std::size_t k = 0; k < offsets.size() && offsets[k].distance < 1.0; ++k)
        best = std::max(best, maxima[k] * std::pow(-std::log(offsets[k].distance), a));
      rep.holderlog.emplace_back(a, best);
    }
    for (double l : opt.holder_lambdas) {
      double best = 0.0;
      for (std::size_t k = 0; k < offsets.size(); ++k)
        best = std::max(best, maxima[k] / std::pow(offsets[k].distance, l));
      rep.holder.emplace_back(l, best);
    }
  }
  return rep;
}

double seminorm_cstar(const SampledField& f, const Cutoffs& c) {
  SeminormOptions o;
  o.cutoffs = c;
  o.bstar = o.dstar = false;
  return seminorm_report(f, o).cstar;
}

double seminorm_bstar(const SampledField& f, const Cutoffs& c) {
  SeminormOptions o;
  o.cutoffs = c;
  o.cstar = o.dstar = false;
  return seminorm_report(f, o).bstar;
}

double seminorm_dstar(const SampledField& f, const Cutoffs& c) {
  SeminormOptions o;
  o.cutoffs = c;
  o.cstar = o.bstar = false;
  return seminorm_report(f, o).dstar;
}

std::vector<double> cstar_cutoff_sweep(const SampledField& f, std::span<const double> r_lows,
                                       double rho, int nodes) {
  if (r_lows.empty()) throw invalid_argument("cstar_cutoff_sweep: no cutoffs");
  const double lo = *std::min_element(r_lows.begin(), r_lows.end());
  if (!(lo > 0.0) || !(rho > *std::max_element(r_lows.begin(), r_lows.end())))
    throw invalid_argument("cstar_cutoff_sweep: need 0 < r_lo < rho");
  const auto prof = modulus_global(f, log_nodes(lo, rho, nodes));
  std::vector<double> out;
  for (double r : r_lows) out.push_back(dini_integral(prof, r, rho));
  return out;
}

double seminorm_holderlog(const SampledField& f, double alpha) {
  if (!(alpha > 0.0)) throw invalid_argument("holderlog: alpha must be > 0");
  SeminormOptions o;
  o.cstar = o.bstar = o.dstar = false;
  o.holderlog_alphas = {alpha};
  o.cutoffs.r_lo = f.domain.spacing();
  o.cutoffs.rho = 2.0 * f.domain.spacing();
  return seminorm_report(f, o).holderlog.front().second;
}

double seminorm_holder(const SampledField& f, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw invalid_argument("holder: lambda must lie in (0, 1]");
  SeminormOptions o;
  o.cstar = o.bstar = o.dstar = false;
  o.holder_lambdas = {lambda};
  o.cutoffs.r_lo = f.domain.spacing();
  o.cutoffs.rho = 2.0 * f.domain.spacing();
  return seminorm_report(f, o).holder.front().second;
}

}  // namespace dini
