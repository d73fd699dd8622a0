#include "dini/estimate.hpp"

#include "dini/errors.hpp"
#include "dini/greens.hpp"
#include "dini/norms.hpp"
#include "dini/poisson.hpp"
#include "dini/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dini {

EstimateCheck make_check(std::string name, Index grid, double lhs, double rhs, double ceiling) {
  EstimateCheck c;
  c.name = std::move(name);
  c.grid = grid;
  c.lhs = lhs;
  c.rhs = rhs;
  c.ceiling = ceiling;
  if (rhs > 0.0) {
    c.constant = lhs / rhs;
    c.pass = c.constant <= ceiling;
  } else {
    // lhs <= C rhs with rhs <= 0 holds for some C >= 0 only when lhs <= 0.
    c.skipped = true;
    c.pass = lhs <= 0.0;
  }
  return c;
}

void write_csv(std::ostream& os, std::span<const EstimateCheck> checks) {
  os << "name,grid,lhs,rhs,constant,pass\n";
  const auto prec = os.precision(17);
  for (const auto& c : checks)
    os << c.name << ',' << c.grid << ',' << c.lhs << ',' << c.rhs << ',' << c.constant << ','
       << (!c.pass ? "false" : (c.skipped ? "skipped" : "true")) << '\n';
  os.precision(prec);
}

StudyKind parse_study_kind(std::string_view name) {
  if (name == "laplace_c2") return StudyKind::laplace_c2;
  if (name == "laplace_hessian") return StudyKind::laplace_hessian;
  if (name == "velocity_gradient") return StudyKind::velocity_gradient;
  if (name == "stokes_lipschitz") return StudyKind::stokes_lipschitz;
  throw invalid_argument("unknown study kind '" + std::string(name) + "'");
}

std::string to_string(StudyKind k) {
  switch (k) {
    case StudyKind::laplace_c2: return "laplace_c2";
    case StudyKind::laplace_hessian: return "laplace_hessian";
    case StudyKind::velocity_gradient: return "velocity_gradient";
    case StudyKind::stokes_lipschitz: return "stokes_lipschitz";
  }
  return "unknown";
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw invalid_argument("fit_line: need >= 2 points");
  const double n = double(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  f.r2 = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

namespace {

double dstar_norm(const SampledField& g, const Cutoffs& c) {
  return g.sup() + seminorm_dstar(g, c);
}

}  // namespace

StudyResult regularity_ratio_study(StudyKind kind, const Witness& data,
                                   std::span<const Index> grids, const StudyOptions& opt) {
  if (grids.size() < 3) throw invalid_argument("regularity_ratio_study: need at least 3 grids");
  StudyResult out;
  std::vector<double> logs, lhs;
  // One lower cutoff for every grid, so the data semi-norm is comparable.
  Cutoffs cut = opt.cutoffs;
  if (!cut.r_lo) {
    const Index coarsest = *std::min_element(grids.begin(), grids.end());
    cut.r_lo = 2.0 * Domain::unit_square(coarsest).spacing();
  }
  const std::string name = to_string(kind) + ":" + to_string(data.kind);
  for (Index n : grids) {
    const Domain d = Domain::unit_square(n);
    const SampledField g = make_witness(d, data);
    double l = 0.0;
    double r = 0.0;
    switch (kind) {
      case StudyKind::laplace_c2:
        l = c2_norm(poisson_solve(g));
        r = g.sup() + seminorm_cstar(g, cut);
        break;
      case StudyKind::laplace_hessian:
        l = hessian_sup(poisson_solve(g));
        r = g.sup();
        break;
      case StudyKind::velocity_gradient:
        l = gradient_sup(velocity_from_vorticity(g));
        r = dstar_norm(g, cut);
        break;
      case StudyKind::stokes_lipschitz: {
        // g averaged onto the vertical faces carrying the first component.
        Array2d f1 = 0.5 * (g.values.leftCols(n - 1) + g.values.rightCols(n - 1));
        const VectorField f(d, std::move(f1), Array2d::Zero(n - 1, n));
        const auto s = stokes_solve(f);
        l = c11_norm(s.u) + c01_norm(s.p);
        r = dstar_norm(g, cut);
        break;
      }
    }
    out.checks.push_back(make_check(name, n, l, r, opt.ceiling));
    logs.push_back(std::log(1.0 / d.spacing()));
    lhs.push_back(l);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& c : out.checks) {
    if (c.skipped) continue;
    lo = std::min(lo, c.constant);
    hi = std::max(hi, c.constant);
  }
  out.variation = (hi > 0.0 && lo > 0.0) ? hi / lo - 1.0 : 0.0;
  const auto fit = fit_line(logs, lhs);
  out.slope = fit.slope;
  out.r2 = fit.r2;
  return out;
}

GreensDecay greens_decay_fit(int pairs, std::uint64_t seed) {
  if (pairs < 1) throw invalid_argument("greens_decay_fit: need at least one pair");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rad(0.0, 1.0), ang(0.0, 2.0 * std::numbers::pi);
  auto draw = [&] {
    const double r = 0.999 * std::sqrt(rad(rng));
    const double a = ang(rng);
    return Point2<double>(r * std::cos(a), r * std::sin(a));
  };
  GreensDecay g;
  g.pairs = pairs;
  for (int k = 0; k < pairs; ++k) {
    const auto x = draw();
    const auto y = draw();
    const double r = (x - y).norm();
    if (r == 0.0) continue;
    g.log_constant = std::max(g.log_constant, std::abs(greens_disk(x, y)) / std::log(2.0 / r));
    g.gradient_constant = std::max(g.gradient_constant, greens_disk_gradient(x, y).norm() * r);
  }
  return g;
}

}  // namespace dini
