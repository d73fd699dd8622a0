#include "dini/harness.hpp"

#include "dini/compose.hpp"
#include "dini/errors.hpp"
#include "dini/euler.hpp"
#include "dini/io.hpp"
#include "dini/norms.hpp"
#include "dini/poisson.hpp"
#include "dini/seminorms.hpp"
#include "dini/stokes.hpp"
#include "dini/witness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>

namespace dini {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const stage_error&) {
    throw;
  } catch (const std::exception& e) {
    throw stage_error(name, e.what());
  }
}

struct Context {
  const RunConfig& cfg;
  fs::path dir;
  std::vector<std::string> files;
  std::vector<EstimateCheck> checks;

  void text(const std::string& name, const std::string& body) {
    std::ofstream os(dir / name, std::ios::binary);
    os << body;
    if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
    files.push_back(name);
  }
  void json_file(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }
  void field(const std::string& name, const SampledField& f) {
    write_field(f, dir / name);
    files.push_back(name);
  }
  void vector_field(const std::string& stem, const VectorField& v) {
    write_vector_field(v, dir, stem);
    files.push_back(stem + ".json");
    files.push_back(stem + "_v1.field");
    files.push_back(stem + "_v2.field");
  }
  void check(EstimateCheck c) { checks.push_back(std::move(c)); }
};

Cutoffs cutoffs_of(const RunConfig& c) {
  Cutoffs k;
  k.r_lo = c.r_lo;
  k.rho = c.rho;
  k.nodes = c.nodes;
  return k;
}

Witness witness_of(const RunConfig& c) { return {parse_witness_kind(c.witness), c.params}; }

Domain domain_of(const RunConfig& c, Index n) {
  return c.shape == Shape::disk ? Domain::disk(Point(0.5, 0.5), 0.5, n) : Domain::unit_square(n);
}

std::string grid_tag(Index n) { return std::to_string(n); }

// Observed order from errors on successively doubled grids.
std::vector<double> orders(const std::vector<double>& err) {
  std::vector<double> p;
  for (std::size_t k = 1; k < err.size(); ++k)
    p.push_back(err[k] > 0.0 && err[k - 1] > 0.0 ? std::log2(err[k - 1] / err[k]) : 0.0);
  return p;
}

bool doubling(const std::vector<Index>& g) {
  for (std::size_t k = 1; k < g.size(); ++k)
    if (g[k] - 1 != 2 * (g[k - 1] - 1)) return false;
  return true;
}

json report_json(const SeminormReport& r) {
  json hl = json::array(), ho = json::array();
  for (const auto& [a, v] : r.holderlog) hl.push_back({a, v});
  for (const auto& [l, v] : r.holder) ho.push_back({l, v});
  return {{"sup", r.sup},
          {"cstar", r.cstar},
          {"bstar", r.bstar},
          {"dstar", r.dstar},
          {"holderlog", hl},
          {"holder", ho},
          {"r_lo", r.r_lo},
          {"rho", r.rho},
          {"nodes", r.nodes},
          {"shell_width", r.shell_width},
          {"quadrature_bound", r.quadrature_bound},
          {"bstar_anchor", {r.bstar_anchor.i, r.bstar_anchor.j}},
          {"dstar_anchor", {r.dstar_anchor.i, r.dstar_anchor.j}}};
}

void run_seminorm(Context& cx) {
  const RunConfig& c = cx.cfg;
  const Domain d = stage("domain", [&] { return domain_of(c, c.grid); });
  const SampledField f = stage("witness", [&] { return make_witness(d, witness_of(c)); });
  SeminormOptions o;
  o.cutoffs = cutoffs_of(c);
  o.holderlog_alphas = {c.params.alpha};
  o.holder_lambdas = {c.params.lambda};
  o.threads = c.threads;
  const auto rep = stage("seminorm_report", [&] { return seminorm_report(f, o); });
  cx.field("witness.field", f);
  cx.json_file("report.json", report_json(rep));
  // Shell within ball within global pairs: exact at shared nodes.
  cx.check(make_check("ordering_dstar_bstar", c.grid, rep.dstar, rep.bstar, 1.0 + 1e-12));
  cx.check(make_check("ordering_bstar_cstar", c.grid, rep.bstar, rep.cstar, 1.0 + 1e-12));
}

void run_poisson(Context& cx) {
  const RunConfig& c = cx.cfg;
  const Witness w = witness_of(c);
  std::vector<double> err, res;
  std::vector<SampledField> psis;
  for (Index n : c.grids) {
    const Domain d = Domain::unit_square(n);
    const SampledField theta = stage("witness", [&] { return make_witness(d, w); });
    const SampledField psi = stage("poisson_solve", [&] { return poisson_solve(theta); });
    const double r = poisson_residual(theta, psi);
    res.push_back(r);
    cx.field("psi_" + grid_tag(n) + ".field", psi);
    cx.check(make_check("poisson_residual", n, r, 1e-12, 1.0));
    if (theta.values.minCoeff() >= 0.0)
      cx.check(make_check("max_principle", n, -psi.values.minCoeff(), psi.sup(), 0.0));
    if (w.kind == WitnessKind::eigen_sine) {
      const Array2d exact = theta.values / (2.0 * pi * pi);
      err.push_back((psi.values - exact).abs().maxCoeff());
    }
    psis.push_back(psi);
  }
  std::string name = "convergence_order";
  if (w.kind != WitnessKind::eigen_sine) {
    // Differences of successive solutions at the coarse nodes.
    name = "observed_order";
    if (doubling(c.grids))
      for (std::size_t k = 1; k < psis.size(); ++k) {
        const auto& fine = psis[k].values;
        const auto& coarse = psis[k - 1].values;
        double m = 0.0;
        for (Index j = 0; j < coarse.cols(); ++j)
          for (Index i = 0; i < coarse.rows(); ++i)
            m = std::max(m, std::abs(fine(2 * i, 2 * j) - coarse(i, j)));
        err.push_back(m);
      }
  }
  const auto p = orders(err);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Index n = c.grids[k + (w.kind == WitnessKind::eigen_sine ? 1 : 2)];
    if (w.kind == WitnessKind::eigen_sine)
      cx.check(make_check(name, n, 1.9, p[k], 1.0));
    else
      cx.check(make_check(name, n, p[k], 1.0));
  }
  cx.json_file("report.json", {{"grids", c.grids}, {"errors", err}, {"orders", p}, {"residuals", res}});
}

// -Lap u + grad p = f with u = rot(a(x) a(y)), a = (x (1 - x))^2, p = x + y - 1.
struct Manufactured {
  static double a0(double x) { return std::pow(x * (1 - x), 2); }
  static double a1(double x) { return 2 * x * (1 - x) * (1 - 2 * x); }
  static double a2(double x) { return 2 * std::pow(1 - 2 * x, 2) - 4 * x * (1 - x); }
  static double a3(double x) { return -12 * (1 - 2 * x); }
};

void run_stokes(Context& cx) {
  const RunConfig& c = cx.cfg;
  using M = Manufactured;
  StokesOptions so;
  if (c.witness == "manufactured") {
    std::vector<double> eu, ep;
    for (Index n : c.grids) {
      const Domain d = Domain::unit_square(n);
      const auto f = sample_vector(
          d, [](double x, double y) { return -(M::a2(x) * M::a1(y) + M::a0(x) * M::a3(y)) + 1.0; },
          [](double x, double y) { return M::a3(x) * M::a0(y) + M::a1(x) * M::a2(y) + 1.0; });
      const auto s = stage("stokes_solve", [&] { return stokes_solve(f, so); });
      const auto u = sample_vector(d, [](double x, double y) { return M::a0(x) * M::a1(y); },
                                   [](double x, double y) { return -M::a1(x) * M::a0(y); });
      const auto pe = sample(cell_domain(d), [](double x, double y) { return x + y - 1.0; });
      eu.push_back(std::max((s.u.v1 - u.v1).abs().maxCoeff(), (s.u.v2 - u.v2).abs().maxCoeff()));
      ep.push_back((s.p.values - (pe.values - pe.values.mean())).abs().maxCoeff());
      cx.check(make_check("divergence", n, s.divergence, 1e-10, 1.0));
      cx.check(make_check("stokes_residual", n, stokes_residual(f, s), 1e-9, 1.0));
      if (n == c.grids.back()) {
        cx.vector_field("u_" + grid_tag(n), s.u);
        cx.field("p_" + grid_tag(n) + ".field", s.p);
      }
    }
    const auto pu = orders(eu);
    const auto pp = orders(ep);
    for (std::size_t k = 0; k < pu.size(); ++k) {
      cx.check(make_check("velocity_order", c.grids[k + 1], 1.8, pu[k], 1.0));
      cx.check(make_check("pressure_order", c.grids[k + 1], 1.8, pp[k], 1.0));
    }
    cx.json_file("report.json", {{"grids", c.grids},
                                 {"velocity_errors", eu},
                                 {"pressure_errors", ep},
                                 {"velocity_orders", pu},
                                 {"pressure_orders", pp}});
    return;
  }
  const Witness w = witness_of(c);
  StudyOptions opt;
  opt.cutoffs = cutoffs_of(c);
  const auto st = stage("regularity_ratio_study", [&] {
    return regularity_ratio_study(StudyKind::stokes_lipschitz, w, c.grids, opt);
  });
  for (const auto& k : st.checks) cx.check(k);
  cx.check(make_check("lipschitz_variation", c.grids.back(), st.variation, 0.25, 1.0));
  const Index n = c.grids.back();
  const Domain d = Domain::unit_square(n);
  const SampledField g = make_witness(d, w);
  Array2d f1 = 0.5 * (g.values.leftCols(n - 1) + g.values.rightCols(n - 1));
  const VectorField f(d, std::move(f1), Array2d::Zero(n - 1, n));
  const auto s = stage("stokes_solve", [&] { return stokes_solve(f, so); });
  cx.check(make_check("divergence", n, s.divergence, 1e-10, 1.0));
  cx.vector_field("u_" + grid_tag(n), s.u);
  cx.field("p_" + grid_tag(n) + ".field", s.p);
  std::ostringstream os;
  write_csv(os, st.checks);
  cx.text("study.csv", os.str());
  cx.json_file("report.json", {{"grids", c.grids}, {"variation", st.variation}});
}

Forcing forcing_of(const RunConfig& c) {
  if (c.forcing == 0.0) return {};
  const double a = c.forcing;
  return [a](double t, double x, double y) {
    return a * std::cos(2.0 * t) * std::sin(pi * x) * std::sin(pi * y);
  };
}

EulerOptions euler_options(const RunConfig& c) {
  EulerOptions o;
  o.T = c.t_final;
  o.window = c.window;
  o.steps_per_window = c.steps_per_window;
  o.tol = c.tol;
  o.cutoffs = cutoffs_of(c);
  return o;
}

// Runs one Euler evolution, writes its files under `prefix` and records checks.
// For non-smooth data the two-sided sup drift is informational: bilinear
// interpolation rounds off peaks, which sup_bound still bounds from above.
void euler_experiment(Context& cx, const SampledField& z0, const Forcing& phi,
                      const std::string& prefix, bool flow_checks, bool smooth = true) {
  const RunConfig& c = cx.cfg;
  const EulerOptions opt = euler_options(c);
  const auto tr = stage("euler_solve", [&] { return euler_solve(z0, phi, opt); });
  const auto diag = stage("diagnostics", [&] { return diagnostics(tr); });
  for (const auto& k : diag) {
    if (smooth || k.name != "sup_drift") {
      cx.check(k);
      continue;
    }
    auto info = make_check(k.name, k.grid, k.lhs, k.rhs);
    info.time = k.time;
    cx.check(info);
  }
  const Index n = z0.domain.nx();
  if (parse_witness_kind(c.witness) == WitnessKind::eigen_sine && !phi && prefix.empty()) {
    double dev = 0.0;
    for (const auto& s : tr.states) dev = std::max(dev, (s.zeta.values - z0.values).abs().maxCoeff());
    cx.check(make_check("steady_deviation", n, dev, z0.sup(), 0.02));
  }
  cx.check(make_check("grazing_fraction", n, double(tr.grazing), double(tr.traces), 1e-3));

  json traj = {{"times", json::array()},
               {"B", tr.B},
               {"T", tr.T},
               {"c1", kCalibratedC1},
               {"c2", holder_c2(z0.domain.diameter())},
               {"delta", std::exp(-kCalibratedC1 * tr.B * tr.T)},
               {"sup", tr.sup},
               {"cstar", tr.cstar},
               {"bstar", tr.bstar},
               {"dstar", tr.dstar},
               {"forcing_integral", tr.forcing_integral},
               {"windows", json::array()},
               {"fields", json::array()}};
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    const std::string name = prefix + "zeta_" + std::to_string(k) + ".field";
    cx.field(name, tr.states[k].zeta);
    traj["times"].push_back(tr.states[k].t);
    traj["fields"].push_back(name);
  }
  for (const auto& w : tr.windows)
    traj["windows"].push_back(
        {{"t0", w.t0}, {"t1", w.t1}, {"iterations", w.iterations}, {"residuals", w.residuals}});

  if (flow_checks) {
    const int steps = std::max(1, int(std::ceil(256.0 * tr.T - 1e-9)));
    const auto U = stage("flow_map", [&] {
      return flow_map(tr.velocity, tr.T, 0.0, steps, z0.domain.spacing() / 16.0);
    });
    cx.check(make_check("det_deviation", n, U.det_deviation, 1.0, 0.02));
    if (tr.B > 0.0) {
      const auto pairs = sample_pairs(z0.domain, 10000, 2);
      const auto h = holder_check(U.U, pairs, kCalibratedC1, tr.B, tr.T);
      cx.check(make_check("holder_fraction", n, 0.99, h.fraction, 1.0));
      traj["holder"] = {{"fraction", h.fraction}, {"K", h.K}, {"delta", h.delta}, {"pairs", h.pairs}};
    }
    traj["det_deviation"] = U.det_deviation;
    traj["flow_map_grazing"] = U.grazing;
  }
  cx.json_file(prefix + "trajectory.json", traj);
  std::ostringstream os;
  write_diagnostics_csv(os, tr, diag);
  cx.text(prefix + "diagnostics.csv", os.str());
}

void run_euler(Context& cx) {
  const RunConfig& c = cx.cfg;
  const Domain d = Domain::unit_square(c.grid);
  const SampledField z0 = stage("witness", [&] { return make_witness(d, witness_of(c)); });
  const auto kind = parse_witness_kind(c.witness);
  const bool smooth = kind == WitnessKind::eigen_sine || kind == WitnessKind::constant ||
                      kind == WitnessKind::linear;
  euler_experiment(cx, z0, forcing_of(c), "", c.flow_map, smooth);
}

void suite_embeddings(Context& cx) {
  const RunConfig& c = cx.cfg;
  const Domain d = Domain::unit_square(257);
  const double h = d.spacing();
  const double rho = c.rho.value_or(0.5 * d.diameter());
  // Five halvings of the lower cutoff on one grid, down to 2 h.
  std::vector<double> lows;
  for (int k = 5; k >= 0; --k) lows.push_back(2.0 * h * std::pow(2.0, k));
  auto sweep = [&](WitnessKind kind, WitnessParams p) {
    return stage("cstar_cutoff_sweep",
                 [&] { return cstar_cutoff_sweep(make_witness(d, kind, p), lows, rho); });
  };
  const auto strong = sweep(WitnessKind::holderlog, {.alpha = 2.0});
  const auto weak = sweep(WitnessKind::holderlog, {.alpha = 0.5});
  const auto logr = sweep(WitnessKind::log_reciprocal, {});
  const Index n = d.nx();
  const std::size_t m = lows.size();
  cx.check(make_check("holderlog2_tail", n, strong[m - 1] - strong[m - 2], strong[m - 1], 0.05));
  int accel = 0;
  for (std::size_t k = 2; k < m; ++k)
    if (!(strong[k] - strong[k - 1] < strong[k - 1] - strong[k - 2])) ++accel;
  cx.check(make_check("holderlog2_decelerating", n, accel, 1.0, 0.0));
  double inc_weak = 1e300, inc_log = 1e300;
  for (std::size_t k = 1; k < m; ++k) {
    inc_weak = std::min(inc_weak, weak[k] - weak[k - 1]);
    inc_log = std::min(inc_log, logr[k] - logr[k - 1]);
  }
  cx.check(make_check("holderlog05_divergence", n, 0.05, inc_weak, 1.0));
  cx.check(make_check("log_reciprocal_divergence", n, 0.05, inc_log, 1.0));
  // The log-reciprocal witness has a finite D^{0,1} semi-norm.
  const double d01 = seminorm_holderlog(make_witness(d, WitnessKind::log_reciprocal), 1.0);
  cx.check(make_check("log_reciprocal_holderlog1", n, d01, 1.0));
  std::ostringstream os;
  os.precision(17);
  os << "r_lo,holderlog2,holderlog05,log_reciprocal\n";
  for (std::size_t k = 0; k < m; ++k)
    os << lows[k] << ',' << strong[k] << ',' << weak[k] << ',' << logr[k] << '\n';
  cx.text("sweep.csv", os.str());
}

void suite_regularity(Context& cx) {
  const RunConfig& c = cx.cfg;
  const std::vector<Index> grids{33, 65, 129, 257, 513};
  StudyOptions so;
  so.cutoffs = cutoffs_of(c);
  if (!so.cutoffs.rho) so.cutoffs.rho = 0.25;
  const auto hess = stage("regularity_ratio_study", [&] {
    return regularity_ratio_study(StudyKind::laplace_hessian,
                                  {WitnessKind::log_reciprocal, {.mode = 2}}, grids, so);
  });
  int drops = 0;
  for (std::size_t k = 1; k < hess.checks.size(); ++k)
    if (!(hess.checks[k].lhs > hess.checks[k - 1].lhs)) ++drops;
  cx.check(make_check("hessian_monotone", 0, drops, 1.0, 0.0));
  cx.check(make_check("hessian_slope", 0, 1e-3, hess.slope, 1.0));
  cx.check(make_check("hessian_fit_r2", 0, 0.9, hess.r2, 1.0));
  const auto c2 = stage("regularity_ratio_study", [&] {
    return regularity_ratio_study(StudyKind::laplace_c2,
                                  {WitnessKind::eigen_sine, {.value = 1.0}}, grids, so);
  });
  cx.check(make_check("cstar_ratio_variation", 0, c2.variation, 0.10, 1.0));
  const std::vector<Index> sg{65, 129, 257};
  const auto st = stage("regularity_ratio_study", [&] {
    return regularity_ratio_study(StudyKind::stokes_lipschitz,
                                  {WitnessKind::bump_cascade, {.depth = 3, .ratio = 2.0}}, sg, so);
  });
  cx.check(make_check("stokes_lipschitz_variation", 0, st.variation, 0.25, 1.0));
  std::vector<EstimateCheck> rows;
  for (const auto* r : {&hess, &c2, &st}) rows.insert(rows.end(), r->checks.begin(), r->checks.end());
  for (const auto& r : rows) cx.check(r);
  std::ostringstream os;
  write_csv(os, rows);
  cx.text("study.csv", os.str());
  cx.json_file("report.json", {{"hessian_slope", hess.slope},
                               {"hessian_r2", hess.r2},
                               {"cstar_variation", c2.variation},
                               {"stokes_variation", st.variation}});
}

void suite_transport(Context& cx) {
  const RunConfig& c = cx.cfg;
  // Composition lemma on radial delta-Holder maps.
  const Domain dc = Domain::unit_square(65);
  SeminormOptions so;
  so.cutoffs = cutoffs_of(c);
  so.bstar = so.dstar = false;
  for (double delta : {1.0, 0.75, 0.5}) {
    const auto U = radial_holder_map(dc, Point(0.5, 0.5), delta);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto a = random_smooth_field(dc, seed);
      const double lhs = stage("compose", [&] { return seminorm_report(compose(a, U), so).cstar; });
      const double rhs = seminorm_report(a, so).cstar / delta;
      std::ostringstream name;
      name << "composition_delta_" << delta;
      cx.check(make_check(name.str(), dc.nx(), lhs, rhs, 1.05));
    }
  }
  // B* transport of a bump cascade by the Euler flow it induces.
  const Domain d = Domain::unit_square(c.grid);
  const SampledField z0 =
      stage("witness", [&] { return make_witness(d, WitnessKind::bump_cascade, c.params); });
  euler_experiment(cx, z0, {}, "bump_", false, false);
}

void write_checks(Context& cx) {
  std::ostringstream os;
  os << "name,grid,time,lhs,rhs,constant,pass\n";
  os.precision(17);
  for (const auto& k : cx.checks)
    os << k.name << ',' << k.grid << ',' << k.time << ',' << k.lhs << ',' << k.rhs << ','
       << k.constant << ',' << (!k.pass ? "false" : (k.skipped ? "skipped" : "true")) << '\n';
  cx.text("checks.csv", os.str());
}

std::string read_bytes(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

json to_json(const RunManifest& m) {
  json checks = json::array();
  for (std::size_t k = 0; k < m.checks.size(); ++k) {
    const auto& c = m.checks[k];
    const auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    checks.push_back({{"name", c.name},
                      {"grid", c.grid},
                      {"time", c.time},
                      {"lhs", num(c.lhs)},
                      {"rhs", num(c.rhs)},
                      {"constant", num(c.constant)},
                      {"ceiling", num(c.ceiling)},
                      {"pass", c.pass},
                      {"skipped", c.skipped},
                      {"gating", bool(m.gating[k])}});
  }
  return {{"tool", "dinilab"},
          {"version", m.version},
          {"command", m.command},
          {"config_hash", m.config_hash},
          {"fingerprint", m.fingerprint},
          {"threads", m.threads},
          {"wall_seconds", m.wall_seconds},
          {"checks", checks},
          {"files", m.files},
          {"pass", m.pass}};
}

RunManifest run(const RunConfig& config) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();
  Context cx{config, fs::path(config.out), {}, {}};
  fs::create_directories(cx.dir);

  json canon = to_json(config);
  cx.json_file("config.json", canon);
  canon.erase("out");

  switch (config.command) {
    case Command::seminorm: run_seminorm(cx); break;
    case Command::poisson: run_poisson(cx); break;
    case Command::stokes: run_stokes(cx); break;
    case Command::euler: run_euler(cx); break;
    case Command::study:
      if (config.suite == "embeddings") suite_embeddings(cx);
      else if (config.suite == "regularity") suite_regularity(cx);
      else suite_transport(cx);
      break;
  }
  write_checks(cx);

  RunManifest m;
  m.command = to_string(config.command);
  m.threads = config.threads;
  m.dir = cx.dir;
  m.config_hash = hex64(fnv1a(canon.dump()));
  m.checks = cx.checks;
  std::set<std::string> names;
  for (const auto& c : m.checks) names.insert(c.name);
  for (const auto& g : config.gating)
    if (!names.contains(g))
      throw invalid_argument("config: field 'gating' names unknown check '" + g + "'");
  for (const auto& c : m.checks) {
    const bool gate = config.gating.empty()
                          ? std::isfinite(c.ceiling)
                          : std::find(config.gating.begin(), config.gating.end(), c.name) !=
                                config.gating.end();
    m.gating.push_back(gate);
    if (gate && !c.pass) m.pass = false;
  }
  std::sort(cx.files.begin(), cx.files.end());
  m.files = cx.files;
  // The output directory appears only in config.json, which the config hash covers.
  std::uint64_t h = fnv1a("dinilab");
  for (const auto& f : m.files) {
    if (f == "config.json") continue;
    h = fnv1a(f, h);
    h = fnv1a(read_bytes(cx.dir / f), h);
  }
  m.fingerprint = hex64(h);
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ofstream os(cx.dir / "manifest.json");
  os << to_json(m).dump(2) << '\n';
  if (!os) throw std::runtime_error("cannot write manifest.json");
  return m;
}

}  // namespace dini
