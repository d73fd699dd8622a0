#include "dini/config.hpp"
#include "dini/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using json = nlohmann::json;

namespace {

// Flags that were given on the command line, keyed by config field.
struct Overrides {
  std::map<std::string, std::optional<double>> numbers;
  std::map<std::string, std::optional<long>> integers;
  std::map<std::string, std::optional<std::string>> strings;
  std::map<std::string, std::optional<double>> params;
  std::map<std::string, std::optional<long>> int_params;
  std::optional<std::vector<long>> grids;
  std::vector<std::string> gating;
  bool no_flow_map = false;

  void apply(json& j) const {
    for (const auto& [k, v] : numbers)
      if (v) j[k] = *v;
    for (const auto& [k, v] : integers)
      if (v) j[k] = *v;
    for (const auto& [k, v] : strings)
      if (v) j[k] = *v;
    for (const auto& [k, v] : params)
      if (v) j["params"][k] = *v;
    for (const auto& [k, v] : int_params)
      if (v) j["params"][k] = *v;
    if (grids) j["grids"] = *grids;
    if (!gating.empty()) j["gating"] = gating;
    if (no_flow_map) j["flow_map"] = false;
  }
};

void common(CLI::App* sub, Overrides& o) {
  sub->add_option("--grid", o.integers["grid"], "Nodes per side");
  sub->add_option("--r-lo", o.numbers["r_lo"], "Lower Dini cutoff (default 2h)");
  sub->add_option("--rho", o.numbers["rho"], "Upper Dini cutoff (default R/2)");
  sub->add_option("--nodes", o.integers["nodes"], "Quadrature nodes");
  sub->add_option("--tol", o.numbers["tol"], "Solver tolerance");
  sub->add_option("--out", o.strings["out"], "Output directory (default $DINILAB_OUT or out)");
  sub->add_option("--threads", o.integers["threads"], "Thread count");
  sub->add_option("--gate", o.gating, "Check names that decide the exit status");
}

void witness_params(CLI::App* sub, Overrides& o) {
  sub->add_option("--value", o.params["value"], "Constant value / eigen_sine amplitude");
  sub->add_option("--a", o.params["a"], "Linear witness x coefficient");
  sub->add_option("--b", o.params["b"], "Linear witness y coefficient");
  sub->add_option("--lambda", o.params["lambda"], "Holder exponent");
  sub->add_option("--alpha", o.params["alpha"], "Holderlog exponent");
  sub->add_option("--mode", o.int_params["mode"], "log_reciprocal angular mode");
  sub->add_option("--depth", o.int_params["depth"], "bump_cascade depth");
  sub->add_option("--ratio", o.params["ratio"], "bump_cascade radius ratio");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dini-continuity experiments: semi-norms, elliptic solvers and 2-D Euler"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override it")
      ->check(CLI::ExistingFile);
  Overrides o;

  auto* sem = app.add_subcommand("seminorm", "Modulus and Dini semi-norms of a witness");
  common(sem, o);
  sem->add_option("--witness", o.strings["witness"], "Witness kind");
  sem->add_option("--shape", o.strings["shape"], "square or disk");
  witness_params(sem, o);

  for (const char* name : {"poisson", "stokes"}) {
    auto* s = app.add_subcommand(name, std::string(name) + " refinement study");
    common(s, o);
    s->add_option("--data", o.strings["witness"], "Data witness kind (stokes: or manufactured)");
    s->add_option("--grids", o.grids, "Grid sizes, e.g. 33,65,129")->delimiter(',');
    witness_params(s, o);
  }

  auto* eu = app.add_subcommand("euler", "Picard construction of the 2-D Euler flow");
  common(eu, o);
  eu->add_option("--ic", o.strings["witness"], "Initial vorticity witness kind");
  eu->add_option("--t-final", o.numbers["t_final"], "Final time T");
  eu->add_option("--window", o.numbers["window"], "Picard window length");
  eu->add_option("--steps", o.integers["steps_per_window"], "Time levels per window");
  eu->add_option("--forcing", o.numbers["forcing"], "Amplitude a of phi = a cos 2t sin(pi x) sin(pi y)");
  eu->add_flag("--no-flow-map", o.no_flow_map, "Skip the Jacobian and Holder checks");
  witness_params(eu, o);

  auto* st = app.add_subcommand("study", "Acceptance suites");
  common(st, o);
  st->add_option("--suite", o.strings["suite"], "embeddings, regularity or transport")
      ->check(CLI::IsMember({"embeddings", "regularity", "transport"}));
  witness_params(st, o);

  CLI11_PARSE(app, argc, argv);

  try {
    json j = json::object();
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      j = json::parse(is);
    }
    j["command"] = app.get_subcommands().front()->get_name();
    o.apply(j);
    const auto cfg = dini::parse_config(j);
    const auto m = dini::run(cfg);
    for (std::size_t k = 0; k < m.checks.size(); ++k) {
      const auto& c = m.checks[k];
      std::cout << (c.pass ? "pass " : "FAIL ") << (m.gating[k] ? "[gate] " : "       ") << c.name
                << " grid=" << c.grid << " t=" << c.time << " lhs=" << c.lhs << " rhs=" << c.rhs
                << " C=" << c.constant << '\n';
    }
    std::cout << "manifest: " << (m.dir / "manifest.json").string() << "  fingerprint "
              << m.fingerprint << "  " << (m.pass ? "PASS" : "FAIL") << '\n';
    return m.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "dinilab: " << e.what() << '\n';
    return 2;
  }
}
