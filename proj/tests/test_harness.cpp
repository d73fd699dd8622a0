#include "dini/config.hpp"
#include "dini/errors.hpp"
#include "dini/euler.hpp"
#include "dini/harness.hpp"
#include "dini/io.hpp"
#include "dini/witness.hpp"

#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

using namespace dini;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("dinilab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string message_of(const json& j) {
  try {
    parse_config(j);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
}

RunConfig config_for(const json& j, const fs::path& out) {
  json k = j;
  k["out"] = out.string();
  return parse_config(k);
}

}  // namespace

TEST_CASE("config: empty input gives the defaults") {
  const auto c = parse_config(json::object());
  CHECK(c.command == Command::seminorm);
  CHECK(c.grid == 129);
  CHECK_FALSE(c.r_lo.has_value());
  CHECK_FALSE(c.rho.has_value());
  CHECK(c.tol == 1e-10);
  CHECK(c.threads == 1);
  CHECK(parse_config(json(nullptr)) == c);
}

TEST_CASE("config: serialization round-trips") {
  const json j = {{"command", "euler"},
                  {"grid", 65},
                  {"witness", "bump_cascade"},
                  {"params", {{"depth", 4}, {"ratio", 1.8}, {"center", {0.4, 0.6}}}},
                  {"r_lo", 0.0123456789},
                  {"rho", "auto"},
                  {"tol", 3e-11},
                  {"t_final", 0.75},
                  {"forcing", 1.5},
                  {"gating", {"sup_bound"}},
                  {"out", "somewhere"}};
  const auto c = parse_config(j);
  CHECK(c.params.depth == 4);
  CHECK(c.params.center.has_value());
  const auto again = parse_config(to_json(c));
  CHECK(again == c);
  CHECK(to_json(again) == to_json(c));
  CHECK(parse_config(json::parse(to_json(c).dump())) == c);
}

TEST_CASE("config: unknown keys are named") {
  CHECK(message_of({{"grdi", 65}}).find("'grdi'") != std::string::npos);
  CHECK(message_of({{"params", {{"alfa", 1.0}}}}).find("'params.alfa'") != std::string::npos);
}

TEST_CASE("config: invalid values name the field") {
  const auto m = message_of({{"command", "poisson"}, {"grid", 100}});
  CHECK(m.find("'grid'") != std::string::npos);
  CHECK(m.find("2^k + 1") != std::string::npos);
  CHECK(message_of({{"command", "poisson"}, {"grids", {33, 100, 129}}}).find("'grids'") !=
        std::string::npos);
  // The semi-norm command has no transform constraint.
  CHECK_NOTHROW(parse_config({{"command", "seminorm"}, {"grid", 100}}));
  CHECK(message_of({{"tol", 0.0}}).find("'tol'") != std::string::npos);
  CHECK(message_of({{"tol", "small"}}).find("'tol'") != std::string::npos);
  CHECK(message_of({{"r_lo", 0.3}, {"rho", 0.2}}).find("'rho'") != std::string::npos);
  CHECK(message_of({{"witness", "spiral"}}).find("'witness'") != std::string::npos);
  CHECK(message_of({{"command", "euler"}, {"shape", "disk"}}).find("'shape'") !=
        std::string::npos);
  CHECK(message_of({{"command", "jump"}}).find("'command'") != std::string::npos);
}

TEST_CASE("config: output directory default comes from the environment") {
  ::setenv("DINILAB_OUT", "/tmp/elsewhere", 1);
  CHECK(parse_config(json::object()).out == "/tmp/elsewhere");
  ::unsetenv("DINILAB_OUT");
  CHECK(parse_config(json::object()).out == "out");
}

TEST_CASE("config: from a file") {
  const auto dir = scratch("cfgfile");
  std::ofstream(dir / "c.json") << R"({"command": "study", "suite": "regularity"})";
  const auto c = parse_config_file(dir / "c.json");
  CHECK(c.command == Command::study);
  CHECK(c.suite == "regularity");
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(parse_config_file(dir / "bad.json"), invalid_argument);
}

TEST_CASE("io: field round trip is bitwise") {
  const auto dir = scratch("field");
  const auto d = Domain(0.25, -1.0, 0.1, 0.3, 7, 5);
  const auto f = random_smooth_field(d, 11);
  write_field(f, dir / "f.field");
  const auto g = read_field(dir / "f.field");
  CHECK(g.domain.same_grid(d));
  CHECK((g.values == f.values).all());
  // Header line, then little-endian payload with x fastest.
  const auto bytes = slurp(dir / "f.field");
  const auto nl = bytes.find('\n');
  CHECK(json::parse(bytes.substr(0, nl)).at("dtype") == "f64-le");
  CHECK(bytes.size() - nl - 1 == 7 * 5 * 8);
  double first;
  std::memcpy(&first, bytes.data() + nl + 1 + 8, 8);
  CHECK(first == f.values(1, 0));
}

TEST_CASE("io: disk mask survives the round trip") {
  const auto dir = scratch("mask");
  const auto d = Domain::disk(Point(0.5, 0.5), 0.5, 33);
  const auto f = make_witness(d, WitnessKind::holder, {});
  write_field(f, dir / "disk.field");
  const auto g = read_field(dir / "disk.field");
  REQUIRE(g.domain.masked());
  CHECK((*g.domain.mask() == *d.mask()).all());
  CHECK(g.domain.diameter() == d.diameter());
}

TEST_CASE("io: truncated or malformed files are corrupt") {
  const auto dir = scratch("corrupt");
  const auto f = random_smooth_field(Domain::unit_square(9), 1);
  write_field(f, dir / "f.field");
  auto bytes = slurp(dir / "f.field");
  std::ofstream(dir / "short.field", std::ios::binary) << bytes.substr(0, bytes.size() - 3);
  CHECK_THROWS_AS(read_field(dir / "short.field"), corrupt_file);
  std::ofstream(dir / "long.field", std::ios::binary) << bytes << "xx";
  CHECK_THROWS_AS(read_field(dir / "long.field"), corrupt_file);
  std::ofstream(dir / "nohdr.field", std::ios::binary) << "garbage";
  CHECK_THROWS_AS(read_field(dir / "nohdr.field"), corrupt_file);
  std::ofstream(dir / "badhdr.field", std::ios::binary) << "{\"nx\": 3}\n";
  CHECK_THROWS_AS(read_field(dir / "badhdr.field"), corrupt_file);
}

TEST_CASE("io: staggered vector field round trip") {
  const auto dir = scratch("vector");
  const auto d = Domain::unit_square(9);
  const auto v = sample_vector(d, [](double x, double y) { return x * y; },
                               [](double x, double y) { return x - y; });
  const auto manifest = write_vector_field(v, dir, "u");
  const auto w = read_vector_field(manifest);
  CHECK((w.v1 == v.v1).all());
  CHECK((w.v2 == v.v2).all());
}

TEST_CASE("run: constant witness gives zero semi-norms and passes") {
  const auto dir = scratch("const");
  const auto m = run(config_for({{"witness", "constant"}, {"grid", 33}}, dir));
  CHECK(m.pass);
  const auto rep = json::parse(slurp(dir / "report.json"));
  CHECK(rep.at("cstar") == 0.0);
  CHECK(rep.at("bstar") == 0.0);
  CHECK(rep.at("dstar") == 0.0);
  for (const auto& c : m.checks) CHECK(c.lhs == 0.0);
}

TEST_CASE("run: every listed file exists and parses") {
  const auto dir = scratch("complete");
  const auto m = run(config_for({{"command", "stokes"}, {"witness", "manufactured"},
                                 {"grids", {17, 33, 65}}}, dir));
  CHECK_FALSE(m.files.empty());
  for (const auto& f : m.files) {
    const auto p = dir / f;
    REQUIRE(fs::exists(p));
    if (p.extension() == ".field") CHECK_NOTHROW(read_field(p));
    if (p.extension() == ".json") CHECK(json::parse(slurp(p)).is_object());
    if (p.extension() == ".csv") CHECK(slurp(p).find('\n') != std::string::npos);
  }
  const auto mj = json::parse(slurp(dir / "manifest.json"));
  CHECK(mj.at("files").size() == m.files.size());
  CHECK(mj.at("threads") == 1);
}

TEST_CASE("run: identical configs give identical manifests") {
  const json cfg = {{"command", "seminorm"}, {"witness", "holderlog"}, {"grid", 41}};
  const auto a = run(config_for(cfg, scratch("det_a")));
  const auto b = run(config_for(cfg, scratch("det_b")));
  CHECK(a.fingerprint == b.fingerprint);
  CHECK(a.config_hash == b.config_hash);
  auto ja = to_json(a), jb = to_json(b);
  ja.erase("wall_seconds");
  jb.erase("wall_seconds");
  CHECK(ja == jb);
  const auto c = run(config_for({{"command", "seminorm"}, {"witness", "holderlog"}, {"grid", 41},
                                 {"params", {{"alpha", 1.5}}}}, scratch("det_c")));
  CHECK(c.fingerprint != a.fingerprint);
  CHECK(c.config_hash != a.config_hash);
}

TEST_CASE("run: poisson eigenfunction study") {
  const auto m = run(config_for({{"command", "poisson"}, {"witness", "eigen_sine"}}, scratch("poisson")));
  CHECK(m.pass);
  int orders = 0;
  for (const auto& c : m.checks)
    if (c.name == "convergence_order") {
      ++orders;
      CHECK(c.rhs >= 1.9);
    }
  CHECK(orders == 2);
}

TEST_CASE("run: exit status is the conjunction of gating checks") {
  // On 17 -> 33 the pressure is not yet in its asymptotic range.
  const json cfg = {{"command", "stokes"}, {"witness", "manufactured"}, {"grids", {17, 33, 65}}};
  const auto all = run(config_for(cfg, scratch("gate_all")));
  bool failed = false;
  for (std::size_t k = 0; k < all.checks.size(); ++k)
    if (all.gating[k] && !all.checks[k].pass) failed = true;
  CHECK(failed);
  CHECK_FALSE(all.pass);
  json some = cfg;
  some["gating"] = {"divergence", "velocity_order"};
  CHECK(run(config_for(some, scratch("gate_some"))).pass);
  json bad = cfg;
  bad["gating"] = {"no_such_check"};
  CHECK_THROWS_AS(run(config_for(bad, scratch("gate_bad"))), invalid_argument);
}

TEST_CASE("run: downstream errors carry the stage name") {
  try {
    run(config_for({{"grid", 3}, {"rho", 0.1}}, scratch("stage")));
    FAIL("expected stage_error");
  } catch (const stage_error& e) {
    CHECK(e.stage() == "seminorm_report");
  }
}

TEST_CASE("run: euler eigenvortex conserves the sup norm") {
  const auto dir = scratch("euler");
  const auto m = run(config_for({{"command", "euler"}, {"grid", 33}, {"t_final", 0.5},
                                 {"flow_map", false}}, dir));
  CHECK(m.pass);
  bool seen = false;
  for (const auto& c : m.checks)
    if (c.name == "sup_drift") {
      seen = true;
      CHECK(c.pass);
    }
  CHECK(seen);
  const auto tr = json::parse(slurp(dir / "trajectory.json"));
  CHECK(tr.at("times").size() == 3);
  CHECK(tr.at("c1") == kCalibratedC1);
  CHECK(fs::exists(dir / "diagnostics.csv"));
  CHECK(read_field(dir / "zeta_2.field").domain.nx() == 33);
}
