#include "dini/config.hpp"

#include "dini/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

namespace dini {

namespace {

using json = nlohmann::json;

const std::set<std::string> kTopKeys = {
    "command", "grid",   "grids",  "shape",    "witness",          "params",
    "r_lo",    "rho",    "nodes",  "tol",      "t_final",          "window",
    "steps_per_window",  "forcing", "flow_map", "suite",  "out",   "threads", "gating"};
const std::set<std::string> kParamKeys = {"value", "a",     "b",     "lambda", "alpha",
                                          "mode",  "depth", "ratio", "center"};

void reject_unknown(const json& j, const std::set<std::string>& keys, const std::string& prefix) {
  if (!j.is_object()) throw invalid_argument("config: '" + prefix + "' must be an object");
  for (const auto& [k, v] : j.items())
    if (!keys.contains(k)) throw invalid_argument("config: unknown key '" + prefix + k + "'");
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& prefix = "") {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw invalid_argument("config: field '" + prefix + key + "' has the wrong type");
  }
}

void read_opt(const json& j, const char* key, std::optional<double>& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (v.is_null() || (v.is_string() && v.get<std::string>() == "auto")) {
    out.reset();
    return;
  }
  if (!v.is_number()) throw invalid_argument(std::string("config: field '") + key + "' must be a number, null or \"auto\"");
  out = v.get<double>();
}

void fail(const std::string& field, const std::string& why) {
  throw invalid_argument("config: field '" + field + "' " + why);
}

bool uses_sine_transform(const RunConfig& c) {
  return c.command == Command::poisson || c.command == Command::euler ||
         (c.command == Command::study && c.suite != "embeddings");
}

}  // namespace

Command parse_command(std::string_view s) {
  if (s == "seminorm") return Command::seminorm;
  if (s == "poisson") return Command::poisson;
  if (s == "stokes") return Command::stokes;
  if (s == "euler") return Command::euler;
  if (s == "study") return Command::study;
  throw invalid_argument("config: field 'command' has unknown value '" + std::string(s) + "'");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::seminorm: return "seminorm";
    case Command::poisson: return "poisson";
    case Command::stokes: return "stokes";
    case Command::euler: return "euler";
    case Command::study: return "study";
  }
  return "?";
}

bool power_of_two_plus_one(Index n) {
  const Index m = n - 1;
  return m >= 2 && (m & (m - 1)) == 0;
}

std::string default_out_dir() {
  const char* e = std::getenv("DINILAB_OUT");
  return (e && *e) ? std::string(e) : std::string("out");
}

void validate(const RunConfig& c) {
  if (c.grid < 3) fail("grid", "must be >= 3");
  if (uses_sine_transform(c) && !power_of_two_plus_one(c.grid))
    fail("grid", "is " + std::to_string(c.grid) +
                     "; the sine-transform Poisson solver needs 2^k + 1 nodes per side");
  if (c.command == Command::poisson || c.command == Command::stokes) {
    if (c.grids.size() < 3) fail("grids", "needs at least three sizes");
    for (std::size_t k = 0; k < c.grids.size(); ++k) {
      if (c.grids[k] < 5) fail("grids", "sizes must be >= 5");
      if (k > 0 && c.grids[k] <= c.grids[k - 1]) fail("grids", "must increase");
      if (c.command == Command::poisson && !power_of_two_plus_one(c.grids[k]))
        fail("grids", "contains " + std::to_string(c.grids[k]) +
                          "; the sine-transform Poisson solver needs 2^k + 1 nodes per side");
    }
  }
  if (c.shape == Shape::disk && c.command != Command::seminorm)
    fail("shape", "disk domains are supported by the seminorm command only");
  if (c.witness != "manufactured") {
    try {
      parse_witness_kind(c.witness);
    } catch (const std::invalid_argument&) {
      fail("witness", "has unknown value '" + c.witness + "'");
    }
  } else if (c.command != Command::stokes) {
    fail("witness", "'manufactured' is available for stokes only");
  }
  if (!(c.tol > 0.0)) fail("tol", "must be > 0");
  if (c.r_lo && !(*c.r_lo > 0.0)) fail("r_lo", "must be > 0");
  if (c.rho && !(*c.rho > 0.0)) fail("rho", "must be > 0");
  if (c.r_lo && c.rho && !(*c.rho > *c.r_lo)) fail("rho", "must exceed r_lo");
  if (c.nodes < 2) fail("nodes", "must be >= 2");
  if (!(c.t_final > 0.0)) fail("t_final", "must be > 0");
  if (!(c.window > 0.0)) fail("window", "must be > 0");
  if (c.steps_per_window < 1) fail("steps_per_window", "must be >= 1");
  if (c.threads < 1) fail("threads", "must be >= 1");
  if (c.suite != "embeddings" && c.suite != "regularity" && c.suite != "transport")
    fail("suite", "must be embeddings, regularity or transport");
  if (c.out.empty()) fail("out", "must not be empty");
}

RunConfig parse_config(const json& j) {
  RunConfig c;
  c.out = default_out_dir();
  if (j.is_null()) {
    validate(c);
    return c;
  }
  reject_unknown(j, kTopKeys, "");
  std::string s;
  if (j.contains("command")) {
    read(j, "command", s);
    c.command = parse_command(s);
  }
  read(j, "grid", c.grid);
  read(j, "grids", c.grids);
  if (j.contains("shape")) {
    read(j, "shape", s);
    if (s == "square") c.shape = Shape::square;
    else if (s == "disk") c.shape = Shape::disk;
    else fail("shape", "must be square or disk");
  }
  read(j, "witness", c.witness);
  if (j.contains("params")) {
    const auto& p = j.at("params");
    reject_unknown(p, kParamKeys, "params.");
    read(p, "value", c.params.value, "params.");
    read(p, "a", c.params.a, "params.");
    read(p, "b", c.params.b, "params.");
    read(p, "lambda", c.params.lambda, "params.");
    read(p, "alpha", c.params.alpha, "params.");
    read(p, "mode", c.params.mode, "params.");
    read(p, "depth", c.params.depth, "params.");
    read(p, "ratio", c.params.ratio, "params.");
    if (p.contains("center") && !p.at("center").is_null()) {
      std::vector<double> xy;
      read(p, "center", xy, "params.");
      if (xy.size() != 2) fail("params.center", "must be [x, y]");
      c.params.center = Point(xy[0], xy[1]);
    }
  }
  read_opt(j, "r_lo", c.r_lo);
  read_opt(j, "rho", c.rho);
  read(j, "nodes", c.nodes);
  read(j, "tol", c.tol);
  read(j, "t_final", c.t_final);
  read(j, "window", c.window);
  read(j, "steps_per_window", c.steps_per_window);
  read(j, "forcing", c.forcing);
  read(j, "flow_map", c.flow_map);
  read(j, "suite", c.suite);
  read(j, "out", c.out);
  read(j, "threads", c.threads);
  read(j, "gating", c.gating);
  validate(c);
  return c;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw invalid_argument("config: cannot open " + path.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw invalid_argument("config: " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json p = {{"value", c.params.value}, {"a", c.params.a},         {"b", c.params.b},
            {"lambda", c.params.lambda}, {"alpha", c.params.alpha}, {"mode", c.params.mode},
            {"depth", c.params.depth}, {"ratio", c.params.ratio}};
  p["center"] = c.params.center ? json::array({c.params.center->x(), c.params.center->y()})
                                : json(nullptr);
  return {{"command", to_string(c.command)},
          {"grid", c.grid},
          {"grids", c.grids},
          {"shape", c.shape == Shape::disk ? "disk" : "square"},
          {"witness", c.witness},
          {"params", p},
          {"r_lo", opt(c.r_lo)},
          {"rho", opt(c.rho)},
          {"nodes", c.nodes},
          {"tol", c.tol},
          {"t_final", c.t_final},
          {"window", c.window},
          {"steps_per_window", c.steps_per_window},
          {"forcing", c.forcing},
          {"flow_map", c.flow_map},
          {"suite", c.suite},
          {"out", c.out},
          {"threads", c.threads},
          {"gating", c.gating}};
}

}  // namespace dini
