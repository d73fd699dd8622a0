#pragma once

#include "dini/grid.hpp"
#include "dini/witness.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dini {

enum class Command { seminorm, poisson, stokes, euler, study };
Command parse_command(std::string_view s);
std::string to_string(Command c);

struct RunConfig {
  Command command = Command::seminorm;
  Index grid = 129;
  std::vector<Index> grids{33, 65, 129};  ///< poisson / stokes refinement studies
  Shape shape = Shape::square;
  std::string witness = "eigen_sine";  ///< witness kind, or "manufactured" for stokes
  WitnessParams params;
  std::optional<double> r_lo;  ///< unset: 2 h
  std::optional<double> rho;   ///< unset: R / 2
  int nodes = 128;
  double tol = 1e-10;
  double t_final = 1.0;
  double window = 0.25;
  int steps_per_window = 16;
  double forcing = 0.0;  ///< amplitude of phi = a cos(2t) sin(pi x) sin(pi y)
  bool flow_map = true;  ///< euler: Jacobian and Holder checks of U(0, T, .)
  std::string suite = "embeddings";
  std::string out = "out";
  int threads = 1;
  /// Names of checks that decide the exit status; empty means the command's
  /// default set.
  std::vector<std::string> gating;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Output directory default: $DINILAB_OUT if set, else "out".
std::string default_out_dir();

/// Validates and fills defaults. Unknown keys raise invalid_argument naming
/// the key; invalid values raise invalid_argument naming the field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_file(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& c);

/// Throws invalid_argument naming the field when an invariant fails.
void validate(const RunConfig& c);

/// 2^k + 1 for some k >= 1.
bool power_of_two_plus_one(Index n);

}  // namespace dini
