#pragma once

#include "dini/config.hpp"
#include "dini/estimate.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dini {

inline constexpr const char* kToolVersion = "0.1.0";

/// A downstream failure, tagged with the experiment stage that raised it.
class stage_error : public std::runtime_error {
 public:
  stage_error(std::string stage, const std::string& what)
      : std::runtime_error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct RunManifest {
  std::string command;
  std::string version = kToolVersion;
  std::string config_hash;  ///< FNV-1a of the canonical config, output directory excluded
  std::string fingerprint;  ///< FNV-1a of every numerical output file
  int threads = 1;
  double wall_seconds = 0.0;
  std::vector<EstimateCheck> checks;
  std::vector<bool> gating;        ///< parallel to checks
  std::vector<std::string> files;  ///< relative to dir, sorted; the manifest itself excluded
  std::filesystem::path dir;
  bool pass = true;  ///< conjunction of the gating checks
};

nlohmann::json to_json(const RunManifest& m);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

/// Runs the configured experiment, writes its files and manifest.json into
/// config.out and returns the manifest.
RunManifest run(const RunConfig& config);

}  // namespace dini
