#pragma once

// JSON serialization of measure reports and run manifests.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "morphcomp/binary_model.hpp"
#include "morphcomp/measures.hpp"
#include "morphcomp/rotator.hpp"

namespace morph {

nlohmann::json to_json(const MeasureReport& report);
nlohmann::json to_json(const rotator::Config& config);
nlohmann::json to_json(const binary::Grid& grid);
nlohmann::json to_json(const rotator::Grid& grid);

/// Everything needed to regenerate a command's outputs.
struct RunManifest {
  std::string command;  // measure | binary-sweep | rotator-run | rotator-sweep
  nlohmann::json config;
  std::string tool_version = MORPHCOMP_VERSION;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  std::vector<std::string> argv;

  nlohmann::json to_json() const;
};

}  // namespace morph
