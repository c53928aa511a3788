#include "morphcomp/report.hpp"

namespace morph {

nlohmann::json to_json(const MeasureReport& report) {
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [m, v] : report.values()) values[std::string(measure_name(m))] = v;
  return {{"values", values},
          {"parameters", report.parameters},
          {"sample_count", report.sample_count},
          {"seed", report.seed}};
}

nlohmann::json to_json(const rotator::Config& c) {
  const auto binner = [](const Binner& b) {
    return nlohmann::json{{"low", b.low}, {"high", b.high}, {"bins", b.bins}};
  };
  return {{"f_max", c.f_max},
          {"f_min", c.f_min},
          {"theta_dot_target", c.theta_dot_target},
          {"mass", c.mass},
          {"length", c.length},
          {"gravity", c.gravity},
          {"friction", c.friction},
          {"eta", c.eta},
          {"beta", c.beta},
          {"steps", c.steps},
          {"control_dt", c.control_dt},
          {"substeps", c.substeps},
          {"theta0", c.theta0},
          {"theta_dot0", c.theta_dot0},
          {"record_noisy_sensor", c.record_noisy_sensor},
          {"sensor_bins", binner(c.sensor_bins)},
          {"action_bins", binner(c.action_bins)},
          {"seed", c.seed}};
}

nlohmann::json to_json(const binary::Grid& g) {
  return {{"phi", g.phi}, {"psi", g.psi}, {"mu", g.mu}, {"zeta", g.zeta}, {"tau", g.tau}};
}

nlohmann::json to_json(const rotator::Grid& g) {
  return {{"eta", g.eta}, {"beta", g.beta}, {"runs", g.runs}};
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command}, {"config", config},   {"tool_version", tool_version},
          {"seed", seed},       {"outputs", outputs}, {"argv", argv}};
}

}  // namespace morph
