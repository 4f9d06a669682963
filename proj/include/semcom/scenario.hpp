#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "semcom/params.hpp"

namespace semcom {

struct Position {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Position&) const = default;
};

double distance(Position a, Position b);

/// One realized network: channel gains are linear and already include path
/// loss. Base station at the origin.
struct Scenario {
  SystemParams params;
  std::vector<double> cue_gain_bs;        // G_{i,B}, length M
  std::vector<double> due_gain_bs;        // G_{j,B}, length N
  std::vector<double> due_gain_internal;  // G_j^D, length N
  std::vector<double> cross_gain;         // G_{i,j}, row-major M x N
  std::vector<double> beta_cue;
  std::vector<double> beta_due;
  std::vector<double> theta_cue;
  std::vector<double> theta_due;
  std::vector<Position> cue_pos;
  std::vector<Position> due_tx_pos;
  std::vector<Position> due_rx_pos;

  std::size_t num_cues() const { return params.num_cues; }
  std::size_t num_dues() const { return params.num_dues; }
  double cross(std::size_t cue, std::size_t due) const { return cross_gain[cue * params.num_dues + due]; }
  double& cross(std::size_t cue, std::size_t due) { return cross_gain[cue * params.num_dues + due]; }

  bool operator==(const Scenario&) const = default;
};

struct ScenarioConfig {
  SystemParams params;
  std::uint64_t master_seed = 1;
  std::size_t trials = 1;
};

/// Seed of trial t, a mix of (master_seed, t).
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

/// Random drop of CUEs and DUE transmitters over the cell disk, DUE receivers
/// on a ring around their transmitter, Zipf skews uniform over the configured
/// range. Pure function of (config, trial).
Scenario generate(const ScenarioConfig& config, std::size_t trial);

/// Build a scenario from explicit positions and skews (gains derived from the
/// configured path-loss models).
Scenario build_scenario(const SystemParams& params, std::vector<Position> cue_pos, std::vector<Position> due_tx_pos,
                        std::vector<Position> due_rx_pos, std::vector<double> beta_cue, std::vector<double> beta_due);

/// Empty iff every scenario invariant holds; each entry names the field.
std::vector<std::string> validate(const Scenario& scenario);

inline constexpr int kScenarioSchemaVersion = 1;

nlohmann::json params_to_json(const SystemParams& params);
/// Accepts either linear (`*_w`) or dBm (`*_dbm`) power fields; fields not
/// present keep the value from `base`.
SystemParams params_from_json(const nlohmann::json& j, const SystemParams& base);

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& j);

void save(const Scenario& scenario, const std::filesystem::path& path);
Scenario load(const std::filesystem::path& path);

}  // namespace semcom
