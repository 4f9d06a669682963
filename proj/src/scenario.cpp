#include "semcom/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "semcom/errors.hpp"
#include "semcom/model.hpp"
#include "semcom/rng.hpp"

namespace semcom {
namespace {

using nlohmann::json;

// Independent sub-streams so that changing M leaves the DUE drop untouched
// and vice versa.
enum Stream : std::uint64_t { kCueStream = 1, kDueStream = 2, kSkewStream = 3 };

constexpr int kMaxRingAttempts = 100;

Position uniform_in_disk(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double a = 2.0 * std::numbers::pi * rng.uniform();
  return {r * std::cos(a), r * std::sin(a)};
}

double link_gain(LinkModel model, double d, double min_distance) {
  return gain_from_pathloss(pathloss_db(model, std::max(d, min_distance)));
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

std::vector<double> number_array(const json& j, const char* name) {
  const json& a = field(j, name);
  if (!a.is_array()) throw SchemaError(std::string("field '") + name + "' must be an array");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& v : a) {
    if (!v.is_number()) throw SchemaError(std::string("field '") + name + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<Position> position_array(const json& j, const char* name) {
  const json& a = field(j, name);
  if (!a.is_array()) throw SchemaError(std::string("field '") + name + "' must be an array");
  std::vector<Position> out;
  for (const auto& v : a) {
    if (!v.is_array() || v.size() != 2) throw SchemaError(std::string("field '") + name + "' must hold [x, y] pairs");
    out.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return out;
}

json position_json(const std::vector<Position>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back({p.x, p.y});
  return a;
}

template <class T>
void read_if(const json& j, const char* name, T& out) {
  if (auto it = j.find(name); it != j.end()) out = it->get<T>();
}

}  // namespace

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) { return mix_seed({master_seed, trial}); }

Scenario build_scenario(const SystemParams& params, std::vector<Position> cue_pos, std::vector<Position> due_tx_pos,
                        std::vector<Position> due_rx_pos, std::vector<double> beta_cue, std::vector<double> beta_due) {
  const std::size_t m = params.num_cues;
  const std::size_t n = params.num_dues;
  Scenario s;
  s.params = params;
  s.cue_pos = std::move(cue_pos);
  s.due_tx_pos = std::move(due_tx_pos);
  s.due_rx_pos = std::move(due_rx_pos);
  s.beta_cue = std::move(beta_cue);
  s.beta_due = std::move(beta_due);

  const Position bs{};
  const double dmin = params.min_link_distance_m;
  s.cue_gain_bs.resize(m);
  s.theta_cue.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    s.cue_gain_bs[i] = link_gain(LinkModel::kCellular, distance(s.cue_pos[i], bs), dmin);
    s.theta_cue[i] = zipf_theta(s.beta_cue[i], params.num_services);
  }
  s.due_gain_bs.resize(n);
  s.due_gain_internal.resize(n);
  s.theta_due.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    s.due_gain_bs[j] = link_gain(params.due_bs_link_model, distance(s.due_tx_pos[j], bs), dmin);
    s.due_gain_internal[j] = link_gain(LinkModel::kD2D, distance(s.due_tx_pos[j], s.due_rx_pos[j]), dmin);
    s.theta_due[j] = zipf_theta(s.beta_due[j], params.num_services);
  }
  s.cross_gain.resize(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s.cross(i, j) = link_gain(params.cross_link_model, distance(s.cue_pos[i], s.due_rx_pos[j]), dmin);
  return s;
}

Scenario generate(const ScenarioConfig& config, std::size_t trial) {
  const SystemParams& p = config.params;
  require_valid(p);
  if (config.trials == 0) throw ConfigError("trials must be at least 1");
  const std::uint64_t seed = trial_seed(config.master_seed, trial);
  const double radius = p.cell_radius_m;

  Rng cue_rng(mix_seed({seed, kCueStream}));
  std::vector<Position> cues(p.num_cues);
  for (auto& c : cues) c = uniform_in_disk(cue_rng, radius);

  Rng due_rng(mix_seed({seed, kDueStream}));
  std::vector<Position> tx(p.num_dues);
  std::vector<Position> rx(p.num_dues);
  for (std::size_t j = 0; j < p.num_dues; ++j) {
    tx[j] = uniform_in_disk(due_rng, radius);
    const double d = due_rng.uniform(p.d2d_min_m, p.d2d_max_m);
    Position candidate{};
    bool inside = false;
    for (int attempt = 0; attempt < kMaxRingAttempts && !inside; ++attempt) {
      const double a = 2.0 * std::numbers::pi * due_rng.uniform();
      candidate = {tx[j].x + d * std::cos(a), tx[j].y + d * std::sin(a)};
      inside = std::hypot(candidate.x, candidate.y) <= radius;
    }
    if (!inside) {
      const double scale = radius / std::hypot(candidate.x, candidate.y);
      candidate = {candidate.x * scale, candidate.y * scale};
    }
    rx[j] = candidate;
  }

  Rng skew_rng(mix_seed({seed, kSkewStream}));
  std::vector<double> beta_cue(p.num_cues);
  for (auto& b : beta_cue) b = skew_rng.uniform(p.zipf_skew_min, p.zipf_skew_max);
  // DUE skews get their own stream so they do not depend on M.
  Rng skew_due_rng(mix_seed({seed, kSkewStream, 1}));
  std::vector<double> beta_due(p.num_dues);
  for (auto& b : beta_due) b = skew_due_rng.uniform(p.zipf_skew_min, p.zipf_skew_max);

  return build_scenario(p, std::move(cues), std::move(tx), std::move(rx), std::move(beta_cue), std::move(beta_due));
}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> out = check_params(s.params);
  const std::size_t m = s.num_cues();
  const std::size_t n = s.num_dues();
  auto sized = [&](std::size_t got, std::size_t want, const char* name) {
    if (got != want) {
      out.push_back(std::string(name) + " has length " + std::to_string(got) + ", expected " + std::to_string(want));
      return false;
    }
    return true;
  };
  auto gains = [&](const std::vector<double>& v, std::size_t want, const char* name) {
    if (!sized(v.size(), want, name)) return;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!(std::isfinite(v[k]) && v[k] > 0.0)) {
        out.push_back(std::string(name) + "[" + std::to_string(k) + "] must be positive and finite");
      }
  };
  gains(s.cue_gain_bs, m, "cue_gain_bs");
  gains(s.due_gain_bs, n, "due_gain_bs");
  gains(s.due_gain_internal, n, "due_gain_internal");
  gains(s.cross_gain, m * n, "cross_gain");

  auto skews = [&](const std::vector<double>& beta, const std::vector<double>& theta, std::size_t want,
                   const char* beta_name, const char* theta_name) {
    const bool beta_ok = sized(beta.size(), want, beta_name);
    const bool theta_ok = sized(theta.size(), want, theta_name);
    if (!beta_ok || !theta_ok) return;
    for (std::size_t k = 0; k < want; ++k) {
      if (!(beta[k] >= 0.0 && std::isfinite(beta[k]))) {
        out.push_back(std::string(beta_name) + "[" + std::to_string(k) + "] must be >= 0");
        continue;
      }
      if (!(theta[k] > 0.0 && theta[k] <= 1.0))
        out.push_back(std::string(theta_name) + "[" + std::to_string(k) + "] must lie in (0, 1]");
      else if (theta[k] != zipf_theta(beta[k], s.params.num_services))
        out.push_back(std::string(theta_name) + "[" + std::to_string(k) + "] does not match its skew");
    }
  };
  skews(s.beta_cue, s.theta_cue, m, "beta_cue", "theta_cue");
  skews(s.beta_due, s.theta_due, n, "beta_due", "theta_due");

  sized(s.cue_pos.size(), m, "cue_pos");
  sized(s.due_tx_pos.size(), n, "due_tx_pos");
  sized(s.due_rx_pos.size(), n, "due_rx_pos");
  return out;
}

json params_to_json(const SystemParams& p) {
  return json{
      {"num_cues", p.num_cues},
      {"num_dues", p.num_dues},
      {"num_services", p.num_services},
      {"total_bandwidth_hz", p.total_bandwidth_hz},
      {"bits_per_triplet", p.bits_per_triplet},
      {"noise_w", p.noise_w},
      {"enc_power_w", p.enc_power_w},
      {"amplifier_inefficiency", p.amplifier_inefficiency},
      {"pmax_cue_w", p.pmax_cue_w},
      {"pmax_due_w", p.pmax_due_w},
      {"vmin_cue", p.vmin_cue},
      {"vmin_due", p.vmin_due},
      {"cell_radius_m", p.cell_radius_m},
      {"d2d_distance_range_m", {p.d2d_min_m, p.d2d_max_m}},
      {"zipf_skew_range", {p.zipf_skew_min, p.zipf_skew_max}},
      {"min_link_distance_m", p.min_link_distance_m},
      {"cross_link_model", to_string(p.cross_link_model)},
      {"due_bs_link_model", to_string(p.due_bs_link_model)},
  };
}

SystemParams params_from_json(const json& j, const SystemParams& base) {
  if (!j.is_object()) throw ConfigError("params must be a JSON object");
  SystemParams p = base;
  try {
    read_if(j, "num_cues", p.num_cues);
    read_if(j, "num_dues", p.num_dues);
    read_if(j, "num_services", p.num_services);
    read_if(j, "total_bandwidth_hz", p.total_bandwidth_hz);
    read_if(j, "bits_per_triplet", p.bits_per_triplet);
    read_if(j, "noise_w", p.noise_w);
    if (j.contains("noise_dbm")) p.noise_w = dbm_to_watts(j["noise_dbm"].get<double>());
    read_if(j, "enc_power_w", p.enc_power_w);
    read_if(j, "amplifier_inefficiency", p.amplifier_inefficiency);
    read_if(j, "pmax_cue_w", p.pmax_cue_w);
    if (j.contains("pmax_cue_dbm")) p.pmax_cue_w = dbm_to_watts(j["pmax_cue_dbm"].get<double>());
    read_if(j, "pmax_due_w", p.pmax_due_w);
    if (j.contains("pmax_due_dbm")) p.pmax_due_w = dbm_to_watts(j["pmax_due_dbm"].get<double>());
    read_if(j, "vmin_cue", p.vmin_cue);
    read_if(j, "vmin_due", p.vmin_due);
    if (j.contains("vmin")) p.vmin_cue = p.vmin_due = j["vmin"].get<double>();
    read_if(j, "cell_radius_m", p.cell_radius_m);
    if (j.contains("d2d_distance_range_m")) {
      const auto r = j["d2d_distance_range_m"].get<std::vector<double>>();
      if (r.size() != 2) throw ConfigError("d2d_distance_range_m must hold [min, max]");
      p.d2d_min_m = r[0];
      p.d2d_max_m = r[1];
    }
    if (j.contains("zipf_skew_range")) {
      const auto r = j["zipf_skew_range"].get<std::vector<double>>();
      if (r.size() != 2) throw ConfigError("zipf_skew_range must hold [min, max]");
      p.zipf_skew_min = r[0];
      p.zipf_skew_max = r[1];
    }
    read_if(j, "min_link_distance_m", p.min_link_distance_m);
    if (j.contains("cross_link_model")) p.cross_link_model = link_model_from_string(j["cross_link_model"]);
    if (j.contains("due_bs_link_model")) p.due_bs_link_model = link_model_from_string(j["due_bs_link_model"]);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed params: ") + e.what());
  }
  return p;
}

json scenario_to_json(const Scenario& s) {
  json cross = json::array();
  for (std::size_t i = 0; i < s.num_cues(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < s.num_dues(); ++j) row.push_back(s.cross(i, j));
    cross.push_back(std::move(row));
  }
  return json{
      {"schema_version", kScenarioSchemaVersion},
      {"params", params_to_json(s.params)},
      {"positions",
       {{"cue", position_json(s.cue_pos)},
        {"due_tx", position_json(s.due_tx_pos)},
        {"due_rx", position_json(s.due_rx_pos)}}},
      {"gains",
       {{"cue_bs", s.cue_gain_bs},
        {"due_bs", s.due_gain_bs},
        {"due_internal", s.due_gain_internal},
        {"cross", std::move(cross)}}},
      {"beta", {{"cue", s.beta_cue}, {"due", s.beta_due}}},
  };
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("scenario document must be a JSON object");
  const json& version = field(j, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kScenarioSchemaVersion)
    throw SchemaError("unsupported schema_version " + version.dump() + " (expected " +
                      std::to_string(kScenarioSchemaVersion) + ")");

  Scenario s;
  try {
    s.params = params_from_json(field(j, "params"), SystemParams{});
  } catch (const ConfigError& e) {
    throw SchemaError(e.what());
  }
  if (auto violations = check_params(s.params); !violations.empty())
    throw InvariantError("scenario params: " + violations.front());

  const json& positions = field(j, "positions");
  s.cue_pos = position_array(positions, "cue");
  s.due_tx_pos = position_array(positions, "due_tx");
  s.due_rx_pos = position_array(positions, "due_rx");

  const json& gains = field(j, "gains");
  s.cue_gain_bs = number_array(gains, "cue_bs");
  s.due_gain_bs = number_array(gains, "due_bs");
  s.due_gain_internal = number_array(gains, "due_internal");
  const json& cross = field(gains, "cross");
  if (!cross.is_array() || cross.size() != s.num_cues())
    throw SchemaError("field 'cross' must hold one row per CUE");
  for (const auto& row : cross) {
    if (!row.is_array() || row.size() != s.num_dues()) throw SchemaError("field 'cross' rows must hold one gain per DUE");
    for (const auto& v : row) s.cross_gain.push_back(v.get<double>());
  }

  const json& beta = field(j, "beta");
  s.beta_cue = number_array(beta, "cue");
  s.beta_due = number_array(beta, "due");
  if (s.beta_cue.size() == s.num_cues())
    for (double b : s.beta_cue) s.theta_cue.push_back(zipf_theta(b, s.params.num_services));
  if (s.beta_due.size() == s.num_dues())
    for (double b : s.beta_due) s.theta_due.push_back(zipf_theta(b, s.params.num_services));

  if (auto violations = validate(s); !violations.empty()) throw InvariantError("scenario: " + violations.front());
  return s;
}

void save(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << scenario_to_json(scenario).dump(1) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace semcom
