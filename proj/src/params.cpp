#include "semcom/params.hpp"

#include <cmath>
#include <sstream>

#include "semcom/errors.hpp"
#include "semcom/model.hpp"

namespace semcom {

std::string to_string(LinkModel model) {
  return model == LinkModel::kCellular ? "cellular" : "d2d";
}

LinkModel link_model_from_string(const std::string& name) {
  if (name == "cellular") return LinkModel::kCellular;
  if (name == "d2d") return LinkModel::kD2D;
  throw ConfigError("unknown link model '" + name + "' (expected cellular or d2d)");
}

SystemParams default_params() {
  SystemParams p;
  p.noise_w = dbm_to_watts(-111.45);
  p.pmax_cue_w = dbm_to_watts(23.0);
  p.pmax_due_w = dbm_to_watts(21.0);
  return p;
}

std::vector<std::string> check_params(const SystemParams& p) {
  std::vector<std::string> out;
  auto positive = [&](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) out.push_back(std::string(name) + " must be positive and finite");
  };
  if (p.num_cues == 0) out.emplace_back("num_cues must be at least 1");
  if (p.num_services == 0) out.emplace_back("num_services must be at least 1");
  if (p.num_dues > p.num_cues) out.emplace_back("num_dues must not exceed num_cues");
  positive(p.total_bandwidth_hz, "total_bandwidth_hz");
  positive(p.bits_per_triplet, "bits_per_triplet");
  positive(p.noise_w, "noise_w");
  positive(p.enc_power_w, "enc_power_w");
  positive(p.pmax_cue_w, "pmax_cue_w");
  positive(p.pmax_due_w, "pmax_due_w");
  positive(p.cell_radius_m, "cell_radius_m");
  positive(p.min_link_distance_m, "min_link_distance_m");
  if (!(p.amplifier_inefficiency >= 1.0 && std::isfinite(p.amplifier_inefficiency)))
    out.emplace_back("amplifier_inefficiency must be >= 1");
  if (!(p.vmin_cue >= 0.0 && std::isfinite(p.vmin_cue))) out.emplace_back("vmin_cue must be >= 0");
  if (!(p.vmin_due >= 0.0 && std::isfinite(p.vmin_due))) out.emplace_back("vmin_due must be >= 0");
  if (!(p.d2d_min_m > 0.0 && p.d2d_min_m <= p.d2d_max_m))
    out.emplace_back("d2d distance range must satisfy 0 < min <= max");
  if (p.d2d_max_m > 2.0 * p.cell_radius_m) out.emplace_back("d2d distance range exceeds the cell diameter");
  if (!(p.zipf_skew_min >= 0.0 && p.zipf_skew_min <= p.zipf_skew_max))
    out.emplace_back("zipf skew range must satisfy 0 <= min <= max");
  return out;
}

void require_valid(const SystemParams& params) {
  const auto violations = check_params(params);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid system parameters:";
  for (const auto& v : violations) msg << ' ' << v << ';';
  throw ConfigError(msg.str());
}

}  // namespace semcom
