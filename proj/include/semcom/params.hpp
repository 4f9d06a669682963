#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace semcom {

enum class LinkModel { kCellular, kD2D };

std::string to_string(LinkModel model);
LinkModel link_model_from_string(const std::string& name);

/// Scalar constants of one network configuration. All quantities are linear
/// (watts, Hz, bits); dBm only appears in the JSON ingestion layer.
struct SystemParams {
  std::size_t num_cues = 50;
  std::size_t num_dues = 30;
  std::size_t num_services = 20;
  double total_bandwidth_hz = 10e6;
  double bits_per_triplet = 50.0;
  double noise_w = 0.0;
  double enc_power_w = 5e-4;
  double amplifier_inefficiency = 1.0 / 0.35;
  double pmax_cue_w = 0.0;
  double pmax_due_w = 0.0;
  double vmin_cue = 50.0;
  double vmin_due = 50.0;
  double cell_radius_m = 300.0;
  double d2d_min_m = 50.0;
  double d2d_max_m = 200.0;
  double zipf_skew_min = 0.5;
  double zipf_skew_max = 1.5;
  // Lower bound applied to every generated link distance so path loss stays
  // below the free-space regime of the log-distance models.
  double min_link_distance_m = 10.0;
  LinkModel cross_link_model = LinkModel::kCellular;
  LinkModel due_bs_link_model = LinkModel::kCellular;

  /// Equal orthogonal split of the system band across the CUEs.
  double subchannel_bandwidth_hz() const { return total_bandwidth_hz / static_cast<double>(num_cues); }

  bool operator==(const SystemParams&) const = default;
};

/// Default simulation setup: 50 CUEs, 30 DUEs, 10 MHz, 23/21 dBm caps,
/// -111.45 dBm noise, 50-bit triplets, K = 20, 35 % amplifier efficiency.
SystemParams default_params();

/// Human-readable description of every violated parameter invariant.
std::vector<std::string> check_params(const SystemParams& params);

/// Throws ConfigError listing all violations, if any.
void require_valid(const SystemParams& params);

}  // namespace semcom
