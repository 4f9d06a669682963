#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "semcom/params.hpp"

namespace semcom {

struct Scenario;

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Log-distance path loss in dB. Cellular: 128.1 + 37.6 log10(d_km);
/// D2D: 148 + 40 log10(d_km). Throws std::domain_error for d <= 0.
double pathloss_db(LinkModel link, double distance_m);

double gain_from_pathloss(double pathloss_db);

/// W log2(1 + signal / (noise + interference)).
double shannon_rate(double signal_w, double interference_w, double bandwidth_hz, double noise_w);

/// Uplink CUE rate; `interferer_p_d` is the power of the DUE sharing the
/// subchannel, if any.
double rate_cue(double p_c, std::optional<double> interferer_p_d, double g_cb, double g_db,
                double bandwidth_hz, double noise_w);

/// DUE rate; `interferer_p_c` is the power of the CUE whose subchannel is
/// reused, if any.
double rate_due(double p_d, std::optional<double> interferer_p_c, double g_d, double g_ij,
                double bandwidth_hz, double noise_w);

/// Zipf weight sum_{u<=K} u^{-2 beta} / sum_{e<=K} e^{-beta}. Both sums are
/// exactly rounded, so the result does not depend on summation order.
double zipf_theta(double beta, std::size_t num_services);

/// Same weight computed from an explicit assignment of popularity ranks to
/// services. Bit-identical to zipf_theta for any permutation of 1..K.
double zipf_theta_from_ranks(double beta, std::span<const int> ranks);

/// Whole triplets carried per second, floor(rate / L).
std::int64_t triplet_count(double rate, double bits_per_triplet);

double semantic_value(double rate, double theta, double bits_per_triplet);

/// P_enc times the total number of triplets across all given links.
double encoding_power(std::span<const double> rates, double bits_per_triplet, double enc_power_w);

double amplifier_power(std::span<const double> p_cue, std::span<const double> p_due, double xi);

/// Smallest triplet count n with theta * n >= vmin.
std::int64_t min_triplets(double vmin, double theta);

struct PowerAllocation {
  std::vector<double> p_cue;
  std::vector<double> p_due;
  bool operator==(const PowerAllocation&) const = default;
};

/// DUE j reuses the subchannel of CUE cue_of_due[j].
struct ReusePattern {
  std::vector<int> cue_of_due;
  bool operator==(const ReusePattern&) const = default;
};

/// Injective and total on DUEs, every entry a valid CUE index.
bool is_valid_pattern(const ReusePattern& pattern, std::size_t num_cues, std::size_t num_dues);

struct Metrics {
  double v_total = 0.0;
  double e_encoding = 0.0;
  double e_transmit = 0.0;
  double e_total = 0.0;
  double eta = 0.0;
  std::vector<double> rate_cue;
  std::vector<double> rate_due;
  std::vector<double> v_cue;
  std::vector<double> v_due;
  bool cue_value_ok = true;
  bool due_value_ok = true;
  bool cue_power_ok = true;
  bool due_power_ok = true;

  bool feasible() const { return cue_value_ok && due_value_ok && cue_power_ok && due_power_ok; }
};

/// Rates, semantic value, power and energy efficiency of an allocation. The
/// efficiency of the all-zero allocation is defined as 0. Constraint
/// violations are reported through the flags, never thrown.
Metrics evaluate(const Scenario& scenario, const PowerAllocation& powers, const ReusePattern& pattern);

}  // namespace semcom
