#include "semcom/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "semcom/exact_sum.hpp"
#include "semcom/scenario.hpp"

namespace semcom {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double pathloss_db(LinkModel link, double distance_m) {
  if (!(distance_m > 0.0)) throw std::domain_error("path loss distance must be positive");
  const double log_km = std::log10(distance_m / 1000.0);
  return link == LinkModel::kCellular ? 128.1 + 37.6 * log_km : 148.0 + 40.0 * log_km;
}

double gain_from_pathloss(double pathloss_db) { return std::pow(10.0, -pathloss_db / 10.0); }

double shannon_rate(double signal_w, double interference_w, double bandwidth_hz, double noise_w) {
  const double sinr = signal_w / (noise_w + interference_w);
  return bandwidth_hz * std::log1p(sinr) / std::numbers::ln2;
}

double rate_cue(double p_c, std::optional<double> interferer_p_d, double g_cb, double g_db, double bandwidth_hz,
                double noise_w) {
  const double interference = interferer_p_d ? *interferer_p_d * g_db : 0.0;
  return shannon_rate(p_c * g_cb, interference, bandwidth_hz, noise_w);
}

double rate_due(double p_d, std::optional<double> interferer_p_c, double g_d, double g_ij, double bandwidth_hz,
                double noise_w) {
  const double interference = interferer_p_c ? *interferer_p_c * g_ij : 0.0;
  return shannon_rate(p_d * g_d, interference, bandwidth_hz, noise_w);
}

double zipf_theta(double beta, std::size_t num_services) {
  ExactSum num;
  ExactSum den;
  for (std::size_t u = 1; u <= num_services; ++u) {
    const double rank = static_cast<double>(u);
    num.add(std::pow(rank, -2.0 * beta));
    den.add(std::pow(rank, -beta));
  }
  return num.value() / den.value();
}

double zipf_theta_from_ranks(double beta, std::span<const int> ranks) {
  ExactSum num;
  ExactSum den;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    num.add(std::pow(static_cast<double>(ranks[k]), -2.0 * beta));
    den.add(std::pow(static_cast<double>(k + 1), -beta));
  }
  return num.value() / den.value();
}

std::int64_t triplet_count(double rate, double bits_per_triplet) {
  return static_cast<std::int64_t>(std::floor(rate / bits_per_triplet));
}

double semantic_value(double rate, double theta, double bits_per_triplet) {
  return theta * static_cast<double>(triplet_count(rate, bits_per_triplet));
}

double encoding_power(std::span<const double> rates, double bits_per_triplet, double enc_power_w) {
  std::int64_t total = 0;
  for (double r : rates) total += triplet_count(r, bits_per_triplet);
  return enc_power_w * static_cast<double>(total);
}

double amplifier_power(std::span<const double> p_cue, std::span<const double> p_due, double xi) {
  double sum = 0.0;
  for (double p : p_cue) sum += p;
  for (double p : p_due) sum += p;
  return xi * sum;
}

std::int64_t min_triplets(double vmin, double theta) {
  if (vmin <= 0.0) return 0;
  auto n = static_cast<std::int64_t>(std::ceil(vmin / theta));
  while (n > 0 && theta * static_cast<double>(n - 1) >= vmin) --n;
  while (theta * static_cast<double>(n) < vmin) ++n;
  return n;
}

bool is_valid_pattern(const ReusePattern& pattern, std::size_t num_cues, std::size_t num_dues) {
  if (pattern.cue_of_due.size() != num_dues) return false;
  std::vector<bool> used(num_cues, false);
  for (int cue : pattern.cue_of_due) {
    if (cue < 0 || static_cast<std::size_t>(cue) >= num_cues) return false;
    if (used[static_cast<std::size_t>(cue)]) return false;
    used[static_cast<std::size_t>(cue)] = true;
  }
  return true;
}

Metrics evaluate(const Scenario& s, const PowerAllocation& powers, const ReusePattern& pattern) {
  const auto& p = s.params;
  const std::size_t m = s.num_cues();
  const std::size_t n = s.num_dues();
  const double w = p.subchannel_bandwidth_hz();

  std::vector<int> due_on_cue(m, -1);
  for (std::size_t j = 0; j < n; ++j) due_on_cue[static_cast<std::size_t>(pattern.cue_of_due[j])] = static_cast<int>(j);

  Metrics out;
  out.rate_cue.resize(m);
  out.rate_due.resize(n);
  out.v_cue.resize(m);
  out.v_due.resize(n);

  std::int64_t triplets = 0;
  double v_total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const int j = due_on_cue[i];
    const std::optional<double> interferer =
        j >= 0 ? std::optional<double>(powers.p_due[static_cast<std::size_t>(j)]) : std::nullopt;
    const double g_db = j >= 0 ? s.due_gain_bs[static_cast<std::size_t>(j)] : 0.0;
    out.rate_cue[i] = rate_cue(powers.p_cue[i], interferer, s.cue_gain_bs[i], g_db, w, p.noise_w);
    const std::int64_t count = triplet_count(out.rate_cue[i], p.bits_per_triplet);
    triplets += count;
    out.v_cue[i] = s.theta_cue[i] * static_cast<double>(count);
    v_total += out.v_cue[i];
    if (out.v_cue[i] < p.vmin_cue) out.cue_value_ok = false;
    if (powers.p_cue[i] < 0.0 || powers.p_cue[i] > p.pmax_cue_w) out.cue_power_ok = false;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto i = static_cast<std::size_t>(pattern.cue_of_due[j]);
    out.rate_due[j] = rate_due(powers.p_due[j], powers.p_cue[i], s.due_gain_internal[j], s.cross(i, j), w, p.noise_w);
    const std::int64_t count = triplet_count(out.rate_due[j], p.bits_per_triplet);
    triplets += count;
    out.v_due[j] = s.theta_due[j] * static_cast<double>(count);
    v_total += out.v_due[j];
    if (out.v_due[j] < p.vmin_due) out.due_value_ok = false;
    if (powers.p_due[j] < 0.0 || powers.p_due[j] > p.pmax_due_w) out.due_power_ok = false;
  }

  out.v_total = v_total;
  out.e_encoding = p.enc_power_w * static_cast<double>(triplets);
  out.e_transmit = amplifier_power(powers.p_cue, powers.p_due, p.amplifier_inefficiency);
  out.e_total = out.e_encoding + out.e_transmit;
  out.eta = out.e_total > 0.0 ? out.v_total / out.e_total : 0.0;
  return out;
}

}  // namespace semcom
