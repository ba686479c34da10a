#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hfrelay {

/// Fixed physical parameters of one relay link. Powers are linear watts.
struct SystemParams {
  double tx_power = 10.0;          // source transmit power budget P, W
  double conversion_eff = 0.2;     // RF-to-circuit energy conversion efficiency, (0,1]
  double dest_noise = 1e-8;        // destination noise power sigma^2, W
  double antenna_noise = 5e-9;     // per-antenna receiver noise power sigma_a^2, W
  double conversion_noise = 5e-9;  // passband-to-baseband conversion noise power sigma_b^2, W
  double bandwidth = 1e6;          // channel bandwidth, Hz
  int n_antennas = 10;             // relay antenna count N
};

inline void validate(const SystemParams& p) {
  if (!(p.tx_power > 0)) throw std::invalid_argument("tx_power must be > 0");
  if (!(p.conversion_eff > 0) || !(p.conversion_eff <= 1))
    throw std::invalid_argument("conversion_eff must be in (0, 1]");
  if (!(p.dest_noise > 0)) throw std::invalid_argument("dest_noise must be > 0");
  if (!(p.antenna_noise >= 0)) throw std::invalid_argument("antenna_noise must be >= 0");
  if (!(p.conversion_noise > 0)) throw std::invalid_argument("conversion_noise must be > 0");
  if (!(p.bandwidth > 0)) throw std::invalid_argument("bandwidth must be > 0");
  if (p.n_antennas < 1) throw std::invalid_argument("n_antennas must be >= 1");
}

/// One fading draw. Channels are stored as magnitude-squared gains only:
/// the distributed beamforming phases cancel, so nothing downstream needs
/// complex amplitudes. Path loss is already folded in.
struct ChannelRealization {
  std::vector<double> src_relay_gain;  // |h_i|^2, source -> relay antenna i
  std::vector<double> relay_dest_gain; // |g_i|^2, relay antenna i -> destination
  double src_dest_gain = 0.0;          // |h_sd|^2, direct source -> destination
};

inline void validate(const ChannelRealization& ch) {
  if (ch.src_relay_gain.size() != ch.relay_dest_gain.size())
    throw std::invalid_argument("channel gain lists must have equal length");
  if (ch.src_relay_gain.empty())
    throw std::invalid_argument("channel must cover at least one antenna");
  auto nonneg = [](double v) { return v >= 0.0; };
  if (!std::all_of(ch.src_relay_gain.begin(), ch.src_relay_gain.end(), nonneg) ||
      !std::all_of(ch.relay_dest_gain.begin(), ch.relay_dest_gain.end(), nonneg) ||
      !(ch.src_dest_gain >= 0.0))
    throw std::invalid_argument("channel gains must be >= 0");
}

/// Expected received signal power at each relay antenna, in watts.
struct ReceivedPowerProfile {
  std::vector<double> antenna_power;
};

/// A non-empty subset of relay antennas designated for forwarding (with power
/// splitting); the complement harvests only. Indices are 1-based and kept
/// sorted, matching the channel-file line order and the printed output.
class AntennaSet {
public:
  AntennaSet(std::vector<int> indices, int n_antennas) : indices_(std::move(indices)) {
    if (indices_.empty()) throw std::invalid_argument("antenna set must be non-empty");
    if (!std::is_sorted(indices_.begin(), indices_.end()))
      std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
      throw std::invalid_argument("antenna set must not contain duplicates");
    if (indices_.front() < 1 || indices_.back() > n_antennas)
      throw std::invalid_argument("antenna indices must lie in [1, " +
                                  std::to_string(n_antennas) + "]");
  }

  static AntennaSet full(int n_antennas) {
    std::vector<int> all(static_cast<std::size_t>(n_antennas));
    for (int i = 0; i < n_antennas; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    return AntennaSet(std::move(all), n_antennas);
  }

  /// Bit k of `mask` selects antenna k+1.
  static AntennaSet from_mask(std::uint32_t mask, int n_antennas) {
    std::vector<int> idx;
    for (int i = 0; i < n_antennas; ++i)
      if (mask >> i & 1u) idx.push_back(i + 1);
    return AntennaSet(std::move(idx), n_antennas);
  }

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }

  std::uint32_t mask() const {
    std::uint32_t m = 0;
    for (int i : indices_) m |= 1u << (i - 1);
    return m;
  }

  bool operator==(const AntennaSet& other) const { return indices_ == other.indices_; }

private:
  std::vector<int> indices_;
};

/// Expected received power per antenna: tx_power * |h_i|^2 + antenna_noise.
/// The signal has unit power and is independent of the receiver noise, so the
/// expectation is the sum of the two contributions. Using the expectation
/// keeps every downstream aggregate deterministic for a given channel draw.
inline ReceivedPowerProfile received_powers(const SystemParams& params,
                                            const ChannelRealization& ch) {
  ReceivedPowerProfile rho;
  rho.antenna_power.reserve(ch.src_relay_gain.size());
  for (double h_sq : ch.src_relay_gain)
    rho.antenna_power.push_back(params.tx_power * h_sq + params.antenna_noise);
  return rho;
}

namespace detail {

inline double sum_over(const std::vector<double>& values, const AntennaSet& set) {
  double s = 0.0;
  for (int i : set.indices()) s += values[static_cast<std::size_t>(i - 1)];
  return s;
}

} // namespace detail

/// Power harvested during the receive phase: the forwarding set contributes
/// the (1 - split) fraction of its received power, the complement contributes
/// all of it. Equals conversion_eff * (R_total - split * R_forward).
inline double harvested_power(const SystemParams& params, const ReceivedPowerProfile& rho,
                              const AntennaSet& set, double split) {
  if (!(split >= 0.0 && split <= 1.0))
    throw std::invalid_argument("split ratio must lie in [0, 1]");
  double r_total = 0.0;
  for (double p : rho.antenna_power) r_total += p;
  double r_forward = detail::sum_over(rho.antenna_power, set);
  return params.conversion_eff * (r_total - split * r_forward);
}

/// Forwarding amplification gain: the harvested power is spent transmitting
/// the scaled remnant signal, so gain^2 * (split * R_forward + n * sigma_b^2)
/// equals the harvested power.
inline double amplification_gain(const SystemParams& params, const ReceivedPowerProfile& rho,
                                 const AntennaSet& set, double split) {
  double remnant = split * detail::sum_over(rho.antenna_power, set) +
                   set.size() * params.conversion_noise;
  if (!(remnant > 0.0))
    throw std::domain_error("amplification gain undefined: zero remnant signal power");
  return std::sqrt(harvested_power(params, rho, set, split) / remnant);
}

/// End-to-end SNR evaluated on the unsimplified two-hop signal model:
/// coherent beamformed signal over amplified relay noise plus destination
/// noise. Kept separate from the aggregate form as an algebraic cross-check.
inline double snr_full_model(const SystemParams& params, const ChannelRealization& ch,
                             const ReceivedPowerProfile& rho, const AntennaSet& set,
                             double split) {
  double beta = amplification_gain(params, rho, set, split);
  double beta_sq = beta * beta;
  double coherent_sum = 0.0; // sum of |g_i h_i| over the forwarding set
  double dest_gain = 0.0;    // sum of |g_i|^2 over the forwarding set
  for (int i : set.indices()) {
    auto k = static_cast<std::size_t>(i - 1);
    coherent_sum += std::sqrt(ch.relay_dest_gain[k] * ch.src_relay_gain[k]);
    dest_gain += ch.relay_dest_gain[k];
  }
  double signal = beta_sq * split * params.tx_power * coherent_sum * coherent_sum;
  double noise = beta_sq * dest_gain * (split * params.antenna_noise + params.conversion_noise) +
                 params.dest_noise;
  return signal / noise;
}

} // namespace hfrelay
