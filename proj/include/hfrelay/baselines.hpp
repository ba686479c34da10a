#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "hfrelay/selection.hpp"

namespace hfrelay {

enum class StrategyTag { greedy, exhaustive, pure_ps, pure_as, af, direct };

inline const char* to_string(StrategyTag tag) {
  switch (tag) {
    case StrategyTag::greedy: return "greedy";
    case StrategyTag::exhaustive: return "exhaustive";
    case StrategyTag::pure_ps: return "pure_ps";
    case StrategyTag::pure_as: return "pure_as";
    case StrategyTag::af: return "af";
    case StrategyTag::direct: return "direct";
  }
  return "?";
}

/// Chosen forwarding set and split ratio, for strategies that optimize them.
struct SelectionDetail {
  AntennaSet set;
  double split = 0.0;
};

struct RateReport {
  StrategyTag strategy = StrategyTag::direct;
  double rate = 0.0; // bits/s
  double snr = 0.0;  // linear
  std::optional<SelectionDetail> detail;
};

/// Shannon rate over the configured bandwidth. No half-duplex prefactor is
/// applied to any strategy; relayed and direct strategies are compared on
/// the same W log2(1 + SNR) scale.
inline double rate_from_snr(const SystemParams& params, double snr) {
  return params.bandwidth * std::log2(1.0 + snr);
}

/// Splitting-only baseline: every antenna forwards (no selection); the split
/// ratio is still optimized in closed form.
inline RateReport pure_ps_rate(const SystemParams& params, const ChannelRealization& ch,
                               const ReceivedPowerProfile& rho) {
  const int n = static_cast<int>(ch.src_relay_gain.size());
  const auto terms = detail::antenna_terms(ch, rho);
  const auto st = detail::mask_statistics(terms, (1u << n) - 1u);
  const auto sol = optimal_split(params, st);
  return RateReport{StrategyTag::pure_ps, rate_from_snr(params, sol.snr), sol.snr,
                    SelectionDetail{AntennaSet::full(n), sol.split}};
}

/// Selection-only baseline: the forwarding set routes all of its received
/// power to information (split ratio fixed at 1), so only the complement
/// harvests. Best set found by enumerating every non-empty subset; the full
/// set leaves nothing to harvest and scores zero.
inline RateReport pure_as_rate(const SystemParams& params, const ChannelRealization& ch,
                               const ReceivedPowerProfile& rho) {
  const int n = static_cast<int>(ch.src_relay_gain.size());
  const auto terms = detail::antenna_terms(ch, rho);
  const std::uint32_t last = (1u << n) - 1u;
  std::uint32_t best_mask = 0;
  double best_snr = -1.0;
  for (std::uint32_t mask = 1; mask <= last; ++mask) {
    double snr = snr_at_split(params, detail::mask_statistics(terms, mask), 1.0);
    if (snr > best_snr || (snr == best_snr && detail::mask_preferred(mask, best_mask))) {
      best_snr = snr;
      best_mask = mask;
    }
  }
  return RateReport{StrategyTag::pure_as, rate_from_snr(params, best_snr), best_snr,
                    SelectionDetail{AntennaSet::from_mask(best_mask, n), 1.0}};
}

/// Conventional grid-powered AF relay baseline: source and relay each spend
/// half the power budget, all antennas forward with no power splitting, and
/// the relay gain normalizes the full received signal to the fixed relay
/// power. Same distributed beamforming as the harvesting strategies.
inline RateReport af_relay_rate(const SystemParams& params, const ChannelRealization& ch) {
  const double half_power = params.tx_power / 2.0;
  const auto n = ch.src_relay_gain.size();
  double rx_power = 0.0, coherent_sum = 0.0, dest_gain = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rx_power += half_power * ch.src_relay_gain[i] + params.antenna_noise;
    coherent_sum += std::sqrt(ch.relay_dest_gain[i] * ch.src_relay_gain[i]);
    dest_gain += ch.relay_dest_gain[i];
  }
  double gain_sq =
      half_power / (rx_power + static_cast<double>(n) * params.conversion_noise);
  double snr = gain_sq * half_power * coherent_sum * coherent_sum /
               (gain_sq * dest_gain * (params.antenna_noise + params.conversion_noise) +
                params.dest_noise);
  return RateReport{StrategyTag::af, rate_from_snr(params, snr), snr, std::nullopt};
}

/// Point-to-point transmission over the direct source-destination channel at
/// the full power budget.
inline RateReport direct_rate(const SystemParams& params, const ChannelRealization& ch) {
  double snr = params.tx_power * ch.src_dest_gain / params.dest_noise;
  return RateReport{StrategyTag::direct, rate_from_snr(params, snr), snr, std::nullopt};
}

} // namespace hfrelay
