#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "hfrelay/errors.hpp"
#include "hfrelay/ps.hpp"
#include "hfrelay/system.hpp"

namespace hfrelay {

namespace detail {

/// Per-antenna terms shared by every subset evaluation of one realization.
struct AntennaTerms {
  std::vector<double> dest_gain;      // |g_i|^2
  std::vector<double> coherent_amp;   // |g_i h_i| = sqrt(|g_i|^2 |h_i|^2)
  std::vector<double> rx_power;       // received power, W
  double total_rx_power = 0.0;
};

inline AntennaTerms antenna_terms(const ChannelRealization& ch,
                                  const ReceivedPowerProfile& rho) {
  AntennaTerms t;
  auto n = ch.src_relay_gain.size();
  t.dest_gain.resize(n);
  t.coherent_amp.resize(n);
  t.rx_power.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.dest_gain[i] = ch.relay_dest_gain[i];
    t.coherent_amp[i] = std::sqrt(ch.relay_dest_gain[i] * ch.src_relay_gain[i]);
    t.rx_power[i] = rho.antenna_power[i];
    t.total_rx_power += rho.antenna_power[i];
  }
  return t;
}

/// Aggregates for the subset selected by `mask` (bit k = antenna k+1).
/// Accumulation runs in ascending antenna order for every caller, so two
/// evaluations of the same set are bit-identical regardless of how the set
/// was reached; the selection dominance tests rely on that.
inline SetStatistics mask_statistics(const AntennaTerms& t, std::uint32_t mask) {
  SetStatistics st;
  double coherent_sum = 0.0;
  auto n = static_cast<int>(t.dest_gain.size());
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1u) {
      st.dest_gain += t.dest_gain[static_cast<std::size_t>(i)];
      coherent_sum += t.coherent_amp[static_cast<std::size_t>(i)];
      st.forward_rx_power += t.rx_power[static_cast<std::size_t>(i)];
      ++st.set_size;
    }
  }
  st.coherent_gain = coherent_sum * coherent_sum;
  st.total_rx_power = t.total_rx_power;
  return st;
}

/// Tie-break between equally good subsets: fewer antennas first, then the
/// lexicographically smaller sorted index list. For equal popcounts the
/// owner of the lowest differing bit is the lexicographically smaller set.
inline bool mask_preferred(std::uint32_t challenger, std::uint32_t incumbent) {
  auto c_count = std::popcount(challenger);
  auto i_count = std::popcount(incumbent);
  if (c_count != i_count) return c_count < i_count;
  std::uint32_t diff = challenger ^ incumbent;
  if (diff == 0) return false;
  return (diff & (~diff + 1u) & challenger) != 0;
}

} // namespace detail

/// One accepted greedy stage: the stagewise-best SNR at that set size.
struct StageRecord {
  int set_size = 0;
  double snr = 0.0;
};

struct SelectionResult {
  AntennaSet set;
  SplitSolution split;
  std::int64_t evaluations = 0;            // candidate sets optimized
  std::vector<StageRecord> stage_history;  // accepted stages; empty for exhaustive
};

/// Global optimum over all 2^N - 1 non-empty forwarding sets, each with its
/// closed-form optimal split ratio. Ties go to the smaller set, then to the
/// lexicographically smaller index list; the comparison is applied in the
/// reduction, so any evaluation partitioning yields the same winner.
inline SelectionResult exhaustive_select(const SystemParams& params,
                                         const ChannelRealization& ch,
                                         const ReceivedPowerProfile& rho,
                                         int max_antennas = 24) {
  const int n = static_cast<int>(ch.src_relay_gain.size());
  if (n > max_antennas)
    throw GuardError("exhaustive selection refused: " + std::to_string(n) +
                     " antennas exceeds the guard of " + std::to_string(max_antennas) +
                     " (2^N - 1 candidate sets)");
  const auto terms = detail::antenna_terms(ch, rho);
  const std::uint32_t last = (1u << n) - 1u;
  std::uint32_t best_mask = 0;
  SplitSolution best;
  best.snr = -1.0;
  for (std::uint32_t mask = 1; mask <= last; ++mask) {
    const auto st = detail::mask_statistics(terms, mask);
    const auto sol = optimal_split(params, st);
    if (sol.snr > best.snr ||
        (sol.snr == best.snr && detail::mask_preferred(mask, best_mask))) {
      best = sol;
      best_mask = mask;
    }
  }
  return SelectionResult{AntennaSet::from_mask(best_mask, n), best,
                         static_cast<std::int64_t>(last), {}};
}

/// Stagewise greedy search: starting from the empty set, each stage adds the
/// single antenna that maximizes the optimally-split SNR, accepting the stage
/// while the stagewise best does not decrease (ties accepted). Stops at the
/// first decrease or once every antenna forwards, and returns the last
/// accepted stage. Evaluates at most N(N+1)/2 candidate sets.
inline SelectionResult greedy_select(const SystemParams& params, const ChannelRealization& ch,
                                     const ReceivedPowerProfile& rho) {
  const int n = static_cast<int>(ch.src_relay_gain.size());
  const auto terms = detail::antenna_terms(ch, rho);
  std::uint32_t accepted_mask = 0;
  SplitSolution accepted_split;
  double accepted_snr = 0.0; // J'(0): forwarding nothing yields zero SNR
  std::int64_t evaluations = 0;
  std::vector<StageRecord> history;

  for (int stage = 1; stage <= n; ++stage) {
    std::uint32_t stage_mask = 0;
    SplitSolution stage_best;
    stage_best.snr = -1.0;
    for (int i = 0; i < n; ++i) { // ascending index order breaks ties low
      if (accepted_mask >> i & 1u) continue;
      std::uint32_t candidate = accepted_mask | (1u << i);
      const auto sol = optimal_split(params, detail::mask_statistics(terms, candidate));
      ++evaluations;
      if (sol.snr > stage_best.snr) {
        stage_best = sol;
        stage_mask = candidate;
      }
    }
    if (stage_best.snr < accepted_snr) break;
    accepted_mask = stage_mask;
    accepted_split = stage_best;
    accepted_snr = stage_best.snr;
    history.push_back(StageRecord{stage, stage_best.snr});
  }
  return SelectionResult{AntennaSet::from_mask(accepted_mask, n), accepted_split, evaluations,
                         std::move(history)};
}

} // namespace hfrelay
