#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfrelay/baselines.hpp"
#include "hfrelay/rng.hpp"
#include "hfrelay/units.hpp"

namespace hfrelay {

/// Node placement, meters.
struct Geometry {
  double src_relay = 5.0;   // d1
  double relay_dest = 10.0; // d2
  double src_dest = 15.0;   // d3
};

inline void validate(const Geometry& g) {
  if (!(g.src_relay > 0) || !(g.relay_dest > 0) || !(g.src_dest > 0))
    throw std::invalid_argument("distances must be > 0");
}

enum class SweepVariable { src_dest_distance, tx_power_dbw };

struct Sweep {
  SweepVariable variable = SweepVariable::tx_power_dbw;
  double start = 0.0;
  double stop = 20.0;
  double step = 2.0;
};

/// Grid {start, start+step, ...} up to stop (inclusive within rounding fuzz).
inline std::vector<double> sweep_grid(const Sweep& sweep) {
  if (!(sweep.step > 0)) throw std::invalid_argument("sweep step must be > 0");
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    double v = sweep.start + static_cast<double>(k) * sweep.step;
    if (v > sweep.stop + sweep.step * 1e-9) break;
    grid.push_back(v);
  }
  if (grid.empty()) throw std::invalid_argument("sweep range is empty");
  return grid;
}

struct ExperimentConfig {
  SystemParams params;
  Geometry geometry;
  long trials = 1000;
  std::uint64_t seed = 1;
  std::vector<StrategyTag> strategies;
  Sweep sweep;
};

inline void validate(const ExperimentConfig& config) {
  validate(config.params);
  validate(config.geometry);
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config.strategies.empty()) throw std::invalid_argument("no strategies requested");
  sweep_grid(config.sweep);
}

/// Mean rate and standard error per requested strategy at one sweep value.
/// Columns align with ExperimentConfig::strategies.
struct SweepRow {
  double sweep_value = 0.0;
  std::vector<double> mean_rate;
  std::vector<double> std_error;
  long trials = 0;
};

/// Rayleigh-fading draw with exponent-2 path loss: each squared gain is a
/// unit-mean exponential scaled by the corresponding squared distance.
/// Consumes exactly 2N + 1 draws in a fixed order (relay gains, destination
/// gains, direct gain), so a reseeded stream reproduces bit-identically.
inline ChannelRealization sample_channel(const Geometry& geometry, const SystemParams& params,
                                         std::mt19937_64& rng) {
  validate(geometry);
  ChannelRealization ch;
  const auto n = static_cast<std::size_t>(params.n_antennas);
  const double src_loss = geometry.src_relay * geometry.src_relay;
  const double dest_loss = geometry.relay_dest * geometry.relay_dest;
  ch.src_relay_gain.resize(n);
  ch.relay_dest_gain.resize(n);
  for (std::size_t i = 0; i < n; ++i) ch.src_relay_gain[i] = unit_exponential(rng) / src_loss;
  for (std::size_t i = 0; i < n; ++i) ch.relay_dest_gain[i] = unit_exponential(rng) / dest_loss;
  ch.src_dest_gain = unit_exponential(rng) / (geometry.src_dest * geometry.src_dest);
  return ch;
}

/// One strategy on one realization. Every strategy sees the same channel
/// draw within a trial (common random numbers), so per-trial dominance
/// relations carry through to the averaged curves.
inline RateReport evaluate_strategy(StrategyTag tag, const SystemParams& params,
                                    const ChannelRealization& ch,
                                    const ReceivedPowerProfile& rho) {
  switch (tag) {
    case StrategyTag::greedy: {
      const auto sel = greedy_select(params, ch, rho);
      return RateReport{tag, rate_from_snr(params, sel.split.snr), sel.split.snr,
                        SelectionDetail{sel.set, sel.split.split}};
    }
    case StrategyTag::exhaustive: {
      const auto sel = exhaustive_select(params, ch, rho);
      return RateReport{tag, rate_from_snr(params, sel.split.snr), sel.split.snr,
                        SelectionDetail{sel.set, sel.split.split}};
    }
    case StrategyTag::pure_ps: return pure_ps_rate(params, ch, rho);
    case StrategyTag::pure_as: return pure_as_rate(params, ch, rho);
    case StrategyTag::af: return af_relay_rate(params, ch);
    case StrategyTag::direct: return direct_rate(params, ch);
  }
  throw std::invalid_argument("unknown strategy tag");
}

namespace detail {

/// Neumaier-compensated sum in index order; deterministic regardless of how
/// the per-trial values were produced.
inline double compensated_sum(const std::vector<double>& values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

inline SweepRow sweep_point(const SystemParams& params, const Geometry& geometry,
                            const std::vector<StrategyTag>& strategies, long trials,
                            std::uint64_t seed, double sweep_value) {
  const auto n_strategies = strategies.size();
  std::vector<std::vector<double>> rates(n_strategies);
  for (auto& r : rates) r.reserve(static_cast<std::size_t>(trials));

  for (long trial = 0; trial < trials; ++trial) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(trial));
    const auto ch = sample_channel(geometry, params, rng);
    const auto rho = received_powers(params, ch);
    for (std::size_t s = 0; s < n_strategies; ++s)
      rates[s].push_back(evaluate_strategy(strategies[s], params, ch, rho).rate);
  }

  SweepRow row;
  row.sweep_value = sweep_value;
  row.trials = trials;
  for (std::size_t s = 0; s < n_strategies; ++s) {
    double mean = compensated_sum(rates[s]) / static_cast<double>(trials);
    double stderr_ = 0.0;
    if (trials > 1) {
      std::vector<double> sq;
      sq.reserve(rates[s].size());
      for (double r : rates[s]) sq.push_back((r - mean) * (r - mean));
      double var = compensated_sum(sq) / static_cast<double>(trials - 1);
      stderr_ = std::sqrt(var / static_cast<double>(trials));
    }
    row.mean_rate.push_back(mean);
    row.std_error.push_back(stderr_);
  }
  return row;
}

} // namespace detail

/// Rate-versus-distance experiment: the relay sits on the source-destination
/// line at fixed src_relay distance, and the swept source-destination
/// distance determines the relay-destination leg. Per-trial streams do not
/// depend on the sweep value, so the same fading draws underlie every point.
inline std::vector<SweepRow> run_distance_sweep(const ExperimentConfig& config) {
  validate(config);
  if (config.sweep.variable != SweepVariable::src_dest_distance)
    throw std::invalid_argument("distance sweep requires sweep variable d3");
  std::vector<SweepRow> rows;
  for (double d3 : sweep_grid(config.sweep)) {
    if (!(d3 > config.geometry.src_relay))
      throw std::invalid_argument("src-dest distance " + std::to_string(d3) +
                                  " must exceed the src-relay distance " +
                                  std::to_string(config.geometry.src_relay));
    Geometry g{config.geometry.src_relay, d3 - config.geometry.src_relay, d3};
    rows.push_back(detail::sweep_point(config.params, g, config.strategies, config.trials,
                                       config.seed, d3));
  }
  return rows;
}

/// Rate-versus-transmit-power experiment at fixed geometry; the sweep grid is
/// in dBW and converted to watts per point.
inline std::vector<SweepRow> run_power_sweep(const ExperimentConfig& config) {
  validate(config);
  if (config.sweep.variable != SweepVariable::tx_power_dbw)
    throw std::invalid_argument("power sweep requires sweep variable p_dbw");
  std::vector<SweepRow> rows;
  for (double p_dbw : sweep_grid(config.sweep)) {
    SystemParams params = config.params;
    params.tx_power = dbw_to_watts(p_dbw);
    rows.push_back(detail::sweep_point(params, config.geometry, config.strategies,
                                       config.trials, config.seed, p_dbw));
  }
  return rows;
}

} // namespace hfrelay
