#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "hfrelay/system.hpp"

namespace hfrelay {

/// Aggregates of one forwarding set; everything the split-ratio optimization
/// needs to know about a (channel, set) pair.
struct SetStatistics {
  double dest_gain = 0.0;        // sum of |g_i|^2 over the set
  double coherent_gain = 0.0;    // (sum of |g_i h_i| over the set)^2
  double forward_rx_power = 0.0; // received power summed over the set, W
  double total_rx_power = 0.0;   // received power summed over all antennas, W
  int set_size = 0;
};

inline SetStatistics set_statistics(const SystemParams&, const ChannelRealization& ch,
                                    const ReceivedPowerProfile& rho, const AntennaSet& set) {
  SetStatistics st;
  st.set_size = set.size();
  double coherent_sum = 0.0;
  for (int i : set.indices()) {
    auto k = static_cast<std::size_t>(i - 1);
    st.dest_gain += ch.relay_dest_gain[k];
    coherent_sum += std::sqrt(ch.relay_dest_gain[k] * ch.src_relay_gain[k]);
    st.forward_rx_power += rho.antenna_power[k];
  }
  st.coherent_gain = coherent_sum * coherent_sum;
  for (double p : rho.antenna_power) st.total_rx_power += p;
  return st;
}

/// End-to-end SNR as a function of the split ratio, for a fixed forwarding
/// set. This is the amplification gain substituted into the two-hop SNR and
/// reduced to the set aggregates; it agrees with snr_full_model to rounding.
inline double snr_at_split(const SystemParams& params, const SetStatistics& st, double split) {
  double residual = st.total_rx_power - st.forward_rx_power * split; // >= 0 for split <= 1
  double num = params.conversion_eff * params.tx_power * st.coherent_gain * split * residual;
  double den = params.conversion_eff * st.dest_gain *
                   (split * params.antenna_noise + params.conversion_noise) * residual +
               params.dest_noise *
                   (st.set_size * params.conversion_noise + st.forward_rx_power * split);
  if (!(den > 0.0))
    throw std::logic_error("snr_at_split: non-positive denominator (inconsistent inputs)");
  return num / den;
}

/// Stationary points of snr_at_split. The objective is a ratio of quadratics
/// whose derivative has a positive-prefactor quadratic bracket
///   R_fwd^2 * q * s^2 - 2 R_fwd * E * s + R_tot * E,
/// with q = eff*cnoise*dest_gain - dnoise, E = eff*cnoise*dest_gain*R_tot +
/// n*dnoise*cnoise and F = dnoise*R_tot + n*dnoise*cnoise (so E - F = q*R_tot).
struct KktRoots {
  /// Root that never lies in [0,1]; +/-infinity when the forwarding set
  /// receives no power. Absent in the degenerate case q == 0.
  std::optional<double> outside;
  /// Non-negative stationary candidate; the maximizer before clamping.
  /// Absent in the degenerate case.
  std::optional<double> stationary;
  /// Root of the degenerate (linear) bracket when q == 0 within tolerance:
  /// R_tot / (2 R_fwd).
  std::optional<double> degenerate;
};

namespace detail {

// q == 0 is measure-zero in floating point; treat |q| below this multiple of
// the destination noise as the degenerate branch to keep the generic-branch
// denominator away from cancellation.
inline constexpr double kDegenerateTol = 1e-12;

struct BracketTerms {
  double q; // eff * cnoise * dest_gain - dnoise
  double e; // eff * cnoise * dest_gain * R_tot + n * dnoise * cnoise
  double f; // dnoise * R_tot + n * dnoise * cnoise
  bool degenerate;
};

inline BracketTerms bracket_terms(const SystemParams& params, const SetStatistics& st) {
  BracketTerms t{};
  double gain_noise = params.conversion_eff * params.conversion_noise * st.dest_gain;
  t.q = gain_noise - params.dest_noise;
  double floor_noise = st.set_size * params.dest_noise * params.conversion_noise;
  t.e = gain_noise * st.total_rx_power + floor_noise;
  t.f = params.dest_noise * st.total_rx_power + floor_noise;
  t.degenerate = std::abs(t.q) <= kDegenerateTol * params.dest_noise;
  return t;
}

} // namespace detail

inline KktRoots kkt_roots(const SystemParams& params, const SetStatistics& st) {
  const auto t = detail::bracket_terms(params, st);
  KktRoots roots;
  if (t.degenerate) {
    roots.degenerate = st.total_rx_power / (2.0 * st.forward_rx_power);
    return roots;
  }
  double sqrt_e = std::sqrt(t.e);
  double sqrt_f = std::sqrt(t.f);
  if (st.forward_rx_power == 0.0) {
    // Bracket collapses to the constant R_tot * E > 0: no finite stationary
    // point, objective non-decreasing on [0,1].
    roots.outside = t.q > 0 ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
    roots.stationary = std::numeric_limits<double>::infinity();
    return roots;
  }
  roots.outside = sqrt_e * (sqrt_e + sqrt_f) / (st.forward_rx_power * t.q);
  // Algebraically sqrt(E)*(sqrt(E)-sqrt(F)) / (R_fwd * q); multiplying by
  // (sqrt(E)+sqrt(F))/(sqrt(E)+sqrt(F)) cancels q against E - F = q * R_tot,
  // which avoids subtracting nearly equal square roots and makes the result
  // manifestly non-negative.
  roots.stationary = sqrt_e * st.total_rx_power / (st.forward_rx_power * (sqrt_e + sqrt_f));
  return roots;
}

/// Derivative of snr_at_split. Uses the factorized form
/// prefactor * R_fwd^2 * q * (s - outside)(s - stationary) in the generic
/// case so the sign pattern and the zero at the stationary point are exact;
/// falls back to the expanded bracket when the factorization degenerates.
inline double snr_split_derivative(const SystemParams& params, const SetStatistics& st,
                                   double split) {
  double residual = st.total_rx_power - st.forward_rx_power * split;
  double den = params.conversion_eff * st.dest_gain *
                   (split * params.antenna_noise + params.conversion_noise) * residual +
               params.dest_noise *
                   (st.set_size * params.conversion_noise + st.forward_rx_power * split);
  double prefactor =
      params.conversion_eff * params.tx_power * st.coherent_gain / (den * den);
  const auto t = detail::bracket_terms(params, st);
  if (!t.degenerate && st.forward_rx_power > 0.0) {
    const auto roots = kkt_roots(params, st);
    return prefactor * st.forward_rx_power * st.forward_rx_power * t.q *
           (split - *roots.outside) * (split - *roots.stationary);
  }
  double bracket = st.forward_rx_power * st.forward_rx_power * t.q * split * split -
                   2.0 * st.forward_rx_power * t.e * split + st.total_rx_power * t.e;
  return prefactor * bracket;
}

/// Which rule produced a split ratio.
enum class SplitBranch {
  stationary, // interior root of the derivative (generic case)
  degenerate, // linear-bracket root (q == 0 case)
  clamped,    // unconstrained optimum at or above 1, clamped to 1
  grid,       // grid-search oracle result
};

inline const char* to_string(SplitBranch b) {
  switch (b) {
    case SplitBranch::stationary: return "stationary";
    case SplitBranch::degenerate: return "degenerate";
    case SplitBranch::clamped: return "clamped";
    case SplitBranch::grid: return "grid";
  }
  return "?";
}

struct SplitSolution {
  double split = 0.0; // optimal power-splitting ratio in [0,1]
  double snr = 0.0;   // objective value at that ratio
  SplitBranch branch = SplitBranch::stationary;
};

/// Closed-form optimal split ratio for a fixed forwarding set: the feasible
/// stationary point of the concave objective, clamped to 1 when it falls
/// outside the box.
inline SplitSolution optimal_split(const SystemParams& params, const SetStatistics& st) {
  const auto roots = kkt_roots(params, st);
  double candidate = roots.degenerate ? *roots.degenerate : *roots.stationary;
  SplitSolution sol;
  if (candidate >= 1.0 || std::isnan(candidate)) {
    // NaN only arises from 0/0 in fully degenerate zero-power inputs, where
    // the objective is identically zero; treat like the clamp.
    sol.split = 1.0;
    sol.branch = SplitBranch::clamped;
  } else if (candidate < 0.0) {
    // Unreachable by the sign analysis of the roots; a negative candidate
    // means the numerics are broken, not that the clamp should quietly fire.
    throw std::logic_error("optimal_split: negative stationary candidate");
  } else {
    sol.split = candidate;
    sol.branch = roots.degenerate ? SplitBranch::degenerate : SplitBranch::stationary;
  }
  sol.snr = snr_at_split(params, st, sol.split);
  return sol;
}

/// Exhaustive oracle for optimal_split: evaluates the objective on the grid
/// {0, step, 2*step, ..., 1} and returns the argmax, ties broken by the
/// lowest ratio. Intentionally independent of the closed form.
inline SplitSolution grid_search_split(const SystemParams& params, const SetStatistics& st,
                                       double step) {
  if (!(step > 0.0 && step <= 0.01))
    throw std::invalid_argument("grid step must lie in (0, 0.01]");
  auto points = static_cast<long>(std::floor(1.0 / step + 1e-9));
  SplitSolution best;
  best.split = 0.0;
  best.snr = snr_at_split(params, st, 0.0);
  best.branch = SplitBranch::grid;
  for (long k = 1; k <= points; ++k) {
    double s = static_cast<double>(k) * step;
    if (s > 1.0) s = 1.0;
    double value = snr_at_split(params, st, s);
    if (value > best.snr) {
      best.snr = value;
      best.split = s;
    }
  }
  if (static_cast<double>(points) * step < 1.0) {
    double value = snr_at_split(params, st, 1.0);
    if (value > best.snr) {
      best.snr = value;
      best.split = 1.0;
    }
  }
  return best;
}

} // namespace hfrelay
