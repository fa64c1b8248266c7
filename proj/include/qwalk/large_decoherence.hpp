#pragma once

#include <span>
#include <vector>

#include "qwalk/distribution.hpp"
#include "qwalk/network.hpp"

namespace qwalk {

/// Below this rate the large-decoherence expansion is flagged as unreliable.
inline constexpr double kLargeDecoherenceGate = 5.0;

/// The four per-mode decay rates of the populations/coherences system at
/// large gamma. Only `slow` (s_k / 2 gamma) survives in the populations.
struct DecayRates {
  std::vector<double> conserved;  // 0
  std::vector<double> dephasing;  // gamma
  std::vector<double> fast;       // gamma - s_k / (2 gamma)
  std::vector<double> slow;       // s_k / (2 gamma)
  bool below_gate = false;
};

DecayRates decay_rates(const RegularNetwork& net, double gamma);

/// Large-gamma node distribution:
///   P_j(t) = (1/N) sum_k exp(-t s_k / (2 gamma)) cos(2 pi (j - origin) k / N)
ProbabilityDist approx_distribution(const RegularNetwork& net, double gamma, double t, int origin);

/// Exact time average of approx_distribution over [0, horizon]. horizon = 0
/// returns the t = 0 distribution.
ProbabilityDist approx_time_avg_distribution(const RegularNetwork& net, double gamma,
                                             double horizon, int origin);

// Same as above for an arbitrary table of mode sine sums (one per mode k),
// e.g. sine_sums(N, {1, m}) for a long-range interacting cycle.
ProbabilityDist relaxed_distribution(std::span<const double> sine_sums, double gamma, double t,
                                     int origin);
ProbabilityDist relaxed_time_avg_distribution(std::span<const double> sine_sums, double gamma,
                                              double horizon, int origin);

}  // namespace qwalk
