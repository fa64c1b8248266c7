#include "qwalk/large_decoherence.hpp"

#include <cmath>

#include "qwalk/errors.hpp"
#include "qwalk/kernels.hpp"

namespace qwalk {

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("decoherence rate must be positive");
}

void check_origin(std::size_t nodes, int origin) {
  if (origin < 0 || static_cast<std::size_t>(origin) >= nodes) {
    throw ParameterError("origin node out of range");
  }
}

// (1 - exp(-x)) / x, with the two-term series below 1e-8 where the quotient
// cancels.
double averaged_decay(double x) {
  if (x < 1e-8) return 1.0 - 0.5 * x;
  return -std::expm1(-x) / x;
}

}  // namespace

DecayRates decay_rates(const RegularNetwork& net, double gamma) {
  check_gamma(gamma);
  const auto s = sine_sums(net.nodes(), net.offsets());
  DecayRates r;
  r.conserved.assign(s.size(), 0.0);
  r.dephasing.assign(s.size(), gamma);
  r.fast.resize(s.size());
  r.slow.resize(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    r.slow[k] = s[k] / (2.0 * gamma);
    r.fast[k] = gamma - r.slow[k];
  }
  r.below_gate = gamma < kLargeDecoherenceGate;
  return r;
}

ProbabilityDist relaxed_distribution(std::span<const double> sine_sums, double gamma, double t,
                                     int origin) {
  check_gamma(gamma);
  check_origin(sine_sums.size(), origin);
  if (!(t >= 0.0)) throw ParameterError("time must be non-negative");
  std::vector<double> weights(sine_sums.size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    weights[k] = std::exp(-t * sine_sums[k] / (2.0 * gamma));
  }
  ProbabilityDist out{std::vector<double>(weights.size()), origin};
  kernels::cosine_series_parallel(weights, origin, out.values);
  return out;
}

ProbabilityDist relaxed_time_avg_distribution(std::span<const double> sine_sums, double gamma,
                                              double horizon, int origin) {
  check_gamma(gamma);
  check_origin(sine_sums.size(), origin);
  if (!(horizon >= 0.0)) throw ParameterError("averaging horizon must be non-negative");
  std::vector<double> weights(sine_sums.size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    weights[k] = averaged_decay(horizon * sine_sums[k] / (2.0 * gamma));
  }
  ProbabilityDist out{std::vector<double>(weights.size()), origin};
  kernels::cosine_series_parallel(weights, origin, out.values);
  return out;
}

ProbabilityDist approx_distribution(const RegularNetwork& net, double gamma, double t, int origin) {
  const auto s = sine_sums(net.nodes(), net.offsets());
  return relaxed_distribution(s, gamma, t, origin);
}

ProbabilityDist approx_time_avg_distribution(const RegularNetwork& net, double gamma,
                                             double horizon, int origin) {
  const auto s = sine_sums(net.nodes(), net.offsets());
  return relaxed_time_avg_distribution(s, gamma, horizon, origin);
}

}  // namespace qwalk
