#include "qwalk/coherent.hpp"

#include <cmath>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/kernels.hpp"

namespace qwalk {

namespace {

void check_origin(const RegularNetwork& net, int origin) {
  if (origin < 0 || origin >= net.nodes()) throw ParameterError("origin node out of range");
}

// exp(-i t eps_n) for every mode.
std::vector<std::complex<double>> evolution_phases(const Spectrum& s, double t) {
  std::vector<std::complex<double>> phases(s.hop_freqs.size());
  for (std::size_t n = 0; n < phases.size(); ++n) phases[n] = std::polar(1.0, -t * s.hop_freqs[n]);
  return phases;
}

}  // namespace

std::complex<double> transition_amplitude(const RegularNetwork& net, double hopping, double t,
                                          int source, int target) {
  check_origin(net, source);
  check_origin(net, target);
  const Spectrum s = spectrum(net, hopping);
  const auto phases = evolution_phases(s, t);
  const int n = net.nodes();
  const long long d = net.wrap(static_cast<long long>(target) - source);
  std::complex<double> acc = 0.0;
  for (int mode = 0; mode < n; ++mode) {
    const double angle = s.thetas[static_cast<std::size_t>((d * mode) % n)];
    acc += phases[mode] * std::polar(1.0, -angle);
  }
  return acc / static_cast<double>(n);
}

ProbabilityDist quantum_distribution(const RegularNetwork& net, double hopping, double t,
                                     int origin) {
  check_origin(net, origin);
  const auto phases = evolution_phases(spectrum(net, hopping), t);
  std::vector<std::complex<double>> amps(phases.size());
  kernels::fourier_series_parallel(phases, origin, amps);
  ProbabilityDist out{std::vector<double>(amps.size()), origin};
  for (std::size_t k = 0; k < amps.size(); ++k) out.values[k] = std::norm(amps[k]);
  return out;
}

ProbabilityDist classical_distribution(const RegularNetwork& net, double t, int origin) {
  check_origin(net, origin);
  if (!(t >= 0.0)) throw ParameterError("classical propagation requires t >= 0");
  const Spectrum s = spectrum(net);
  std::vector<double> weights(s.laplacian_rates.size());
  for (std::size_t n = 0; n < weights.size(); ++n) weights[n] = std::exp(-t * s.laplacian_rates[n]);
  ProbabilityDist out{std::vector<double>(weights.size()), origin};
  kernels::cosine_series_parallel(weights, origin, out.values);
  return out;
}

}  // namespace qwalk
