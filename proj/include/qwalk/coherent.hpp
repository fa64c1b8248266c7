#pragma once

#include <complex>

#include "qwalk/distribution.hpp"
#include "qwalk/network.hpp"

namespace qwalk {

/// <target| exp(-i H t) |source> for hopping amplitude g, computed as the
/// spectral sum (1/N) sum_n exp(-i t eps_n) exp(-i (target - source) theta_n).
std::complex<double> transition_amplitude(const RegularNetwork& net, double hopping, double t,
                                          int source, int target);

/// |amplitude|^2 for every target node. Defined for any real t (the result is
/// even in t).
ProbabilityDist quantum_distribution(const RegularNetwork& net, double hopping, double t,
                                     int origin);

/// Continuous-time random walk with unit transfer rate, relaxing as
/// exp(-t lambda_n) per mode. Requires t >= 0.
ProbabilityDist classical_distribution(const RegularNetwork& net, double t, int origin);

}  // namespace qwalk
