#include "qwalk/network.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

RegularNetwork::RegularNetwork(int nodes, int range) : nodes_(nodes), range_(range) {
  if (nodes < 3) throw ParameterError("network needs N >= 3, got N=" + std::to_string(nodes));
  if (range < 1 || 2 * range + 1 > nodes) {
    throw ParameterError("neighbour range must satisfy 1 <= l <= (N-1)/2, got N=" +
                         std::to_string(nodes) + " l=" + std::to_string(range));
  }
}

int RegularNetwork::wrap(long long index) const {
  long long r = index % nodes_;
  if (r < 0) r += nodes_;
  return static_cast<int>(r);
}

std::vector<int> RegularNetwork::neighbors(int node) const {
  if (node < 0 || node >= nodes_) throw ParameterError("node index out of range");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(degree()));
  for (int m = 1; m <= range_; ++m) {
    out.push_back(wrap(static_cast<long long>(node) + m));
    out.push_back(wrap(static_cast<long long>(node) - m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> RegularNetwork::offsets() const {
  std::vector<int> out(static_cast<std::size_t>(range_));
  for (int m = 1; m <= range_; ++m) out[m - 1] = m;
  return out;
}

RegularNetwork build_network(int nodes, int range) { return RegularNetwork(nodes, range); }

Spectrum spectrum(const RegularNetwork& net, double hopping) {
  if (!(hopping > 0.0)) throw ParameterError("hopping amplitude must be positive");
  const int n_nodes = net.nodes();
  const int l = net.range();
  Spectrum s;
  s.hopping = hopping;
  s.thetas.resize(n_nodes);
  s.laplacian_rates.resize(n_nodes);
  s.hop_freqs.resize(n_nodes);
  const auto offs = net.offsets();
  s.sine_sums = sine_sums(n_nodes, offs);
  for (int n = 0; n < n_nodes; ++n) {
    const double theta = 2.0 * std::numbers::pi * n / n_nodes;
    double cos_sum = 0.0;
    for (int m = 1; m <= l; ++m) cos_sum += std::cos(m * theta);
    s.thetas[n] = theta;
    s.laplacian_rates[n] = 2.0 * l - 2.0 * cos_sum;
    s.hop_freqs[n] = 2.0 * hopping * cos_sum;
  }
  return s;
}

double sine_sum(int nodes, int mode, std::span<const int> offsets) {
  double acc = 0.0;
  for (const int r : offsets) {
    // reduce k*r mod N first so that modes k and N-k see the same argument
    const long long red = (static_cast<long long>(mode) * r) % nodes;
    const long long folded = std::min(red, static_cast<long long>(nodes) - red);
    const double sv = std::sin(std::numbers::pi * static_cast<double>(folded) / nodes);
    acc += sv * sv;
  }
  return acc;
}

std::vector<double> sine_sums(int nodes, std::span<const int> offsets) {
  if (nodes < 1) throw ParameterError("sine_sums needs at least one node");
  std::vector<double> out(static_cast<std::size_t>(nodes));
  for (int k = 0; k < nodes; ++k) out[k] = sine_sum(nodes, k, offsets);
  return out;
}

double sum_of_squares(std::span<const int> offsets) {
  double acc = 0.0;
  for (const int r : offsets) acc += static_cast<double>(r) * r;
  return acc;
}

double sum_of_squares(int range) {
  const double l = range;
  return l * (l + 1.0) * (2.0 * l + 1.0) / 6.0;
}

std::vector<double> hamiltonian_matrix(const RegularNetwork& net) {
  const int n = net.nodes();
  std::vector<double> h(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    h[static_cast<std::size_t>(i) * n + i] = -2.0 * net.range();
    for (const int j : net.neighbors(i)) h[static_cast<std::size_t>(i) * n + j] = 1.0;
  }
  return h;
}

double verify_spectrum(const RegularNetwork& net) {
  const int n = net.nodes();
  const auto h = hamiltonian_matrix(net);
  const Spectrum s = spectrum(net);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  double worst = 0.0;
  std::vector<std::complex<double>> q(n);
  for (int mode = 0; mode < n; ++mode) {
    for (int j = 0; j < n; ++j) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(mode) * j) % n) / n;
      q[j] = std::polar(norm, phase);
    }
    const double energy = -s.laplacian_rates[mode];
    for (int i = 0; i < n; ++i) {
      std::complex<double> hq = 0.0;
      for (int j = 0; j < n; ++j) hq += h[static_cast<std::size_t>(i) * n + j] * q[j];
      worst = std::max(worst, std::abs(hq - energy * q[i]));
    }
  }
  return worst;
}

}  // namespace qwalk
