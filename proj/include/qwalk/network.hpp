#pragma once

#include <span>
#include <vector>

namespace qwalk {

/// Ring of N nodes where every node is linked to its l nearest neighbours on
/// each side (degree 2l). Construction rejects N <= 2l so that the +m and -m
/// neighbours are always distinct nodes.
class RegularNetwork {
 public:
  RegularNetwork(int nodes, int range);

  int nodes() const { return nodes_; }
  int range() const { return range_; }
  int degree() const { return 2 * range_; }

  /// Index reduced modulo N into [0, N).
  int wrap(long long index) const;

  /// Sorted neighbour list of `node`.
  std::vector<int> neighbors(int node) const;

  /// Link offsets {1, ..., l}.
  std::vector<int> offsets() const;

 private:
  int nodes_;
  int range_;
};

RegularNetwork build_network(int nodes, int range);

/// Closed-form spectrum of the circulant network.
///
/// thetas[n]          = 2 pi n / N
/// laplacian_rates[n] = 2l - 2 sum_m cos(m theta_n)          (>= 0)
/// hop_freqs[n]       = 2 g sum_m cos(m theta_n)             (uniform diagonal dropped)
/// sine_sums[n]       = sum_m sin^2(pi n m / N)              (= laplacian_rates[n] / 4)
struct Spectrum {
  double hopping = 1.0;
  std::vector<double> thetas;
  std::vector<double> laplacian_rates;
  std::vector<double> hop_freqs;
  std::vector<double> sine_sums;
};

Spectrum spectrum(const RegularNetwork& net, double hopping = 1.0);

/// sum over r in `offsets` of sin^2(pi k r / N). A regular network uses
/// offsets {1..l}; a long-range interacting cycle uses {1, m}.
double sine_sum(int nodes, int mode, std::span<const int> offsets);
std::vector<double> sine_sums(int nodes, std::span<const int> offsets);

/// sum over r in `offsets` of r^2.
double sum_of_squares(std::span<const int> offsets);

/// l(l+1)(2l+1)/6.
double sum_of_squares(int range);

/// Dense row-major Hamiltonian: -2l on the diagonal, +1 on every link.
std::vector<double> hamiltonian_matrix(const RegularNetwork& net);

/// Applies the explicit Hamiltonian to every Bloch vector and returns
/// max_n || H q_n - E_n q_n ||_inf with E_n = -laplacian_rates[n].
double verify_spectrum(const RegularNetwork& net);

}  // namespace qwalk
