#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "qwalk/distribution.hpp"
#include "qwalk/network.hpp"

namespace qwalk {

using cplx = std::complex<double>;

/// Hopping amplitude of the tunnel-coupled dot array in the dimensionless
/// time units of the dephasing master equation.
inline constexpr double kDotHopping = 0.25;

/// Largest N accepted by evolve_exact (the generator is N^2 x N^2 dense).
inline constexpr int kExactMaxNodes = 12;

/// Row-major N x N complex density matrix tagged with its time.
class DensityMatrix {
 public:
  explicit DensityMatrix(int nodes);

  static DensityMatrix pure_node(int nodes, int origin);
  static DensityMatrix maximally_mixed(int nodes);

  int nodes() const { return nodes_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  cplx& operator()(int j, int k) { return entries_[static_cast<std::size_t>(j) * nodes_ + k]; }
  const cplx& operator()(int j, int k) const {
    return entries_[static_cast<std::size_t>(j) * nodes_ + k];
  }

  std::span<cplx> data() { return entries_; }
  std::span<const cplx> data() const { return entries_; }

  cplx trace() const;
  /// max_{j,k} |rho_jk - conj(rho_kj)|.
  double hermiticity_defect() const;
  /// tr(rho^2).
  double purity() const;
  /// sum_{j != k} |rho_jk|^2.
  double coherence_weight() const;
  std::vector<double> populations() const;

  /// max |a - b| over all entries.
  static double max_abs_difference(const DensityMatrix& a, const DensityMatrix& b);

 private:
  int nodes_;
  double time_ = 0.0;
  std::vector<cplx> entries_;
};

DensityMatrix init_density(int nodes, int origin);

/// Node distribution carried by the diagonal of rho.
ProbabilityDist diagonal(const DensityMatrix& rho, int origin = 0);

struct SimConfig {
  double step = 0.01;           // upper bound on the integration step
  double t_end = 0.0;
  double record_stride = 0.0;   // sampling interval; 0 records only t = 0 and t_end
  double tol = 1e-9;            // allowed trace / Hermiticity drift per sample

  void validate() const;
};

/// Dephasing master equation on a regular network:
///   d rho_jk/dt = -i [H_s, rho]_jk - gamma (1 - delta_jk) rho_jk
/// with H_s = g * adjacency (g = 1/4 for the dot array).
class MasterEquation {
 public:
  MasterEquation(RegularNetwork net, double gamma, double hopping = kDotHopping);

  const RegularNetwork& network() const { return net_; }
  double gamma() const { return gamma_; }
  double hopping() const { return hopping_; }

  void rhs(const DensityMatrix& rho, DensityMatrix& out) const;
  DensityMatrix rhs(const DensityMatrix& rho) const;

  /// Step ceiling for the fixed-step integrator: min(0.05/(1+gamma), 0.05/l).
  double stable_step() const;

  /// Advances `rho` by `dt` with equal fourth-order Runge-Kutta steps no
  /// longer than min(step_cap, stable_step()). When `population_integral`
  /// is non-empty the integral of the diagonal over the interval is added
  /// to it using the same stages.
  void advance(DensityMatrix& rho, double dt, double step_cap,
               std::span<double> population_integral = {}) const;

 private:
  RegularNetwork net_;
  double gamma_;
  double hopping_;
};

using Trajectory = std::vector<DensityMatrix>;

/// Integrates to cfg.t_end, invoking `on_sample` at t = 0, at every multiple
/// of cfg.record_stride and at t_end. Throws InvariantError when trace or
/// Hermiticity drift exceeds 100 * cfg.tol.
void evolve(const MasterEquation& eq, const DensityMatrix& rho0, const SimConfig& cfg,
            const std::function<void(const DensityMatrix&)>& on_sample);

Trajectory evolve(const MasterEquation& eq, const DensityMatrix& rho0, const SimConfig& cfg);

/// Reference propagator: exponentiates the N^2 x N^2 generator by scaling
/// and squaring. Throws SizeError for N > kExactMaxNodes.
DensityMatrix evolve_exact(const MasterEquation& eq, const DensityMatrix& rho0, double t);

}  // namespace qwalk
