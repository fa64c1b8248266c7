#include "qwalk/master_eq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/kernels.hpp"

namespace qwalk {

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(int nodes) : nodes_(nodes) {
  if (nodes < 1) throw ParameterError("density matrix needs at least one node");
  entries_.assign(static_cast<std::size_t>(nodes) * nodes, cplx{0.0, 0.0});
}

DensityMatrix DensityMatrix::pure_node(int nodes, int origin) {
  if (origin < 0 || origin >= nodes) {
    throw ParameterError("origin " + std::to_string(origin) + " outside [0, " +
                         std::to_string(nodes) + ")");
  }
  DensityMatrix rho(nodes);
  rho(origin, origin) = 1.0;
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int nodes) {
  DensityMatrix rho(nodes);
  for (int j = 0; j < nodes; ++j) rho(j, j) = 1.0 / nodes;
  return rho;
}

cplx DensityMatrix::trace() const {
  cplx acc = 0.0;
  for (int j = 0; j < nodes_; ++j) acc += (*this)(j, j);
  return acc;
}

double DensityMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (int j = 0; j < nodes_; ++j) {
    for (int k = j; k < nodes_; ++k) {
      worst = std::max(worst, std::abs((*this)(j, k) - std::conj((*this)(k, j))));
    }
  }
  return worst;
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum_jk rho_jk rho_kj
  cplx acc = 0.0;
  for (int j = 0; j < nodes_; ++j) {
    for (int k = 0; k < nodes_; ++k) acc += (*this)(j, k) * (*this)(k, j);
  }
  return acc.real();
}

double DensityMatrix::coherence_weight() const {
  double acc = 0.0;
  for (int j = 0; j < nodes_; ++j) {
    for (int k = 0; k < nodes_; ++k) {
      if (j != k) acc += std::norm((*this)(j, k));
    }
  }
  return acc;
}

std::vector<double> DensityMatrix::populations() const {
  std::vector<double> p(static_cast<std::size_t>(nodes_));
  for (int j = 0; j < nodes_; ++j) p[j] = (*this)(j, j).real();
  return p;
}

double DensityMatrix::max_abs_difference(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.nodes() != b.nodes()) throw ParameterError("density matrix size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    worst = std::max(worst, std::abs(a.entries_[i] - b.entries_[i]));
  }
  return worst;
}

DensityMatrix init_density(int nodes, int origin) { return DensityMatrix::pure_node(nodes, origin); }

ProbabilityDist diagonal(const DensityMatrix& rho, int origin) {
  if (origin < 0 || origin >= rho.nodes()) throw ParameterError("origin node out of range");
  return ProbabilityDist{rho.populations(), origin};
}

void SimConfig::validate() const {
  if (!(step > 0.0)) throw ParameterError("integration step must be positive");
  if (!(t_end >= 0.0)) throw ParameterError("t_end must be non-negative");
  if (!(record_stride >= 0.0)) throw ParameterError("record stride must be non-negative");
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
}

// ---------------------------------------------------------------------------
// MasterEquation

MasterEquation::MasterEquation(RegularNetwork net, double gamma, double hopping)
    : net_(net), gamma_(gamma), hopping_(hopping) {
  if (!(gamma >= 0.0)) throw ParameterError("decoherence rate must be non-negative");
  if (!(hopping >= 0.0)) throw ParameterError("hopping amplitude must be non-negative");
}

void MasterEquation::rhs(const DensityMatrix& rho, DensityMatrix& out) const {
  if (rho.nodes() != net_.nodes() || out.nodes() != net_.nodes()) {
    throw ParameterError("density matrix does not match the network size");
  }
  kernels::dephasing_rhs_parallel(net_.nodes(), net_.range(), hopping_, gamma_, rho.data(),
                                  out.data());
  out.set_time(rho.time());
}

DensityMatrix MasterEquation::rhs(const DensityMatrix& rho) const {
  DensityMatrix out(rho.nodes());
  rhs(rho, out);
  return out;
}

double MasterEquation::stable_step() const {
  return std::min(0.05 / (1.0 + gamma_), 0.05 / net_.range());
}

namespace {

// y = a + h * b
void axpy(std::span<cplx> y, std::span<const cplx> a, double h, std::span<const cplx> b) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = a[i] + h * b[i];
}

void add_diagonal(std::span<double> acc, double w, const DensityMatrix& rho) {
  for (int j = 0; j < rho.nodes(); ++j) acc[j] += w * rho(j, j).real();
}

}  // namespace

void MasterEquation::advance(DensityMatrix& rho, double dt, double step_cap,
                             std::span<double> population_integral) const {
  if (!(dt >= 0.0)) throw ParameterError("cannot integrate backwards in time");
  if (!(step_cap > 0.0)) throw ParameterError("integration step must be positive");
  if (dt == 0.0) return;
  const bool integrate = !population_integral.empty();
  if (integrate && population_integral.size() != static_cast<std::size_t>(rho.nodes())) {
    throw ParameterError("population integral has the wrong length");
  }

  const double h_max = std::min(step_cap, stable_step());
  const auto steps = static_cast<long long>(std::ceil(dt / h_max * (1.0 - 1e-12)));
  const long long n_steps = std::max(1LL, steps);
  const double h = dt / static_cast<double>(n_steps);
  const double t0 = rho.time();

  const int n = rho.nodes();
  DensityMatrix k1(n), k2(n), k3(n), k4(n), stage(n);
  for (long long s = 0; s < n_steps; ++s) {
    rhs(rho, k1);
    axpy(stage.data(), rho.data(), 0.5 * h, k1.data());
    if (integrate) {
      add_diagonal(population_integral, h / 6.0, rho);
      add_diagonal(population_integral, h / 3.0, stage);
    }
    rhs(stage, k2);
    axpy(stage.data(), rho.data(), 0.5 * h, k2.data());
    if (integrate) add_diagonal(population_integral, h / 3.0, stage);
    rhs(stage, k3);
    axpy(stage.data(), rho.data(), h, k3.data());
    if (integrate) add_diagonal(population_integral, h / 6.0, stage);
    rhs(stage, k4);

    auto y = rho.data();
    const auto a = k1.data();
    const auto b = k2.data();
    const auto c = k3.data();
    const auto d = k4.data();
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] += (h / 6.0) * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]);
    }
  }
  rho.set_time(t0 + dt);
}

// ---------------------------------------------------------------------------
// Trajectories

namespace {

void check_state(const DensityMatrix& rho, double limit, const char* where) {
  const double trace_drift = std::abs(rho.trace() - 1.0);
  const double herm = rho.hermiticity_defect();
  if (trace_drift > limit || herm > limit) {
    throw InvariantError(std::string(where) + " at t=" + std::to_string(rho.time()) +
                         ": trace drift " + std::to_string(trace_drift) +
                         ", hermiticity defect " + std::to_string(herm) +
                         " (reduce the step)");
  }
}

}  // namespace

void evolve(const MasterEquation& eq, const DensityMatrix& rho0, const SimConfig& cfg,
            const std::function<void(const DensityMatrix&)>& on_sample) {
  cfg.validate();
  if (rho0.nodes() != eq.network().nodes()) {
    throw ParameterError("initial state does not match the network size");
  }
  const double limit = 100.0 * cfg.tol;
  if (std::abs(rho0.trace() - 1.0) > cfg.tol || rho0.hermiticity_defect() > cfg.tol) {
    throw ParameterError("initial state must be Hermitian with unit trace");
  }

  DensityMatrix rho = rho0;
  rho.set_time(0.0);
  on_sample(rho);
  if (cfg.t_end == 0.0) return;

  double t_prev = 0.0;
  long long index = 1;
  while (t_prev < cfg.t_end) {
    double t_next = cfg.t_end;
    if (cfg.record_stride > 0.0) {
      t_next = std::min(cfg.t_end, cfg.record_stride * static_cast<double>(index++));
    }
    eq.advance(rho, t_next - t_prev, cfg.step);
    rho.set_time(t_next);
    check_state(rho, limit, "integration");
    on_sample(rho);
    t_prev = t_next;
  }
}

Trajectory evolve(const MasterEquation& eq, const DensityMatrix& rho0, const SimConfig& cfg) {
  Trajectory out;
  evolve(eq, rho0, cfg, [&out](const DensityMatrix& rho) { out.push_back(rho); });
  return out;
}

// ---------------------------------------------------------------------------
// Dense reference propagator

namespace {

// Row-major square complex matrix, just enough for scaling and squaring.
struct Dense {
  int dim;
  std::vector<cplx> a;

  explicit Dense(int d) : dim(d), a(static_cast<std::size_t>(d) * d, cplx{0.0, 0.0}) {}
  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }

  static Dense identity(int d) {
    Dense m(d);
    for (int i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }

  double norm1() const {
    double worst = 0.0;
    for (int j = 0; j < dim; ++j) {
      double col = 0.0;
      for (int i = 0; i < dim; ++i) col += std::abs((*this)(i, j));
      worst = std::max(worst, col);
    }
    return worst;
  }
};

Dense multiply(const Dense& x, const Dense& y) {
  Dense z(x.dim);
  for (int i = 0; i < x.dim; ++i) {
    for (int k = 0; k < x.dim; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx{0.0, 0.0}) continue;
      for (int j = 0; j < x.dim; ++j) z(i, j) += xik * y(k, j);
    }
  }
  return z;
}

Dense expm(Dense g) {
  const double norm = g.norm1();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const double scale = std::ldexp(1.0, -squarings);
  for (auto& v : g.a) v *= scale;

  Dense result = Dense::identity(g.dim);
  Dense term = Dense::identity(g.dim);
  for (int k = 1; k <= 60; ++k) {
    term = multiply(term, g);
    for (auto& v : term.a) v /= static_cast<double>(k);
    for (std::size_t i = 0; i < result.a.size(); ++i) result.a[i] += term.a[i];
    if (term.norm1() < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) result = multiply(result, result);
  return result;
}

}  // namespace

DensityMatrix evolve_exact(const MasterEquation& eq, const DensityMatrix& rho0, double t) {
  const int n = eq.network().nodes();
  if (n > kExactMaxNodes) {
    throw SizeError("evolve_exact is limited to N <= " + std::to_string(kExactMaxNodes) +
                    ", got N=" + std::to_string(n));
  }
  if (!(t >= 0.0)) throw ParameterError("time must be non-negative");
  if (rho0.nodes() != n) throw ParameterError("initial state does not match the network size");

  const int dim = n * n;
  // Column c of the generator is the right-hand side applied to basis matrix c.
  Dense gen(dim);
  DensityMatrix basis(n), image(n);
  for (int c = 0; c < dim; ++c) {
    basis.data()[c] = 1.0;
    eq.rhs(basis, image);
    for (int r = 0; r < dim; ++r) gen(r, c) = image.data()[r] * t;
    basis.data()[c] = 0.0;
  }
  const Dense prop = expm(std::move(gen));

  DensityMatrix out(n);
  const auto in = rho0.data();
  auto dst = out.data();
  for (int r = 0; r < dim; ++r) {
    cplx acc = 0.0;
    for (int c = 0; c < dim; ++c) acc += prop(r, c) * in[c];
    dst[r] = acc;
  }
  out.set_time(rho0.time() + t);
  return out;
}

}  // namespace qwalk
