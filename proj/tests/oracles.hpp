#pragma once

// Independent reference computations used only by the tests. Everything here
// goes through Eigen's dense eigensolvers and matrix exponential rather than
// the library's spectral sums, kernels, or scaling-and-squaring code.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline int wrap(int i, int n) { return ((i % n) + n) % n; }

/// g * adjacency of the ring with links to +-1..+-l.
inline Eigen::MatrixXd adjacency(int n, int l, double g = 1.0) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int m = 1; m <= l; ++m) {
      a(j, wrap(j + m, n)) = g;
      a(j, wrap(j - m, n)) = g;
    }
  }
  return a;
}

inline Eigen::MatrixXd laplacian(int n, int l) {
  return 2.0 * l * Eigen::MatrixXd::Identity(n, n) - adjacency(n, l);
}

/// |<k| exp(-i g A t) |origin>|^2 through a full eigendecomposition.
inline std::vector<double> unitary_distribution(int n, int l, double g, double t, int origin) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency(n, l, g));
  const Eigen::MatrixXd& v = es.eigenvectors();
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(n);
  for (int e = 0; e < n; ++e) {
    const cplx phase = std::polar(1.0, -t * es.eigenvalues()(e));
    for (int k = 0; k < n; ++k) amp(k) += v(k, e) * phase * v(origin, e);
  }
  std::vector<double> p(n);
  for (int k = 0; k < n; ++k) p[k] = std::norm(amp(k));
  return p;
}

/// Row `origin` of exp(-t L) (Eigen's Pade scaling and squaring).
inline std::vector<double> classical_row(int n, int l, double t, int origin) {
  const Eigen::MatrixXd prop = (-t * laplacian(n, l)).exp();
  std::vector<double> p(n);
  for (int k = 0; k < n; ++k) p[k] = prop(k, origin);
  return p;
}

/// -i [g A, rho] - gamma * offdiag(rho), built from explicit matrix products.
inline Eigen::MatrixXcd dense_rhs(int n, int l, double g, double gamma,
                                  const Eigen::MatrixXcd& rho) {
  const Eigen::MatrixXcd h = adjacency(n, l, g).cast<cplx>();
  Eigen::MatrixXcd out = cplx(0.0, -1.0) * (h * rho - rho * h);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j != k) out(j, k) -= gamma * rho(j, k);
    }
  }
  return out;
}

/// exp(t L) rho0 with L the row-major vectorised generator, via Eigen.
inline Eigen::MatrixXcd liouville_propagate(int n, int l, double g, double gamma,
                                            const Eigen::MatrixXcd& rho0, double t) {
  const int d = n * n;
  Eigen::MatrixXcd gen(d, d);
  for (int c = 0; c < d; ++c) {
    Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(n, n);
    basis(c / n, c % n) = 1.0;
    const Eigen::MatrixXcd img = dense_rhs(n, l, g, gamma, basis);
    for (int r = 0; r < d; ++r) gen(r, c) = img(r / n, r % n);
  }
  const Eigen::MatrixXcd prop = (t * gen).exp();
  Eigen::VectorXcd v(d);
  for (int r = 0; r < d; ++r) v(r) = rho0(r / n, r % n);
  const Eigen::VectorXcd w = prop * v;
  Eigen::MatrixXcd out(n, n);
  for (int r = 0; r < d; ++r) out(r / n, r % n) = w(r);
  return out;
}

/// Random density matrix: normalised A A^dagger with Gaussian A.
inline Eigen::MatrixXcd random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace();
}

/// Plain O(N^2) DFT coefficient sum_j p_j exp(2 pi i j k / N), measured from
/// the origin.
inline cplx fourier_coefficient(const std::vector<double>& p, int origin, int k) {
  const int n = static_cast<int>(p.size());
  cplx acc = 0.0;
  for (int j = 0; j < n; ++j) {
    acc += p[j] * std::polar(1.0, 2.0 * std::numbers::pi * (j - origin) * k / n);
  }
  return acc;
}

/// Composite Simpson rule with `intervals` (even) subintervals.
template <class F>
double simpson(F&& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

}  // namespace oracle
