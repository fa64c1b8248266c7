#pragma once

// Inner loops shared by the propagators. Every kernel has a serial reference
// and an OpenMP version; each output element is produced by the same sequence
// of floating-point operations in both, so results agree bit for bit
// regardless of thread count.

#include <complex>
#include <span>

namespace qwalk::kernels {

using cplx = std::complex<double>;

/// Right-hand side of the dephasing master equation for a row-major N x N
/// density matrix:
///   out[j,k] = -i g sum_{m=1}^{l} (rho[j+m,k] + rho[j-m,k] - rho[j,k+m] - rho[j,k-m])
///              - gamma (1 - delta_jk) rho[j,k]
/// Indices are taken modulo N.
void dephasing_rhs_serial(int nodes, int range, double hopping, double gamma,
                          std::span<const cplx> rho, std::span<cplx> out);
void dephasing_rhs_parallel(int nodes, int range, double hopping, double gamma,
                            std::span<const cplx> rho, std::span<cplx> out);

/// out[j] = (1/N) sum_k coeffs[k] cos(2 pi (j - origin) k / N).
void cosine_series_serial(std::span<const double> coeffs, int origin, std::span<double> out);
void cosine_series_parallel(std::span<const double> coeffs, int origin, std::span<double> out);

/// out[j] = (1/N) sum_k coeffs[k] exp(-2 pi i (j - origin) k / N).
void fourier_series_serial(std::span<const cplx> coeffs, int origin, std::span<cplx> out);
void fourier_series_parallel(std::span<const cplx> coeffs, int origin, std::span<cplx> out);

/// Number of threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace qwalk::kernels
