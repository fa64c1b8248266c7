#include "kernels_detail.hpp"

#ifdef QWALK_HAVE_OPENMP
#include <omp.h>
#endif

namespace qwalk::kernels {

// Rows are independent; below these sizes the fork/join costs more than the work.
namespace {
constexpr int kMinParallelRows = 32;
}

void dephasing_rhs_parallel(int nodes, int range, double hopping, double gamma,
                            std::span<const cplx> rho, std::span<cplx> out) {
  const cplx* in = rho.data();
  cplx* dst = out.data();
  const auto table = detail::shift_table(nodes, range);
  const int* shifts = table.data();
#pragma omp parallel for schedule(static) if (nodes >= kMinParallelRows)
  for (int j = 0; j < nodes; ++j) {
    detail::dephasing_row(nodes, range, hopping, gamma, shifts, in, dst, j);
  }
}

void cosine_series_parallel(std::span<const double> coeffs, int origin, std::span<double> out) {
  const int n = static_cast<int>(coeffs.size());
  const auto table = detail::cosine_table(n);
  const double* c = coeffs.data();
  const double* tab = table.data();
  double* dst = out.data();
#pragma omp parallel for schedule(static) if (n >= kMinParallelRows)
  for (int j = 0; j < n; ++j) dst[j] = detail::cosine_entry(c, tab, n, origin, j);
}

void fourier_series_parallel(std::span<const cplx> coeffs, int origin, std::span<cplx> out) {
  const int n = static_cast<int>(coeffs.size());
  const auto table = detail::phase_table(n);
  const cplx* c = coeffs.data();
  const cplx* tab = table.data();
  cplx* dst = out.data();
#pragma omp parallel for schedule(static) if (n >= kMinParallelRows)
  for (int j = 0; j < n; ++j) dst[j] = detail::fourier_entry(c, tab, n, origin, j);
}

int max_threads() {
#ifdef QWALK_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qwalk::kernels
