#include <cmath>
#include <numbers>
#include <vector>

#include "kernels_detail.hpp"

namespace qwalk::kernels {

namespace detail {

// cos(2 pi r / N) for r = 0..N-1; tables are indexed by (d*k) mod N so that
// symmetric pairs of modes read identical values.
std::vector<double> cosine_table(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) t[r] = std::cos(2.0 * std::numbers::pi * r / n);
  return t;
}

std::vector<cplx> phase_table(int n) {
  std::vector<cplx> t(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) t[r] = std::polar(1.0, -2.0 * std::numbers::pi * r / n);
  return t;
}

int wrap(long long i, int n) {
  long long r = i % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

std::vector<int> shift_table(int n, int range) {
  std::vector<int> t(static_cast<std::size_t>(2 * range) * n);
  for (int m = 1; m <= range; ++m) {
    int* plus = t.data() + static_cast<std::size_t>(2 * (m - 1)) * n;
    int* minus = plus + n;
    for (int x = 0; x < n; ++x) {
      plus[x] = wrap(static_cast<long long>(x) + m, n);
      minus[x] = wrap(static_cast<long long>(x) - m, n);
    }
  }
  return t;
}

void dephasing_row(int n, int range, double hopping, double gamma, const int* shifts,
                   const cplx* rho, cplx* out, int j) {
  const cplx minus_i_g(0.0, -hopping);
  const cplx* row = rho + static_cast<std::size_t>(j) * n;
  cplx* dst = out + static_cast<std::size_t>(j) * n;
  for (int k = 0; k < n; ++k) dst[k] = 0.0;
  for (int m = 1; m <= range; ++m) {
    const int* plus = shifts + static_cast<std::size_t>(2 * (m - 1)) * n;
    const int* minus = plus + n;
    const cplx* up = rho + static_cast<std::size_t>(plus[j]) * n;
    const cplx* down = rho + static_cast<std::size_t>(minus[j]) * n;
    for (int k = 0; k < n; ++k) dst[k] += up[k] + down[k] - row[plus[k]] - row[minus[k]];
  }
  for (int k = 0; k < n; ++k) {
    cplx v = minus_i_g * dst[k];
    if (k != j) v -= gamma * row[k];
    dst[k] = v;
  }
}

double cosine_entry(const double* coeffs, const double* table, int n, int origin, int j) {
  const long long d = wrap(static_cast<long long>(j) - origin, n);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) acc += coeffs[k] * table[(d * k) % n];
  return acc / n;
}

cplx fourier_entry(const cplx* coeffs, const cplx* table, int n, int origin, int j) {
  const long long d = wrap(static_cast<long long>(j) - origin, n);
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k) acc += coeffs[k] * table[(d * k) % n];
  return acc / static_cast<double>(n);
}

}  // namespace detail

void dephasing_rhs_serial(int nodes, int range, double hopping, double gamma,
                          std::span<const cplx> rho, std::span<cplx> out) {
  const auto shifts = detail::shift_table(nodes, range);
  for (int j = 0; j < nodes; ++j) {
    detail::dephasing_row(nodes, range, hopping, gamma, shifts.data(), rho.data(), out.data(), j);
  }
}

void cosine_series_serial(std::span<const double> coeffs, int origin, std::span<double> out) {
  const int n = static_cast<int>(coeffs.size());
  const auto table = detail::cosine_table(n);
  for (int j = 0; j < n; ++j) out[j] = detail::cosine_entry(coeffs.data(), table.data(), n, origin, j);
}

void fourier_series_serial(std::span<const cplx> coeffs, int origin, std::span<cplx> out) {
  const int n = static_cast<int>(coeffs.size());
  const auto table = detail::phase_table(n);
  for (int j = 0; j < n; ++j) out[j] = detail::fourier_entry(coeffs.data(), table.data(), n, origin, j);
}

}  // namespace qwalk::kernels
