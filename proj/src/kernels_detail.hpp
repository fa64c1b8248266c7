#pragma once

#include <vector>

#include "qwalk/kernels.hpp"

namespace qwalk::kernels::detail {

std::vector<double> cosine_table(int n);
std::vector<cplx> phase_table(int n);
int wrap(long long i, int n);

// shift_table(n, l): for m = 1..l, the rows (x + m) mod n and (x - m) mod n.
std::vector<int> shift_table(int n, int range);
void dephasing_row(int n, int range, double hopping, double gamma, const int* shifts,
                   const cplx* rho, cplx* out, int j);
double cosine_entry(const double* coeffs, const double* table, int n, int origin, int j);
cplx fourier_entry(const cplx* coeffs, const cplx* table, int n, int origin, int j);

}  // namespace qwalk::kernels::detail
