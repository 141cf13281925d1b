#pragma once

// Trigonometric basis on [0, 1], coefficient estimation from observation
// increments, reconstruction, and the basis diagnostics (overlap-kernel
// integral and the block-size threshold d_zero).

#include <vector>

#include "ctreg/observation.hpp"

namespace ctreg {

struct FourierEstimates {
  int horizon_n = 0;
  std::vector<double> theta_hat;  // theta_hat[j-1], j = 1..count (count <= n)
};

struct BasisDiagnostics {
  double phi_star = 0.0;  // uniform bound sup_j sup_t |Tr_j(t)| = sqrt(2)
  double a_check = 0.0;   // (1 - e^{-a_max}) / (4 a_max), limit 1/4 at 0
  int d0 = 0;             // smallest d >= 7 with 5 + ln d <= a_check * d
};

// Tr_1 = 1; for j >= 2: sqrt(2) cos(2 pi [j/2] t) if j even,
// sqrt(2) sin(2 pi [j/2] t) if j odd ([.] = integer part)
double trig(int j, double t);

// per-period increment sums D_k = sum_q dy[q*M + k], k = 0..M-1; since the
// basis is 1-periodic, coefficient estimates only need these M values
std::vector<double> fold_periods(const ObservationRecord& obs);

// flat row-major sample table: table[(j-1)*M + k] = Tr_j(k/M)
std::vector<double> trig_table(int count, int M);

// theta_hat_j = (1/n) sum_k Tr_j(k/M) D_k  (equals the left-point Ito sum
// of Tr_j against dy divided by n, summed period-first)
FourierEstimates coefficients_from_folded(const std::vector<double>& folded,
                                          const std::vector<double>& table,
                                          int count, int horizon_n);

// theta_hat_j for j = 1..count; count must not exceed the horizon n
FourierEstimates estimate_coefficients(const ObservationRecord& obs, int count);

// pointwise sum_j coeffs[j-1] Tr_j(t) on the uniform grid t_i = i/(p-1)
std::vector<double> reconstruct(const std::vector<double>& coeffs,
                                int eval_points);

// composite trapezoid quadrature of f^2 over [0, 1]
double l2_norm_sq(const std::vector<double>& samples);

// quadrature over v of max_t |sum_{j<=d} Tr_j(t) Tr_j(t-v)|; the paired
// sin/cos terms collapse to a function of v alone, so the t-maximization
// only matters for the unpaired cosine present when d is even
double phi_star_integral(int d, int grid_size);

// smallest d >= 7 with 5 + ln d <= a_check(a_max) * d, by upward scan;
// a_max = 0 uses the limit value a_check = 1/4
int d_zero(double a_max);

BasisDiagnostics basis_diagnostics(double a_max);

}  // namespace ctreg
