#pragma once

// Mean-reverting noise driven by Brownian motion plus a compound-Poisson
// jump stream:
//   dxi_t = a xi_t dt + du_t,   u_t = rho1 w_t + rho2 z_t,   xi_0 = 0,
// with z a rate-lambda Poisson sum of centered Gaussian jumps. The per-
// coefficient proxy variance of this family is sigma_q = rho1^2 + rho2^2.

#include <cstdint>
#include <vector>

#include "ctreg/rng.hpp"

namespace ctreg {

struct NoiseParams {
  double a = -1.0;       // mean-reversion drift, a <= 0
  double rho1 = 0.5;     // Brownian scale, > 0
  double rho2 = 0.5;     // jump scale, >= 0
  double lambda = 1.0;   // jump intensity (events per unit time)
  double jump_sd = 1.0;  // jump size sd; lambda * jump_sd^2 must equal 1
};

struct NoiseFamilyBounds {
  double a_max = 1.0;        // |a| <= a_max
  double rho_lower = 0.2;    // rho1^2 >= rho_lower
  double sigma_upper = 0.5;  // sigma_q <= sigma_upper
};

struct SamplePath {
  int horizon_n = 0;       // observation length in time units
  int steps_per_unit = 0;  // grid resolution M
  std::vector<double> xi;  // values at t_i = i/M, i = 0..n*M; xi[0] == 0
};

struct JumpEvent {
  double time = 0.0;
  double size = 0.0;
};

double sigma_q(const NoiseParams& p);
double kappa_q(const NoiseParams& p);
double kappa_star(const NoiseFamilyBounds& b);

// true iff -a_max <= a <= 0, rho_lower <= rho1^2 and sigma_q <= sigma_upper
bool check_family(const NoiseParams& p, const NoiseFamilyBounds& b);

// Poisson event times on (0, horizon] with i.i.d. centered Gaussian sizes;
// deterministic given seed
std::vector<JumpEvent> simulate_jumps(const NoiseParams& p, double horizon,
                                      std::uint64_t seed);

// Exact per-step transition for the Gaussian part; jumps are added to the
// first grid node at or after their event time. Requires horizon_n >= 1 and
// steps_per_unit >= 100.
SamplePath simulate_ou_levy(const NoiseParams& p, int horizon_n,
                            int steps_per_unit, std::uint64_t seed);

}  // namespace ctreg
