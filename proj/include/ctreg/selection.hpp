#pragma once

// Weight-vector grid and data-driven weight selection.  Each candidate weight
// sequence keeps a prefix of coefficients at full strength, tapers a middle
// band polynomially, and zeroes the tail.  Selection minimizes an unbiased
// cost surrogate with a small multiplicative penalty; the "improved" pipeline
// additionally contracts the prefix block via head_shrink before scoring.

#include <cstdint>
#include <utility>
#include <vector>

#include "ctreg/fourier.hpp"
#include "ctreg/observation.hpp"
#include "ctreg/shrinkage.hpp"

namespace ctreg {

struct WeightVector {
  int beta = 0;      // taper exponent
  double r = 0.0;    // radius coordinate
  double omega = 0.0;  // taper cutoff (support = floor(omega))
  int d = 0;         // ones-prefix length floor(omega / ln(n+1))
  std::vector<double> g;  // weights on coefficients 1..support
};

struct WeightGrid {
  int n = 0;
  double sigma_upper = 0.0;
  double v_n = 0.0;  // n / sigma_upper
  int k_star = 0;    // number of taper exponents (beta = 1..k_star)
  int m = 0;         // number of radii (r = eps..m*eps)
  double eps = 0.0;  // radius step
  int max_support = 0;
  int max_prefix = 0;
  std::vector<WeightVector> vectors;  // size k_star * m, beta-major
};

struct SelectionState {
  double sigma_hat = 0.0;
  double rho = 0.0;
  std::vector<double> costs;  // one cost per grid entry
  int index = 0;              // argmin (lowest index wins ties)
  int d = 0;                  // ones prefix of the selected weight
  double shrink_c = 0.0;      // contraction constant applied at the winner
  int degenerate_blocks = 0;  // grid entries whose head block had ~zero norm
  std::vector<double> coef;   // selected weighted coefficients (support-long)
};

struct FixedWeightResult {
  std::vector<double> coef;
  double shrink_c = 0.0;
  bool degenerate = false;
};

// (beta+1)(2 beta+1) / (pi^(2 beta) beta)
double tau_beta(double beta);

// Grid over (beta, r), beta = 1..k_star, r = i*eps for i = 1..m.
// omega = (tau_beta * r * v_n)^(1/(2 beta + 1)); m == 0 picks ceil(1/eps^2).
WeightGrid build_grid(int n, double sigma_upper, int k_star, double eps,
                      int m = 0);

// Residual energy in the coefficient band (floor(sqrt(n)), n]: an estimate of
// the per-coefficient noise level.
double estimate_sigma(const ObservationRecord& obs);
double sigma_from_estimates(const FourierEstimates& est);

// sigma_hat * sum(gamma^2) / n
double penalty(const WeightVector& w, double sigma_hat, int n);

// sum gamma^2 theta*^2 - 2 sum gamma (theta* theta_hat - sigma_hat/n)
//   + rho * penalty
double cost(const std::vector<double>& theta_star,
            const std::vector<double>& theta_hat, const WeightVector& w,
            double sigma_hat, int n, double rho);

// Scores every grid entry (contracting each prefix per spec.mode) and returns
// the argmin state.  rho must lie in (0, 1/2).
SelectionState select_weights(const FourierEstimates& est,
                              const WeightGrid& grid, const ShrinkSpec& spec,
                              double sigma_hat, double rho);

// Weighted coefficients for one fixed weight vector (used to evaluate the
// contracted estimator at another pipeline's selected weight).
FixedWeightResult fixed_weight_coef(const FourierEstimates& est,
                                    const WeightVector& w,
                                    const ShrinkSpec& spec, double sigma_hat);

// End-to-end convenience: coefficients, noise level, selection, curve.
std::pair<SelectionState, std::vector<double>> select(
    const ObservationRecord& obs, const WeightGrid& grid,
    const ShrinkSpec& spec, double rho, int eval_points);

}  // namespace ctreg
