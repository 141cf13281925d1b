#pragma once

// Head-block shrinkage of raw coefficient estimates: the first d estimated
// coefficients are contracted by the factor 1 - c / ||head block||, with a
// shrink constant c sized from the family bounds so the contraction is a
// guaranteed risk improvement when the block is long enough (d >= 7).

#include <vector>

namespace ctreg {

enum class ShrinkMode {
  none,    // raw least-squares weights (no contraction)
  theory,  // constant from the family bounds; skipped when d < 7
  plugin,  // data-driven positive-part scale (d-2) sigma / (n ||head||^2),
           // skipped when d < 3
};

struct ShrinkSpec {
  ShrinkMode mode = ShrinkMode::theory;
  double rho_lower = 0.2;   // lower bound on rho1^2 over the family
  double kappa_star = 1.0;  // 2 * sigma_upper over the family
  double r_star = 0.0;      // signal-norm radius; benchmarks use ln(n + 1)
};

struct ShrinkageParams {
  int d = 0;
  double l_star = 0.0;
  double r_star = 0.0;
  double kappa_star = 0.0;
  int n = 0;
  double c = 0.0;  // l_star / ((r_star + sqrt(d kappa_star / n)) n)
};

// rho_lower * (d - 6) / 2; requires d >= 7 (nonpositive otherwise)
double l_n_star(double rho_lower, int d);

// l_star / ((r_star + sqrt(d kappa_star / n)) * n)
double c_n(double l_star, double r_star, int d, double kappa_star, int n);

ShrinkageParams make_shrinkage(double rho_lower, double r_star, int d,
                               double kappa_star, int n);

// theta*_j = (1 - c / ||(theta_1..theta_d)||) theta_j for j <= d, unchanged
// beyond d; errors on a zero head block (see head_shrink for the guarded
// variant used inside replication loops)
std::vector<double> shrink(const std::vector<double>& theta_hat, int d,
                           double c);

struct HeadShrink {
  double c = 0.0;         // constant actually applied (0 when skipped)
  double factor = 1.0;    // multiplier for the first d coefficients
  bool degenerate = false;  // head norm ~ 0: contraction skipped, not an error
};

// per-weight contraction decision; sigma_hat only feeds the plugin mode
HeadShrink head_shrink(const std::vector<double>& theta_hat, int d,
                       const ShrinkSpec& spec, double sigma_hat, int n);

}  // namespace ctreg
