#pragma once

// Replicated benchmark runs (four estimator variants per replication),
// distributional validation checks, and the single-path simulate/estimate
// entry points behind the CLI.

#include <cstdint>
#include <string>
#include <vector>

#include "ctreg/config.hpp"
#include "ctreg/observation.hpp"
#include "ctreg/selection.hpp"

namespace ctreg {

struct RiskRow {
  int n = 0;
  int replications = 0;
  int grid_size = 0;
  int max_prefix = 0;  // largest ones-prefix length over the weight grid
  double improved_selected = 0.0, improved_selected_se = 0.0;
  double lse_selected = 0.0, lse_selected_se = 0.0;
  double improved_fixed = 0.0, improved_fixed_se = 0.0;  // at the raw
  double lse_fixed = 0.0, lse_fixed_se = 0.0;            // pipeline's weight
  double ratio_selected = 0.0;  // lse_selected / improved_selected
  double ratio_fixed = 0.0;     // lse_fixed / improved_fixed
  double diff_fixed_mean = 0.0, diff_fixed_se = 0.0;  // improved - raw, paired
  double sigma_hat_mean = 0.0;
  double sigma_hat_mae = 0.0;  // mean |sigma_hat - sigma_q(noise)|
  int shrink_active = 0;       // replications whose winner was contracted
  long long degenerate_blocks = 0;
  std::vector<double> plot_t;  // first-replication curves, subsampled
  std::vector<double> plot_truth;
  std::vector<double> plot_improved;
  std::vector<double> plot_lse;
};

struct RiskReport {
  ExperimentConfig config;
  std::vector<RiskRow> rows;
};

struct ValidationCheck {
  std::string name;
  std::string kind;  // "two-sided" or "upper-bound"
  double observed = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed = false;
  double seconds = 0.0;
};

// mean squared difference over the evaluation grid (plain average)
double empirical_risk(const std::vector<double>& estimate,
                      const std::vector<double>& truth);

// ((1+2k) r)^(1/(2k+1)) * (k / (pi (k+1)))^(2k/(2k+1))
double pinsker_constant(double k, double r);

// integral over [0, t] of f g + corr(f) g + f corr(g), where
// corr(f)(s) = a e^{a s} * int_0^s e^{-a u} f(u) (1 + e^{2 a u})/2 du;
// the second-moment identity for integrals against the noise reads
// E I_t(f) I_t(g) = sigma_q * this value.  Composite trapezoid quadrature.
double covariance_time_transform(const SignalFn& f, const SignalFn& g,
                                 double t, double a, int pts_per_unit);

RiskReport run_experiment(const ExperimentConfig& cfg);

// 14 checks: three covariance identities, three variance curves, one energy
// bound, three coefficient-variance bands, four overlap-integral bounds.
ValidationReport run_validation(const ExperimentConfig& cfg, int reps,
                                int phi_grid);
ValidationReport validate_identities(const ExperimentConfig& cfg);

// one benchmark-signal observation path; matches replication 0 of the
// benchmark stream for the first configured n
ObservationRecord simulate_observation(const ExperimentConfig& cfg);

struct EstimateResult {
  int n = 0;
  double sigma_hat = 0.0;
  double rho = 0.0;
  SelectionState improved;
  SelectionState lse;
  std::vector<double> curve_t;
  std::vector<double> curve_improved;
  std::vector<double> curve_lse;
};

EstimateResult estimate_from_observation(const ObservationRecord& obs,
                                         const ExperimentConfig& cfg);

}  // namespace ctreg
