#pragma once

// Experiment configuration: JSON round-trip with fail-closed parsing (unknown
// keys are errors), dot-path overrides, and the preset parameter rules that
// size the weight grid from n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctreg/noise.hpp"
#include "ctreg/shrinkage.hpp"

namespace ctreg {

enum class GridPreset {
  theory,     // compact grid: k* = floor(sqrt(ln(n+1))), m = ceil(ln^2(n+1))
  paper_sim,  // wide grid: k* = floor(100 + sqrt(ln(n+1))), m = floor(ln^2(n+1))
};

struct ExperimentConfig {
  std::vector<int> n_values = {100, 200};
  int replications = 200;
  int eval_points = 2001;     // risk-evaluation grid size
  int steps_per_unit = 200;   // simulation resolution M
  NoiseParams noise;
  NoiseFamilyBounds bounds;
  GridPreset grid_preset = GridPreset::paper_sim;
  ShrinkMode shrink_mode = ShrinkMode::theory;
  std::optional<double> rho;          // cost penalty weight; default (3+ln n)^-2
  std::optional<double> r_star;       // shrink radius; default ln(n+1)
  std::optional<double> sigma_known;  // replaces the estimated noise level
  std::uint64_t root_seed = 1;
  int threads = 0;  // 0 = hardware concurrency
};

struct GridParams {
  int k_star = 0;
  double eps = 0.0;
  int m = 0;  // 0 lets build_grid derive ceil(1/eps^2)
};

ExperimentConfig default_config();

// Full validation on every path; throws ParseError naming the offending key.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

// "noise.a=-0.5", "n_values=[100]", "grid_preset=theory"; value is parsed as
// JSON when possible, else taken as a bare string.  Result is re-validated.
ExperimentConfig config_with_override(const ExperimentConfig& cfg,
                                      const std::string& key,
                                      const std::string& value);

// The long-run variant: n in {100,200,500,1000}, 1000 replications,
// 1000 steps per unit, 100001 evaluation points.
ExperimentConfig full_scale(ExperimentConfig cfg);

GridParams grid_params(GridPreset preset, int n);
double default_rho(int n);     // (3 + ln n)^-2
double default_r_star(int n);  // ln(n + 1)

}  // namespace ctreg
