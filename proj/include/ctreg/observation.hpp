#pragma once

// Observed process y built from a 1-periodic signal S and a noise path:
//   dy_t = S(t) dt + dxi_t,
// stored as increments on the uniform grid (left-point drift quadrature).

#include <functional>
#include <vector>

#include "ctreg/noise.hpp"

namespace ctreg {

using SignalFn = std::function<double(double)>;

struct ObservationRecord {
  int horizon_n = 0;
  int steps_per_unit = 0;
  std::vector<double> dy;  // y_{t_{i+1}} - y_{t_i}, length n*M
};

// benchmark signal t sin(2 pi t) + t^2 (1 - t) cos(4 pi t), extended
// 1-periodically (the argument is reduced mod 1)
double test_signal(double t);

// dy_i = S(t_i) / M + (xi_{i+1} - xi_i), t_i = i/M
ObservationRecord generate_observations(const SignalFn& signal,
                                        const SamplePath& path);

// left-point Ito sum: sum_i f(t_i) dy_i; f sampled at grid left endpoints
double integrate_against_dy(const std::vector<double>& f_samples,
                            const ObservationRecord& obs);

}  // namespace ctreg
