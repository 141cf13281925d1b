#include "ctreg/observation.hpp"

#include <cmath>
#include <stdexcept>

namespace ctreg {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double test_signal(double t) {
  const double x = t - std::floor(t);
  return x * std::sin(2.0 * kPi * x) +
         x * x * (1.0 - x) * std::cos(4.0 * kPi * x);
}

ObservationRecord generate_observations(const SignalFn& signal,
                                        const SamplePath& path) {
  if (path.horizon_n < 1 || path.steps_per_unit < 1)
    throw std::invalid_argument("generate_observations: empty sample path");
  const int M = path.steps_per_unit;
  const std::size_t total = static_cast<std::size_t>(path.horizon_n) * M;
  if (path.xi.size() != total + 1)
    throw std::invalid_argument("generate_observations: path length mismatch");

  ObservationRecord obs;
  obs.horizon_n = path.horizon_n;
  obs.steps_per_unit = M;
  obs.dy.resize(total);
  const double h = 1.0 / M;
  for (std::size_t i = 0; i < total; ++i) {
    const double t = static_cast<double>(i) / M;
    obs.dy[i] = signal(t) * h + (path.xi[i + 1] - path.xi[i]);
  }
  return obs;
}

double integrate_against_dy(const std::vector<double>& f_samples,
                            const ObservationRecord& obs) {
  if (f_samples.size() != obs.dy.size())
    throw std::invalid_argument(
        "integrate_against_dy: sample length does not match increments");
  double acc = 0.0;
  for (std::size_t i = 0; i < f_samples.size(); ++i)
    acc += f_samples[i] * obs.dy[i];
  return acc;
}

}  // namespace ctreg
