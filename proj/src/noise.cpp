#include "ctreg/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace ctreg {

double sigma_q(const NoiseParams& p) {
  return p.rho1 * p.rho1 + p.rho2 * p.rho2;
}

double kappa_q(const NoiseParams& p) { return 2.0 * sigma_q(p); }

double kappa_star(const NoiseFamilyBounds& b) { return 2.0 * b.sigma_upper; }

bool check_family(const NoiseParams& p, const NoiseFamilyBounds& b) {
  return -b.a_max <= p.a && p.a <= 0.0 &&
         b.rho_lower <= p.rho1 * p.rho1 && sigma_q(p) <= b.sigma_upper;
}

std::vector<JumpEvent> simulate_jumps(const NoiseParams& p, double horizon,
                                      std::uint64_t seed) {
  if (horizon < 0.0)
    throw std::invalid_argument("simulate_jumps: horizon must be >= 0");
  if (p.lambda <= 0.0)
    throw std::invalid_argument("simulate_jumps: lambda must be > 0");
  std::vector<JumpEvent> events;
  Rng rng(seed);
  double t = rng.exponential(p.lambda);
  while (t <= horizon) {
    events.push_back({t, rng.gaussian(0.0, p.jump_sd)});
    t += rng.exponential(p.lambda);
  }
  return events;
}

SamplePath simulate_ou_levy(const NoiseParams& p, int horizon_n,
                            int steps_per_unit, std::uint64_t seed) {
  if (horizon_n < 1)
    throw std::invalid_argument("simulate_ou_levy: horizon_n must be >= 1");
  if (steps_per_unit < 100)
    throw std::invalid_argument(
        "simulate_ou_levy: steps_per_unit must be >= 100");
  if (p.a > 0.0)
    throw std::invalid_argument("simulate_ou_levy: drift a must be <= 0");

  const int M = steps_per_unit;
  const std::int64_t total = static_cast<std::int64_t>(horizon_n) * M;
  const double h = 1.0 / M;

  // centered jumps need no compensator drift, so z is the raw jump sum;
  // each jump lands on the first grid node at or after its event time
  std::vector<double> binned(static_cast<std::size_t>(total) + 1, 0.0);
  for (const JumpEvent& e :
       simulate_jumps(p, static_cast<double>(horizon_n), derive_stream(seed, 1))) {
    std::int64_t idx = static_cast<std::int64_t>(std::ceil(e.time * M));
    if (idx < 1) idx = 1;
    if (idx > total) idx = total;
    binned[static_cast<std::size_t>(idx)] += e.size;
  }

  // exact transition: xi_{t+h} = e^{ah} xi_t + N(0, (e^{2ah}-1)/(2a))
  const double decay = std::exp(p.a * h);
  const double step_var = p.a == 0.0 ? h : std::expm1(2.0 * p.a * h) / (2.0 * p.a);
  const double step_sd = p.rho1 * std::sqrt(step_var);

  Rng gauss(derive_stream(seed, 2));
  SamplePath path;
  path.horizon_n = horizon_n;
  path.steps_per_unit = M;
  path.xi.resize(static_cast<std::size_t>(total) + 1);
  path.xi[0] = 0.0;
  for (std::int64_t i = 1; i <= total; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    path.xi[u] = decay * path.xi[u - 1] + step_sd * gauss.gaussian() +
                 p.rho2 * binned[u];
  }
  return path;
}

}  // namespace ctreg
