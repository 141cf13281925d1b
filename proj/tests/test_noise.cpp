#include "ctreg/noise.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ctreg/rng.hpp"
#include "doctest.h"

using namespace ctreg;

namespace {

double mean(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v) {
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size() - 1);
}

// standard error of the mean of v
double se_mean(const std::vector<double>& v) {
  return std::sqrt(sample_var(v) / static_cast<double>(v.size()));
}

}  // namespace

TEST_CASE("noise: variance proxies at the default parameters") {
  NoiseParams p;
  CHECK(sigma_q(p) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(kappa_q(p) == doctest::Approx(1.0).epsilon(1e-15));
  NoiseFamilyBounds b;
  CHECK(kappa_star(b) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("noise: family membership check") {
  NoiseFamilyBounds b;  // a_max=1, rho_lower=0.2, sigma_upper=0.5
  NoiseParams p;        // a=-1, rho1=rho2=0.5
  CHECK(check_family(p, b));

  NoiseParams drift_too_strong = p;
  drift_too_strong.a = -2.0;
  CHECK_FALSE(check_family(drift_too_strong, b));

  NoiseParams positive_drift = p;
  positive_drift.a = 0.5;
  CHECK_FALSE(check_family(positive_drift, b));

  NoiseParams weak_brownian = p;  // rho1^2 = 0.09 < 0.2
  weak_brownian.rho1 = 0.3;
  CHECK_FALSE(check_family(weak_brownian, b));

  NoiseParams too_energetic = p;  // sigma_q = 0.64 > 0.5
  too_energetic.rho1 = 0.8;
  too_energetic.rho2 = 0.0;
  CHECK_FALSE(check_family(too_energetic, b));

  NoiseParams boundary = p;  // a = 0 and sigma_q exactly at the cap stay in
  boundary.a = 0.0;
  CHECK(check_family(boundary, b));
}

TEST_CASE("noise: path simulation rejects bad arguments") {
  NoiseParams p;
  CHECK_THROWS_AS(simulate_ou_levy(p, 0, 200, 1), std::invalid_argument);
  CHECK_THROWS_AS(simulate_ou_levy(p, 5, 99, 1), std::invalid_argument);
  NoiseParams positive_drift = p;
  positive_drift.a = 0.1;
  CHECK_THROWS_AS(simulate_ou_levy(positive_drift, 5, 200, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_jumps(p, -1.0, 1), std::invalid_argument);
  NoiseParams no_jumps = p;
  no_jumps.lambda = 0.0;
  CHECK_THROWS_AS(simulate_jumps(no_jumps, 5.0, 1), std::invalid_argument);
}

TEST_CASE("noise: path shape and seed determinism") {
  NoiseParams p;
  const SamplePath a = simulate_ou_levy(p, 3, 150, 42);
  CHECK(a.horizon_n == 3);
  CHECK(a.steps_per_unit == 150);
  CHECK(a.xi.size() == 3 * 150 + 1);
  CHECK(a.xi[0] == 0.0);

  const SamplePath b = simulate_ou_levy(p, 3, 150, 42);
  REQUIRE(b.xi.size() == a.xi.size());
  for (std::size_t i = 0; i < a.xi.size(); ++i) CHECK(a.xi[i] == b.xi[i]);

  const SamplePath c = simulate_ou_levy(p, 3, 150, 43);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.xi.size(); ++i)
    if (a.xi[i] != c.xi[i]) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("noise: zero drift and no jumps gives Brownian increments") {
  NoiseParams p;
  p.a = 0.0;
  p.rho1 = 0.6;
  p.rho2 = 0.0;
  const int M = 100;
  const SamplePath path = simulate_ou_levy(p, 50, M, 2024);
  std::vector<double> inc(path.xi.size() - 1);
  for (std::size_t i = 0; i + 1 < path.xi.size(); ++i)
    inc[i] = path.xi[i + 1] - path.xi[i];

  const double target = p.rho1 * p.rho1 / M;  // variance of one increment
  const double v = sample_var(inc);
  // SE of a Gaussian sample variance: var * sqrt(2/(N-1))
  const double se = target * std::sqrt(2.0 / static_cast<double>(inc.size() - 1));
  CHECK(std::fabs(mean(inc)) < 5.0 * std::sqrt(target / inc.size()));
  CHECK(std::fabs(v - target) < 5.0 * se);
}

TEST_CASE("noise: stationary-scale variance at t = 1 matches the transition") {
  NoiseParams p;  // a=-1, sigma_q = 0.5
  const int reps = 600;
  std::vector<double> sq(reps);
  for (int r = 0; r < reps; ++r) {
    const SamplePath path = simulate_ou_levy(p, 1, 100, derive_stream(99, r));
    const double x = path.xi.back();
    sq[r] = x * x;
  }
  // Var xi_1 = sigma_q * (e^{2a} - 1) / (2a)
  const double ref = sigma_q(p) * std::expm1(2.0 * p.a) / (2.0 * p.a);
  CHECK(ref == doctest::Approx(0.21616617919084682).epsilon(1e-12));
  CHECK(std::fabs(mean(sq) - ref) < 4.0 * se_mean(sq) + 1e-12);
}

TEST_CASE("noise: jump stream statistics and determinism") {
  NoiseParams p;  // lambda = 1, jump_sd = 1
  const double horizon = 500.0;
  const auto ev = simulate_jumps(p, horizon, 7);
  const auto ev2 = simulate_jumps(p, horizon, 7);
  REQUIRE(ev.size() == ev2.size());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    CHECK(ev[i].time == ev2[i].time);
    CHECK(ev[i].size == ev2[i].size);
  }

  // ordered event times inside (0, horizon]
  for (std::size_t i = 0; i < ev.size(); ++i) {
    CHECK(ev[i].time > 0.0);
    CHECK(ev[i].time <= horizon);
    if (i > 0) CHECK(ev[i].time > ev[i - 1].time);
  }

  // Poisson(lambda * horizon) count, 4-sigma band
  const double expected = p.lambda * horizon;
  CHECK(std::fabs(static_cast<double>(ev.size()) - expected) <
        4.0 * std::sqrt(expected));

  std::vector<double> sizes(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) sizes[i] = ev[i].size;
  const double sd = std::sqrt(sample_var(sizes));
  const double se_sd = p.jump_sd / std::sqrt(2.0 * sizes.size());
  CHECK(std::fabs(mean(sizes)) < 4.0 * p.jump_sd / std::sqrt(sizes.size()));
  CHECK(std::fabs(sd - p.jump_sd) < 4.0 * se_sd);
}

TEST_CASE("noise: jumps land on the first grid node at or after their time") {
  NoiseParams p;
  p.a = 0.0;
  p.rho1 = 1e-12;  // make the Gaussian part negligible
  p.rho2 = 0.7;
  const int n = 3, M = 100;
  const std::uint64_t seed = 777;
  const SamplePath path = simulate_ou_levy(p, n, M, seed);

  // rebuild the binned jump sums from the path's own jump substream
  const auto ev = simulate_jumps(p, static_cast<double>(n),
                                 derive_stream(seed, 1));
  CHECK(!ev.empty());
  std::vector<double> binned(static_cast<std::size_t>(n) * M + 1, 0.0);
  for (const auto& e : ev) {
    long long idx = static_cast<long long>(std::ceil(e.time * M));
    if (idx < 1) idx = 1;
    if (idx > n * M) idx = n * M;
    binned[static_cast<std::size_t>(idx)] += e.size;
  }
  for (std::size_t i = 1; i < path.xi.size(); ++i) {
    const double inc = path.xi[i] - path.xi[i - 1];
    CHECK(std::fabs(inc - p.rho2 * binned[i]) < 1e-10);
  }
}

TEST_CASE("noise: deterministic stream derivation") {
  CHECK(derive_stream(1, 2) == derive_stream(1, 2));
  CHECK(derive_stream(1, 2) != derive_stream(1, 3));
  CHECK(derive_stream(1, 2) != derive_stream(2, 2));
  CHECK(derive_stream(5, 1, 2) != derive_stream(5, 2, 1));
  Rng g(derive_stream(0, 0));
  const double u = g.uniform01();
  CHECK(u > 0.0);
  CHECK(u < 1.0);
}
