#include "ctreg/observation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ctreg/noise.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ctreg;

TEST_CASE("observation: benchmark signal values and periodicity") {
  CHECK(test_signal(0.0) == 0.0);
  CHECK(test_signal(1.0) == 0.0);
  // S(1/4) = 1/4 sin(pi/2) + 1/16 * 3/4 * cos(pi) = 1/4 - 3/64
  CHECK(test_signal(0.25) == doctest::Approx(0.203125).epsilon(1e-15));
  CHECK(test_signal(0.8) ==
        doctest::Approx(-0.8643993883161163).epsilon(1e-13));
  CHECK(test_signal(2.3) == doctest::Approx(test_signal(0.3)).epsilon(1e-12));
  CHECK(test_signal(-0.7) == doctest::Approx(test_signal(0.3)).epsilon(1e-12));
  for (double t : {0.1, 0.37, 0.52, 0.9})
    CHECK(test_signal(t) == doctest::Approx(oracle::signal(t)).epsilon(1e-14));
}

TEST_CASE("observation: increments compose drift and noise exactly") {
  SamplePath path;
  path.horizon_n = 2;
  path.steps_per_unit = 4;
  path.xi = {0.0, 0.5, -0.25, 1.0, 0.125, -1.5, 2.0, 0.75, -0.5};

  const SignalFn s = [](double t) { return 3.0 * t; };
  const ObservationRecord obs = generate_observations(s, path);
  CHECK(obs.horizon_n == 2);
  CHECK(obs.steps_per_unit == 4);
  REQUIRE(obs.dy.size() == 8);
  for (std::size_t i = 0; i < obs.dy.size(); ++i) {
    const double t = static_cast<double>(i) / 4.0;
    CHECK(obs.dy[i] == s(t) / 4.0 + path.xi[i + 1] - path.xi[i]);
  }
}

TEST_CASE("observation: rejects inconsistent sample paths") {
  SamplePath path;
  path.horizon_n = 0;
  path.steps_per_unit = 4;
  path.xi = {0.0};
  CHECK_THROWS_AS(generate_observations(test_signal, path),
                  std::invalid_argument);

  path.horizon_n = 1;
  path.xi.assign(4, 0.0);  // should be 5 entries
  CHECK_THROWS_AS(generate_observations(test_signal, path),
                  std::invalid_argument);
}

TEST_CASE("observation: integration against increments") {
  SamplePath path;
  path.horizon_n = 1;
  path.steps_per_unit = 4;
  path.xi = {0.0, 1.0, -1.0, 2.0, 0.5};
  const ObservationRecord obs =
      generate_observations([](double) { return 2.0; }, path);

  // f == 1: integral telescopes to xi_n + sum of drift increments
  const std::vector<double> ones(4, 1.0);
  CHECK(integrate_against_dy(ones, obs) ==
        doctest::Approx(0.5 + 2.0).epsilon(1e-15));

  std::vector<double> f = {1.0, -1.0, 0.5, 0.0};
  double manual = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) manual += f[i] * obs.dy[i];
  CHECK(integrate_against_dy(f, obs) == manual);

  f.push_back(1.0);
  CHECK_THROWS_AS(integrate_against_dy(f, obs), std::invalid_argument);
}

TEST_CASE("observation: simulated record matches drift plus path increments") {
  NoiseParams p;
  const SamplePath path = simulate_ou_levy(p, 2, 120, 31);
  const ObservationRecord obs = generate_observations(test_signal, path);
  REQUIRE(obs.dy.size() == 240);
  for (std::size_t i = 0; i < obs.dy.size(); ++i) {
    const double t = static_cast<double>(i) / 120.0;
    CHECK(obs.dy[i] ==
          doctest::Approx(test_signal(t) / 120.0 + path.xi[i + 1] - path.xi[i])
              .epsilon(1e-15));
  }
}
