#include "ctreg/fourier.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ctreg/observation.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ctreg;

namespace {

// drift-only observation record: dy_i = S(i/M)/M, no noise
ObservationRecord drift_only(int n, int M) {
  SamplePath path;
  path.horizon_n = n;
  path.steps_per_unit = M;
  path.xi.assign(static_cast<std::size_t>(n) * M + 1, 0.0);
  return generate_observations(test_signal, path);
}

}  // namespace

TEST_CASE("fourier: trigonometric basis values") {
  CHECK(trig(1, 0.37) == 1.0);
  CHECK(trig(7, 0.1) == doctest::Approx(1.3449970239279148).epsilon(1e-14));
  CHECK(trig(4, 0.2) == doctest::Approx(-1.1441228056353685).epsilon(1e-14));
  CHECK(trig(2, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(trig(3, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(trig(0, 0.5), std::invalid_argument);

  for (int j = 1; j <= 9; ++j)
    CHECK(trig(j, 0.31) == doctest::Approx(oracle::basis(j, 0.31)).epsilon(1e-14));
}

TEST_CASE("fourier: discrete orthonormality on a uniform grid") {
  // frequencies below M/2 are integrated exactly by the uniform-grid sum
  const int M = 1000;
  for (int j = 1; j <= 8; ++j) {
    for (int l = j; l <= 8; ++l) {
      double acc = 0.0;
      for (int k = 0; k < M; ++k) {
        const double t = static_cast<double>(k) / M;
        acc += trig(j, t) * trig(l, t);
      }
      acc /= M;
      CHECK(acc == doctest::Approx(j == l ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("fourier: period folding sums aligned increments") {
  ObservationRecord obs;
  obs.horizon_n = 3;
  obs.steps_per_unit = 4;
  obs.dy = {1, 2, 3, 4, 10, 20, 30, 40, 100, 200, 300, 400};
  const auto folded = fold_periods(obs);
  REQUIRE(folded.size() == 4);
  CHECK(folded[0] == 111.0);
  CHECK(folded[1] == 222.0);
  CHECK(folded[2] == 333.0);
  CHECK(folded[3] == 444.0);

  obs.dy.pop_back();
  CHECK_THROWS_AS(fold_periods(obs), std::invalid_argument);
}

TEST_CASE("fourier: trig table matches direct evaluation") {
  const int count = 6, M = 37;
  const auto table = trig_table(count, M);
  REQUIRE(table.size() == static_cast<std::size_t>(count) * M);
  for (int j = 1; j <= count; ++j)
    for (int k = 0; k < M; ++k)
      CHECK(table[static_cast<std::size_t>(j - 1) * M + k] ==
            trig(j, static_cast<double>(k) / M));
}

TEST_CASE("fourier: drift-only coefficients recover the signal expansion") {
  const ObservationRecord obs = drift_only(4, 400);
  const FourierEstimates est = estimate_coefficients(obs, 4);
  REQUIRE(est.theta_hat.size() == 4);
  // uniform-grid sum of a periodic integrand whose derivative jumps at the
  // period boundary: O(1/M^2) agreement with the exact coefficients
  CHECK(est.theta_hat[0] ==
        doctest::Approx(-0.16548751706954146).epsilon(1e-4));
  CHECK(est.theta_hat[1] ==
        doctest::Approx(-0.07617112976852596).epsilon(1e-4));
  CHECK(est.theta_hat[2] == doctest::Approx(0.3700238696553865).epsilon(1e-4));
  CHECK(est.theta_hat[3] == doctest::Approx(0.13283247327814804).epsilon(1e-4));
  for (int j = 1; j <= 4; ++j)
    CHECK(est.theta_hat[j - 1] ==
          doctest::Approx(oracle::theta_closed(j)).epsilon(1e-4));
}

TEST_CASE("fourier: closed-form coefficients agree with quadrature") {
  const auto quad = oracle::theta_quadrature(11);
  for (int j = 1; j <= 11; ++j)
    CHECK(oracle::theta_closed(j) ==
          doctest::Approx(quad[j - 1]).scale(1.0).epsilon(1e-10));
  // the frozen leading values
  CHECK(oracle::theta_closed(5) ==
        doctest::Approx(-0.00026724935978187655).epsilon(1e-12));
  CHECK(oracle::theta_closed(11) ==
        doctest::Approx(-0.00068334573368263).epsilon(1e-10));
}

TEST_CASE("fourier: estimation entry point rejects bad counts") {
  const ObservationRecord obs = drift_only(3, 120);
  CHECK_THROWS_AS(estimate_coefficients(obs, 4), std::invalid_argument);
  CHECK_THROWS_AS(estimate_coefficients(obs, -1), std::invalid_argument);
  CHECK_NOTHROW(estimate_coefficients(obs, 3));
}

TEST_CASE("fourier: folded and direct estimation paths agree bitwise") {
  const ObservationRecord obs = drift_only(5, 200);
  const FourierEstimates direct = estimate_coefficients(obs, 5);
  const auto folded = fold_periods(obs);
  const auto table = trig_table(5, 200);
  const FourierEstimates via =
      coefficients_from_folded(folded, table, 5, obs.horizon_n);
  REQUIRE(via.theta_hat.size() == direct.theta_hat.size());
  for (std::size_t j = 0; j < via.theta_hat.size(); ++j)
    CHECK(via.theta_hat[j] == direct.theta_hat[j]);
}

TEST_CASE("fourier: reconstruction of a single basis function") {
  const std::vector<double> coeffs = {0.0, 1.0};
  const auto curve = reconstruct(coeffs, 101);
  REQUIRE(curve.size() == 101);
  for (int i = 0; i <= 100; ++i)
    CHECK(curve[i] ==
          doctest::Approx(trig(2, static_cast<double>(i) / 100)).epsilon(1e-15));
  CHECK_THROWS_AS(reconstruct(coeffs, 1), std::invalid_argument);
}

TEST_CASE("fourier: 50-term expansion approximates the signal uniformly") {
  std::vector<double> coeffs(50);
  for (int j = 1; j <= 50; ++j) coeffs[j - 1] = oracle::theta_closed(j);
  const int p = 4001;
  const auto curve = reconstruct(coeffs, p);
  double sup = 0.0;
  for (int i = 0; i < p; ++i) {
    const double t = static_cast<double>(i) / (p - 1);
    sup = std::max(sup, std::fabs(curve[i] - test_signal(t)));
  }
  CHECK(sup > 0.009);
  CHECK(sup < 0.011);
}

TEST_CASE("fourier: trapezoid norm") {
  const std::vector<double> ones(11, 1.0);
  CHECK(l2_norm_sq(ones) == doctest::Approx(1.0).epsilon(1e-15));

  const int p = 2001;
  std::vector<double> cosine(p);
  for (int i = 0; i < p; ++i)
    cosine[i] = trig(2, static_cast<double>(i) / (p - 1));
  CHECK(l2_norm_sq(cosine) == doctest::Approx(1.0).epsilon(1e-10));

  std::vector<double> sig(20001);
  for (int i = 0; i < 20001; ++i)
    sig[i] = test_signal(static_cast<double>(i) / 20000);
  CHECK(l2_norm_sq(sig) ==
        doctest::Approx(0.18836012464386648).epsilon(1e-6));
  CHECK(oracle::signal_norm_sq_closed() ==
        doctest::Approx(0.18836012464386648).epsilon(1e-12));

  CHECK_THROWS_AS(l2_norm_sq({1.0}), std::invalid_argument);
}

TEST_CASE("fourier: overlap functional of truncated kernels") {
  CHECK(phi_star_integral(1, 1000) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(phi_star_integral(2, 20001) == doctest::Approx(2.0).epsilon(1e-5));
  // d = 3: integral of |1 + 2 cos(2 pi v)| = 1/3 + 2 sqrt(3)/pi
  CHECK(phi_star_integral(3, 20001) ==
        doctest::Approx(1.4359911241769174).epsilon(1e-5));
  CHECK_THROWS_AS(phi_star_integral(0, 100), std::invalid_argument);
  CHECK_THROWS_AS(phi_star_integral(3, 1), std::invalid_argument);

  // logarithmic growth bound used by the block-length rule
  for (int d : {7, 10, 25}) {
    const double bound = 5.0 + std::log(static_cast<double>(d));
    CHECK(phi_star_integral(d, 2001) <= bound);
  }
}

TEST_CASE("fourier: smallest admissible block length") {
  CHECK(d_zero(1.0) == 58);
  CHECK(d_zero(0.0) == 35);
  CHECK(d_zero(10.0) == 444);
  CHECK_THROWS_AS(d_zero(-0.1), std::invalid_argument);

  const BasisDiagnostics diag = basis_diagnostics(1.0);
  CHECK(diag.phi_star == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(diag.a_check == doctest::Approx(0.15803013970713942).epsilon(1e-14));
  CHECK(diag.d0 == 58);
  // the defining inequalities at the boundary
  const double a_check = diag.a_check;
  CHECK(5.0 + std::log(58.0) <= a_check * 58);
  CHECK(5.0 + std::log(57.0) > a_check * 57);
}
