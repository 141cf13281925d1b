#include "ctreg/fourier.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace ctreg {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;
}  // namespace

double trig(int j, double t) {
  if (j < 1) throw std::invalid_argument("trig: index must be >= 1");
  if (j == 1) return 1.0;
  const double angle = 2.0 * kPi * (j / 2) * t;
  return j % 2 == 0 ? kSqrt2 * std::cos(angle) : kSqrt2 * std::sin(angle);
}

std::vector<double> fold_periods(const ObservationRecord& obs) {
  const int M = obs.steps_per_unit;
  if (M < 1 || obs.horizon_n < 1 ||
      obs.dy.size() != static_cast<std::size_t>(obs.horizon_n) * M)
    throw std::invalid_argument("fold_periods: inconsistent observation record");
  std::vector<double> folded(M, 0.0);
  for (int q = 0; q < obs.horizon_n; ++q) {
    const double* block = obs.dy.data() + static_cast<std::size_t>(q) * M;
    for (int k = 0; k < M; ++k) folded[k] += block[k];
  }
  return folded;
}

std::vector<double> trig_table(int count, int M) {
  if (count < 0 || M < 1) throw std::invalid_argument("trig_table: bad sizes");
  std::vector<double> table(static_cast<std::size_t>(count) * M);
  for (int j = 1; j <= count; ++j)
    for (int k = 0; k < M; ++k)
      table[static_cast<std::size_t>(j - 1) * M + k] =
          trig(j, static_cast<double>(k) / M);
  return table;
}

FourierEstimates coefficients_from_folded(const std::vector<double>& folded,
                                          const std::vector<double>& table,
                                          int count, int horizon_n) {
  const int M = static_cast<int>(folded.size());
  if (count < 0 || table.size() < static_cast<std::size_t>(count) * M)
    throw std::invalid_argument("coefficients_from_folded: table too small");
  FourierEstimates est;
  est.horizon_n = horizon_n;
  est.theta_hat.resize(count);
  for (int j = 1; j <= count; ++j) {
    const double* row = table.data() + static_cast<std::size_t>(j - 1) * M;
    double acc = 0.0;
    for (int k = 0; k < M; ++k) acc += row[k] * folded[k];
    est.theta_hat[j - 1] = acc / horizon_n;
  }
  return est;
}

FourierEstimates estimate_coefficients(const ObservationRecord& obs, int count) {
  if (count > obs.horizon_n)
    throw std::invalid_argument(
        "estimate_coefficients: count exceeds horizon n");
  if (count < 0)
    throw std::invalid_argument("estimate_coefficients: negative count");
  return coefficients_from_folded(fold_periods(obs),
                                  trig_table(count, obs.steps_per_unit), count,
                                  obs.horizon_n);
}

std::vector<double> reconstruct(const std::vector<double>& coeffs,
                                int eval_points) {
  if (eval_points < 2)
    throw std::invalid_argument("reconstruct: need at least 2 points");
  std::vector<double> out(eval_points, 0.0);
  for (std::size_t j = 1; j <= coeffs.size(); ++j) {
    const double c = coeffs[j - 1];
    if (c == 0.0) continue;
    for (int i = 0; i < eval_points; ++i)
      out[i] += c * trig(static_cast<int>(j),
                         static_cast<double>(i) / (eval_points - 1));
  }
  return out;
}

double l2_norm_sq(const std::vector<double>& samples) {
  const std::size_t p = samples.size();
  if (p < 2) throw std::invalid_argument("l2_norm_sq: need at least 2 points");
  const double h = 1.0 / static_cast<double>(p - 1);
  double acc = 0.5 * (samples.front() * samples.front() +
                      samples.back() * samples.back());
  for (std::size_t i = 1; i + 1 < p; ++i) acc += samples[i] * samples[i];
  return acc * h;
}

double phi_star_integral(int d, int grid_size) {
  if (d < 1) throw std::invalid_argument("phi_star_integral: d must be >= 1");
  if (grid_size < 2)
    throw std::invalid_argument("phi_star_integral: grid too small");

  // sum_{j<=d} Tr_j(t) Tr_j(t-v) = A_d(v) + [d even] cos(2 pi N (2t - v)),
  // A_d(v) = 1 + sum_{j=2..d} cos(2 pi [j/2] v), N = d/2: complete sin/cos
  // pairs depend on v only, one unpaired cosine carries the t-dependence
  const int N = d / 2;
  const bool unpaired = d % 2 == 0;
  const int complete = unpaired ? N - 1 : N;
  const int tgrid = 10000;

  double acc = 0.0;
  for (int iv = 0; iv < grid_size; ++iv) {
    const double v = (iv + 0.5) / grid_size;  // midpoint rule in v
    double a_v = 1.0;
    for (int k = 1; k <= complete; ++k)
      a_v += 2.0 * std::cos(2.0 * kPi * k * v);
    if (unpaired) a_v += std::cos(2.0 * kPi * N * v);

    double best;
    if (!unpaired) {
      best = std::fabs(a_v);
    } else {
      // max_t |A_d(v) + cos(phi_t)|, phi_t = 2 pi N (2t - v), over a fine
      // t-grid; the phase advances by a constant step, so the cos/sin pair
      // is updated by a rotation instead of per-step trig calls
      const double dphi = 4.0 * kPi * N / tgrid;
      const double cd = std::cos(dphi), sd = std::sin(dphi);
      double c = std::cos(-2.0 * kPi * N * v);
      double s = std::sin(-2.0 * kPi * N * v);
      best = 0.0;
      for (int it = 0; it < tgrid; ++it) {
        const double val = std::fabs(a_v + c);
        if (val > best) best = val;
        const double cn = c * cd - s * sd;
        s = s * cd + c * sd;
        c = cn;
      }
    }
    acc += best;
  }
  return acc / grid_size;
}

int d_zero(double a_max) {
  if (a_max < 0.0) throw std::invalid_argument("d_zero: a_max must be >= 0");
  const double a_check =
      a_max == 0.0 ? 0.25 : (1.0 - std::exp(-a_max)) / (4.0 * a_max);
  int d = 7;
  while (5.0 + std::log(static_cast<double>(d)) > a_check * d) ++d;
  return d;
}

BasisDiagnostics basis_diagnostics(double a_max) {
  BasisDiagnostics diag;
  diag.phi_star = kSqrt2;
  diag.a_check = a_max == 0.0 ? 0.25 : (1.0 - std::exp(-a_max)) / (4.0 * a_max);
  diag.d0 = d_zero(a_max);
  return diag;
}

}  // namespace ctreg
