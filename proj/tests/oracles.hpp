#pragma once

// Independent reference machinery for tests: a from-scratch copy of the
// benchmark signal and basis, Simpson quadrature, and hand-derived closed
// forms for the signal's basis coefficients.  Nothing here includes library
// code, so agreement between the two sides is meaningful.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double signal(double t) {
  const double x = t - std::floor(t);
  return x * std::sin(2.0 * M_PI * x) +
         x * x * (1.0 - x) * std::cos(4.0 * M_PI * x);
}

inline double basis(int j, double t) {
  if (j == 1) return 1.0;
  const int k = j / 2;
  const double s2 = std::sqrt(2.0);
  return (j % 2 == 0) ? s2 * std::cos(2.0 * M_PI * k * t)
                      : s2 * std::sin(2.0 * M_PI * k * t);
}

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Closed forms for theta_j = int_0^1 signal * basis_j, derived by splitting
// the signal into t sin(2 pi t) and (t^2 - t^3) cos(4 pi t) and using
//   int_0^1 t sin(2 pi m t)         = -1/(2 pi m)
//   int_0^1 t cos(2 pi m t)         = 0            (m != 0; 1/2 at m = 0)
//   int_0^1 (t^2-t^3) cos(2 pi m t) = -1/(2 pi m)^2 (m != 0; 1/12 at m = 0)
//   int_0^1 (t^2-t^3) sin(2 pi m t) = -6/(2 pi m)^3 (m != 0; 0 at m = 0)
// after product-to-sum expansion.
inline double theta_closed(int j) {
  const double s2 = std::sqrt(2.0);
  if (j == 1) return -1.0 / (2.0 * M_PI) - 1.0 / (16.0 * M_PI * M_PI);
  const int k = j / 2;
  if (j % 2 == 0) {
    const double A = (k == 1) ? -s2 / (8.0 * M_PI)
                              : s2 / (2.0 * M_PI * (k * k - 1.0));
    double B;
    if (k == 2) {
      B = (s2 / 2.0) * (1.0 / 12.0 - 1.0 / (64.0 * M_PI * M_PI));
    } else {
      const double p = 2.0 * M_PI * (k + 2.0);
      const double q = 2.0 * M_PI * (k - 2.0);
      B = -(s2 / 2.0) * (1.0 / (p * p) + 1.0 / (q * q));
    }
    return A + B;
  }
  const double A = (k == 1) ? s2 / 4.0 : 0.0;
  auto I = [](double m) {
    if (m == 0.0) return 0.0;
    const double w = 2.0 * M_PI * m;
    return -6.0 / (w * w * w);
  };
  return A + (s2 / 2.0) * (I(k + 2.0) + I(k - 2.0));
}

inline std::vector<double> theta_quadrature(int count, int intervals = 16384) {
  std::vector<double> th(count);
  for (int j = 1; j <= count; ++j)
    th[j - 1] = simpson([j](double t) { return signal(t) * basis(j, t); }, 0.0,
                        1.0, intervals);
  return th;
}

inline double signal_norm_sq_closed() {
  const double p3 = M_PI * M_PI * M_PI;
  const double w4 = std::pow(8.0 * M_PI, 4);
  const double w6 = std::pow(8.0 * M_PI, 6);
  return (1.0 / 6.0 - 1.0 / (16.0 * M_PI * M_PI)) + (13.0 / 18.0) / p3 +
         (1.0 / 210.0 - 12.0 / w4 + 360.0 / w6);
}

}  // namespace oracle
