#include "ctreg/shrinkage.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctreg {

double l_n_star(double rho_lower, int d) {
  if (d < 7)
    throw std::invalid_argument("l_n_star: block length d must be >= 7, got " +
                                std::to_string(d));
  if (rho_lower <= 0.0)
    throw std::invalid_argument("l_n_star: rho_lower must be positive");
  return rho_lower * static_cast<double>(d - 6) / 2.0;
}

double c_n(double l_star, double r_star, int d, double kappa_star, int n) {
  if (d < 1) throw std::invalid_argument("c_n: d must be positive");
  if (n < 1) throw std::invalid_argument("c_n: n must be positive");
  if (r_star <= 0.0) throw std::invalid_argument("c_n: r_star must be positive");
  if (kappa_star <= 0.0)
    throw std::invalid_argument("c_n: kappa_star must be positive");
  const double dn = static_cast<double>(n);
  return l_star / ((r_star + std::sqrt(static_cast<double>(d) * kappa_star / dn)) * dn);
}

ShrinkageParams make_shrinkage(double rho_lower, double r_star, int d,
                               double kappa_star, int n) {
  ShrinkageParams p;
  p.d = d;
  p.l_star = l_n_star(rho_lower, d);
  p.r_star = r_star;
  p.kappa_star = kappa_star;
  p.n = n;
  p.c = c_n(p.l_star, r_star, d, kappa_star, n);
  return p;
}

std::vector<double> shrink(const std::vector<double>& theta_hat, int d,
                           double c) {
  if (d < 1 || static_cast<size_t>(d) > theta_hat.size())
    throw std::invalid_argument(
        "shrink: d must lie in [1, coefficient count], got " +
        std::to_string(d));
  if (c < 0.0) throw std::invalid_argument("shrink: c must be nonnegative");
  double norm_sq = 0.0;
  for (int j = 0; j < d; ++j) norm_sq += theta_hat[j] * theta_hat[j];
  if (norm_sq <= 0.0)
    throw std::domain_error("shrink: head block has zero norm");
  const double factor = 1.0 - c / std::sqrt(norm_sq);
  std::vector<double> out = theta_hat;
  for (int j = 0; j < d; ++j) out[j] *= factor;
  return out;
}

HeadShrink head_shrink(const std::vector<double>& theta_hat, int d,
                       const ShrinkSpec& spec, double sigma_hat, int n) {
  HeadShrink h;
  if (d < 1 || static_cast<size_t>(d) > theta_hat.size())
    throw std::invalid_argument(
        "head_shrink: d must lie in [1, coefficient count], got " +
        std::to_string(d));
  if (spec.mode == ShrinkMode::none) return h;

  double norm_sq = 0.0;
  for (int j = 0; j < d; ++j) norm_sq += theta_hat[j] * theta_hat[j];

  if (spec.mode == ShrinkMode::theory) {
    if (d < 7) return h;  // constant would be nonpositive: leave weights raw
    const double c =
        c_n(l_n_star(spec.rho_lower, d), spec.r_star, d, spec.kappa_star, n);
    if (norm_sq < 1e-30) {
      h.degenerate = true;  // nothing to contract; report rather than throw
      return h;
    }
    h.c = c;
    h.factor = 1.0 - c / std::sqrt(norm_sq);
    return h;
  }

  // plugin: positive-part James-Stein style scale on the head block
  if (d < 3) return h;
  if (norm_sq < 1e-30) {
    h.degenerate = true;
    return h;
  }
  const double g = std::min(
      1.0, static_cast<double>(d - 2) * sigma_hat /
               (static_cast<double>(n) * norm_sq));
  h.factor = 1.0 - g;
  h.c = g * std::sqrt(norm_sq);  // equivalent head-norm contraction
  return h;
}

}  // namespace ctreg
