#include "ctreg/selection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctreg {

double tau_beta(double beta) {
  if (beta <= 0.0) throw std::invalid_argument("tau_beta: beta must be positive");
  return (beta + 1.0) * (2.0 * beta + 1.0) /
         (std::pow(M_PI, 2.0 * beta) * beta);
}

WeightGrid build_grid(int n, double sigma_upper, int k_star, double eps,
                      int m) {
  if (n < 2) throw std::invalid_argument("build_grid: n must be >= 2");
  if (sigma_upper <= 0.0)
    throw std::invalid_argument("build_grid: sigma_upper must be positive");
  if (k_star < 1) throw std::invalid_argument("build_grid: k_star must be >= 1");
  if (eps <= 0.0) throw std::invalid_argument("build_grid: eps must be positive");
  if (m < 0) throw std::invalid_argument("build_grid: m must be nonnegative");
  if (m == 0) m = static_cast<int>(std::ceil(1.0 / (eps * eps)));

  WeightGrid grid;
  grid.n = n;
  grid.sigma_upper = sigma_upper;
  grid.v_n = static_cast<double>(n) / sigma_upper;
  grid.k_star = k_star;
  grid.m = m;
  grid.eps = eps;
  grid.vectors.reserve(static_cast<size_t>(k_star) * m);

  const double ln_np1 = std::log(static_cast<double>(n) + 1.0);
  for (int beta = 1; beta <= k_star; ++beta) {
    const double tau = tau_beta(static_cast<double>(beta));
    for (int i = 1; i <= m; ++i) {
      WeightVector w;
      w.beta = beta;
      w.r = i * eps;
      w.omega = std::pow(tau * w.r * grid.v_n, 1.0 / (2.0 * beta + 1.0));
      const int support = static_cast<int>(std::floor(w.omega));
      w.d = static_cast<int>(std::floor(w.omega / ln_np1));
      w.g.resize(support);
      for (int j = 1; j <= support; ++j)
        w.g[j - 1] = (j <= w.d)
                         ? 1.0
                         : 1.0 - std::pow(static_cast<double>(j) / w.omega,
                                          static_cast<double>(beta));
      if (support > grid.max_support) grid.max_support = support;
      if (w.d > grid.max_prefix) grid.max_prefix = w.d;
      grid.vectors.push_back(std::move(w));
    }
  }
  return grid;
}

namespace {

int isqrt_floor(int n) {
  int s = 0;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

}  // namespace

double sigma_from_estimates(const FourierEstimates& est) {
  const int n = est.horizon_n;
  if (static_cast<int>(est.theta_hat.size()) < n)
    throw std::invalid_argument(
        "sigma_from_estimates: need at least n coefficients");
  double s = 0.0;
  for (int j = isqrt_floor(n) + 1; j <= n; ++j)
    s += est.theta_hat[j - 1] * est.theta_hat[j - 1];
  return s;
}

double estimate_sigma(const ObservationRecord& obs) {
  return sigma_from_estimates(estimate_coefficients(obs, obs.horizon_n));
}

double penalty(const WeightVector& w, double sigma_hat, int n) {
  if (n < 1) throw std::invalid_argument("penalty: n must be positive");
  double g2 = 0.0;
  for (double g : w.g) g2 += g * g;
  return sigma_hat * g2 / static_cast<double>(n);
}

double cost(const std::vector<double>& theta_star,
            const std::vector<double>& theta_hat, const WeightVector& w,
            double sigma_hat, int n, double rho) {
  const size_t support = w.g.size();
  if (theta_star.size() < support || theta_hat.size() < support)
    throw std::invalid_argument("cost: weight support exceeds coefficient count");
  if (n < 1) throw std::invalid_argument("cost: n must be positive");
  const double bias = sigma_hat / static_cast<double>(n);
  double j_val = 0.0;
  for (size_t j = 0; j < support; ++j) {
    const double g = w.g[j];
    j_val += g * g * theta_star[j] * theta_star[j] -
             2.0 * g * (theta_star[j] * theta_hat[j] - bias);
  }
  return j_val + rho * penalty(w, sigma_hat, n);
}

SelectionState select_weights(const FourierEstimates& est,
                              const WeightGrid& grid, const ShrinkSpec& spec,
                              double sigma_hat, double rho) {
  if (grid.vectors.empty())
    throw std::invalid_argument("select_weights: empty weight grid");
  if (!(rho > 0.0 && rho < 0.5))
    throw std::invalid_argument("select_weights: rho must lie in (0, 1/2)");
  if (est.horizon_n != grid.n)
    throw std::invalid_argument("select_weights: grid built for different n");
  if (static_cast<int>(est.theta_hat.size()) < grid.max_support)
    throw std::invalid_argument(
        "select_weights: weight support exceeds coefficient count");

  const int n = grid.n;
  const std::vector<double>& th = est.theta_hat;
  const double bias = sigma_hat / static_cast<double>(n);

  // the contraction depends on the weight only through its prefix length
  std::vector<char> have(grid.max_prefix + 1, 0);
  std::vector<HeadShrink> by_d(grid.max_prefix + 1);
  have[0] = 1;  // empty prefix: nothing to contract
  auto shrink_for = [&](int d) -> const HeadShrink& {
    if (!have[d]) {
      by_d[d] = head_shrink(th, d, spec, sigma_hat, n);
      have[d] = 1;
    }
    return by_d[d];
  };

  SelectionState state;
  state.sigma_hat = sigma_hat;
  state.rho = rho;
  state.costs.resize(grid.vectors.size());

  double best = 0.0;
  int best_idx = -1;
  for (size_t i = 0; i < grid.vectors.size(); ++i) {
    const WeightVector& w = grid.vectors[i];
    const HeadShrink& h = shrink_for(w.d);
    if (h.degenerate) ++state.degenerate_blocks;
    double j_val = 0.0;
    double g2 = 0.0;
    for (size_t j = 0; j < w.g.size(); ++j) {
      const double g = w.g[j];
      const double ts = (static_cast<int>(j) < w.d) ? h.factor * th[j] : th[j];
      j_val += g * g * ts * ts - 2.0 * g * (ts * th[j] - bias);
      g2 += g * g;
    }
    j_val += rho * sigma_hat * g2 / static_cast<double>(n);
    state.costs[i] = j_val;
    if (best_idx < 0 || j_val < best) {
      best = j_val;
      best_idx = static_cast<int>(i);
    }
  }

  state.index = best_idx;
  const WeightVector& win = grid.vectors[best_idx];
  state.d = win.d;
  const HeadShrink& hw = shrink_for(win.d);
  state.shrink_c = hw.c;
  state.coef.resize(win.g.size());
  for (size_t j = 0; j < win.g.size(); ++j) {
    const double ts = (static_cast<int>(j) < win.d) ? hw.factor * th[j] : th[j];
    state.coef[j] = win.g[j] * ts;
  }
  return state;
}

FixedWeightResult fixed_weight_coef(const FourierEstimates& est,
                                    const WeightVector& w,
                                    const ShrinkSpec& spec, double sigma_hat) {
  if (est.theta_hat.size() < w.g.size())
    throw std::invalid_argument(
        "fixed_weight_coef: weight support exceeds coefficient count");
  HeadShrink h;
  if (w.d >= 1) h = head_shrink(est.theta_hat, w.d, spec, sigma_hat, est.horizon_n);
  FixedWeightResult out;
  out.shrink_c = h.c;
  out.degenerate = h.degenerate;
  out.coef.resize(w.g.size());
  for (size_t j = 0; j < w.g.size(); ++j) {
    const double ts = (static_cast<int>(j) < w.d) ? h.factor * est.theta_hat[j]
                                                  : est.theta_hat[j];
    out.coef[j] = w.g[j] * ts;
  }
  return out;
}

std::pair<SelectionState, std::vector<double>> select(
    const ObservationRecord& obs, const WeightGrid& grid,
    const ShrinkSpec& spec, double rho, int eval_points) {
  FourierEstimates est = estimate_coefficients(obs, obs.horizon_n);
  const double sigma_hat = sigma_from_estimates(est);
  SelectionState state = select_weights(est, grid, spec, sigma_hat, rho);
  std::vector<double> curve = reconstruct(state.coef, eval_points);
  return {std::move(state), std::move(curve)};
}

}  // namespace ctreg
