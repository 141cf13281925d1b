#include "ctreg/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "ctreg/fourier.hpp"
#include "ctreg/rng.hpp"

namespace ctreg {

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// runs chunk_fn over a partition of [0, total); worker exceptions rethrow here
void parallel_chunks(int total, int threads,
                     const std::function<void(int, int)>& chunk_fn) {
  if (total <= 0) return;
  threads = std::min(threads, total);
  if (threads <= 1) {
    chunk_fn(0, total);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mu;
  for (int t = 0; t < threads; ++t) {
    const int begin = static_cast<int>(
        static_cast<long long>(total) * t / threads);
    const int end = static_cast<int>(
        static_cast<long long>(total) * (t + 1) / threads);
    pool.emplace_back([&, begin, end] {
      try {
        chunk_fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& x) {
  MeanSe r;
  const size_t n = x.size();
  if (n == 0) return r;
  double s = 0.0;
  for (double v : x) s += v;
  r.mean = s / static_cast<double>(n);
  if (n > 1) {
    double q = 0.0;
    for (double v : x) {
      const double d = v - r.mean;
      q += d * d;
    }
    r.se = std::sqrt(q / static_cast<double>(n - 1)) /
           std::sqrt(static_cast<double>(n));
  }
  return r;
}

}  // namespace

double empirical_risk(const std::vector<double>& estimate,
                      const std::vector<double>& truth) {
  if (estimate.empty() || estimate.size() != truth.size())
    throw std::invalid_argument(
        "empirical_risk: estimate and truth must have equal nonzero length");
  double s = 0.0;
  for (size_t i = 0; i < estimate.size(); ++i) {
    const double d = estimate[i] - truth[i];
    s += d * d;
  }
  return s / static_cast<double>(estimate.size());
}

double pinsker_constant(double k, double r) {
  if (k <= 0.0) throw std::invalid_argument("pinsker_constant: k must be positive");
  if (r <= 0.0) throw std::invalid_argument("pinsker_constant: r must be positive");
  const double e1 = 1.0 / (2.0 * k + 1.0);
  const double e2 = 2.0 * k / (2.0 * k + 1.0);
  return std::pow((1.0 + 2.0 * k) * r, e1) *
         std::pow(k / (M_PI * (k + 1.0)), e2);
}

double covariance_time_transform(const SignalFn& f, const SignalFn& g,
                                 double t, double a, int pts_per_unit) {
  if (t <= 0.0)
    throw std::invalid_argument("covariance_time_transform: t must be positive");
  if (pts_per_unit < 1)
    throw std::invalid_argument(
        "covariance_time_transform: pts_per_unit must be >= 1");
  const int K = static_cast<int>(std::llround(t * pts_per_unit));
  const double h = t / K;

  std::vector<double> fs(K + 1), gs(K + 1), pf(K + 1), pg(K + 1);
  for (int k = 0; k <= K; ++k) {
    const double s = k * h;
    fs[k] = f(s);
    gs[k] = g(s);
  }
  // cumulative trapezoid of e^{-a u} f(u) (1 + e^{2 a u})/2
  auto kernel = [a](double s, double v) {
    return std::exp(-a * s) * v * (1.0 + std::exp(2.0 * a * s)) / 2.0;
  };
  pf[0] = pg[0] = 0.0;
  double prev_f = kernel(0.0, fs[0]);
  double prev_g = kernel(0.0, gs[0]);
  for (int k = 1; k <= K; ++k) {
    const double s = k * h;
    const double cur_f = kernel(s, fs[k]);
    const double cur_g = kernel(s, gs[k]);
    pf[k] = pf[k - 1] + 0.5 * h * (prev_f + cur_f);
    pg[k] = pg[k - 1] + 0.5 * h * (prev_g + cur_g);
    prev_f = cur_f;
    prev_g = cur_g;
  }
  // trapezoid of f g + corr(f) g + f corr(g)
  double total = 0.0;
  double prev = fs[0] * gs[0];  // both correction terms vanish at s = 0
  for (int k = 1; k <= K; ++k) {
    const double s = k * h;
    const double e = a * std::exp(a * s);
    const double cur = fs[k] * gs[k] + e * pf[k] * gs[k] + fs[k] * e * pg[k];
    total += 0.5 * h * (prev + cur);
    prev = cur;
  }
  return total;
}

RiskReport run_experiment(const ExperimentConfig& cfg) {
  RiskReport report;
  report.config = cfg;
  const int threads = resolve_threads(cfg.threads);
  const int M = cfg.steps_per_unit;
  const int p = cfg.eval_points;
  const int N = cfg.replications;
  const double sigma_true = sigma_q(cfg.noise);

  for (int n : cfg.n_values) {
    const GridParams gp = grid_params(cfg.grid_preset, n);
    const WeightGrid grid =
        build_grid(n, cfg.bounds.sigma_upper, gp.k_star, gp.eps, gp.m);
    const double rho = cfg.rho ? *cfg.rho : default_rho(n);
    const double rstar = cfg.r_star ? *cfg.r_star : default_r_star(n);
    ShrinkSpec improved_spec;
    improved_spec.mode = cfg.shrink_mode;
    improved_spec.rho_lower = cfg.bounds.rho_lower;
    improved_spec.kappa_star = kappa_star(cfg.bounds);
    improved_spec.r_star = rstar;
    ShrinkSpec raw_spec;
    raw_spec.mode = ShrinkMode::none;

    const std::vector<double> table = trig_table(n, M);
    std::vector<double> drift(M);  // signal increments repeat every period
    for (int k = 0; k < M; ++k)
      drift[k] = test_signal(static_cast<double>(k) / M) / M;
    std::vector<double> truth(p);
    for (int i = 0; i < p; ++i)
      truth[i] = test_signal(static_cast<double>(i) / (p - 1));
    const int rows = grid.max_support;
    std::vector<double> basis(static_cast<size_t>(rows) * p);
    for (int j = 1; j <= rows; ++j)
      for (int i = 0; i < p; ++i)
        basis[static_cast<size_t>(j - 1) * p + i] =
            trig(j, static_cast<double>(i) / (p - 1));

    // subsampled plot grid (first replication only)
    std::vector<int> plot_idx;
    const int stride = std::max(1, (p - 1) / 2000);
    for (int i = 0; i < p; i += stride) plot_idx.push_back(i);
    if (plot_idx.back() != p - 1) plot_idx.push_back(p - 1);

    RiskRow row;
    row.n = n;
    row.replications = N;
    row.grid_size = static_cast<int>(grid.vectors.size());
    row.max_prefix = grid.max_prefix;
    row.plot_t.resize(plot_idx.size());
    row.plot_truth.resize(plot_idx.size());
    row.plot_improved.resize(plot_idx.size());
    row.plot_lse.resize(plot_idx.size());
    for (size_t k = 0; k < plot_idx.size(); ++k) {
      row.plot_t[k] = static_cast<double>(plot_idx[k]) / (p - 1);
      row.plot_truth[k] = truth[plot_idx[k]];
    }

    std::vector<double> sel_imp(N), sel_raw(N), fix_imp(N), fix_raw(N),
        sig(N), shr_c(N);
    std::vector<long long> degen(N);

    auto chunk = [&](int begin, int end) {
      ObservationRecord obs;
      obs.horizon_n = n;
      obs.steps_per_unit = M;
      obs.dy.resize(static_cast<size_t>(n) * M);
      std::vector<double> curve(p);
      auto risk_of = [&](const std::vector<double>& coef) {
        std::fill(curve.begin(), curve.end(), 0.0);
        for (size_t j = 0; j < coef.size(); ++j) {
          if (coef[j] == 0.0) continue;
          const double c = coef[j];
          const double* brow = basis.data() + j * p;
          for (int i = 0; i < p; ++i) curve[i] += c * brow[i];
        }
        double s = 0.0;
        for (int i = 0; i < p; ++i) {
          const double d = curve[i] - truth[i];
          s += d * d;
        }
        return s / static_cast<double>(p);
      };
      for (int r = begin; r < end; ++r) {
        try {
          const SamplePath path = simulate_ou_levy(
              cfg.noise, n, M,
              derive_stream(cfg.root_seed, static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(r)));
          for (size_t i = 0; i < obs.dy.size(); ++i)
            obs.dy[i] = drift[i % M] + path.xi[i + 1] - path.xi[i];
          const FourierEstimates est =
              coefficients_from_folded(fold_periods(obs), table, n, n);
          const double sigma_hat =
              cfg.sigma_known ? *cfg.sigma_known : sigma_from_estimates(est);
          const SelectionState imp =
              select_weights(est, grid, improved_spec, sigma_hat, rho);
          const SelectionState raw =
              select_weights(est, grid, raw_spec, sigma_hat, rho);
          const FixedWeightResult fixed = fixed_weight_coef(
              est, grid.vectors[raw.index], improved_spec, sigma_hat);

          sel_imp[r] = risk_of(imp.coef);
          if (r == 0)
            for (size_t k = 0; k < plot_idx.size(); ++k)
              row.plot_improved[k] = curve[plot_idx[k]];
          fix_imp[r] = risk_of(fixed.coef);
          sel_raw[r] = risk_of(raw.coef);
          if (r == 0)
            for (size_t k = 0; k < plot_idx.size(); ++k)
              row.plot_lse[k] = curve[plot_idx[k]];
          fix_raw[r] = sel_raw[r];  // raw pipeline at its own weight
          sig[r] = sigma_hat;
          shr_c[r] = imp.shrink_c;
          degen[r] = imp.degenerate_blocks + (fixed.degenerate ? 1 : 0);
        } catch (const std::exception& e) {
          throw std::runtime_error("n=" + std::to_string(n) + " replication " +
                                   std::to_string(r) + ": " + e.what());
        }
      }
    };
    parallel_chunks(N, threads, chunk);

    const MeanSe a = mean_se(sel_imp);
    const MeanSe b = mean_se(sel_raw);
    const MeanSe c = mean_se(fix_imp);
    const MeanSe d = mean_se(fix_raw);
    row.improved_selected = a.mean;
    row.improved_selected_se = a.se;
    row.lse_selected = b.mean;
    row.lse_selected_se = b.se;
    row.improved_fixed = c.mean;
    row.improved_fixed_se = c.se;
    row.lse_fixed = d.mean;
    row.lse_fixed_se = d.se;
    row.ratio_selected = a.mean > 0.0 ? b.mean / a.mean : 0.0;
    row.ratio_fixed = c.mean > 0.0 ? d.mean / c.mean : 0.0;
    std::vector<double> diffs(N);
    for (int r = 0; r < N; ++r) diffs[r] = fix_imp[r] - fix_raw[r];
    const MeanSe dd = mean_se(diffs);
    row.diff_fixed_mean = dd.mean;
    row.diff_fixed_se = dd.se;
    const MeanSe sm = mean_se(sig);
    row.sigma_hat_mean = sm.mean;
    double mae = 0.0;
    for (int r = 0; r < N; ++r) mae += std::fabs(sig[r] - sigma_true);
    row.sigma_hat_mae = mae / N;
    for (int r = 0; r < N; ++r)
      if (shr_c[r] > 0.0) ++row.shrink_active;
    for (int r = 0; r < N; ++r) row.degenerate_blocks += degen[r];

    report.rows.push_back(std::move(row));
  }
  return report;
}

ValidationReport run_validation(const ExperimentConfig& cfg, int reps,
                                int phi_grid) {
  if (reps < 2)
    throw std::invalid_argument("run_validation: reps must be >= 2");
  if (phi_grid < 10)
    throw std::invalid_argument("run_validation: phi_grid must be >= 10");
  const auto t0 = std::chrono::steady_clock::now();
  ValidationReport out;
  const int M = cfg.steps_per_unit;
  const NoiseParams& q = cfg.noise;
  const double sq = sigma_q(q);

  auto two_sided = [&](std::string name, double observed, double reference,
                       double tol) {
    ValidationCheck c;
    c.name = std::move(name);
    c.kind = "two-sided";
    c.observed = observed;
    c.reference = reference;
    c.tolerance = tol;
    c.pass = std::fabs(observed - reference) <= tol;
    out.checks.push_back(std::move(c));
  };
  auto upper_bound = [&](std::string name, double observed, double bound,
                         double tol) {
    ValidationCheck c;
    c.name = std::move(name);
    c.kind = "upper-bound";
    c.observed = observed;
    c.reference = bound;
    c.tolerance = tol;
    c.pass = observed <= bound + tol;
    out.checks.push_back(std::move(c));
  };

  // --- covariance identities at t = 5: E I(f) I(g) = sigma_q * transform ---
  {
    const int horizon = 5;
    const int steps = horizon * M;
    std::vector<double> f1(steps), f2(steps), f3(steps);
    for (int i = 0; i < steps; ++i) {
      const double t = static_cast<double>(i) / M;
      f1[i] = 1.0;
      f2[i] = trig(2, t);
      f3[i] = trig(3, t);
    }
    std::vector<double> p22(reps), p23(reps), p12(reps);
    for (int r = 0; r < reps; ++r) {
      const SamplePath path = simulate_ou_levy(
          q, horizon, M, derive_stream(cfg.root_seed, 1001, r));
      double i1 = 0.0, i2 = 0.0, i3 = 0.0;
      for (int i = 0; i < steps; ++i) {
        const double dxi = path.xi[i + 1] - path.xi[i];
        i1 += f1[i] * dxi;
        i2 += f2[i] * dxi;
        i3 += f3[i] * dxi;
      }
      p22[r] = i2 * i2;
      p23[r] = i2 * i3;
      p12[r] = i1 * i2;
    }
    auto one_fn = [](double) { return 1.0; };
    auto tr2_fn = [](double t) { return trig(2, t); };
    auto tr3_fn = [](double t) { return trig(3, t); };
    const double t22 = covariance_time_transform(tr2_fn, tr2_fn, 5.0, q.a, 1000);
    const double t23 = covariance_time_transform(tr2_fn, tr3_fn, 5.0, q.a, 1000);
    const double t12 = covariance_time_transform(one_fn, tr2_fn, 5.0, q.a, 1000);
    const MeanSe m22 = mean_se(p22);
    const MeanSe m23 = mean_se(p23);
    const MeanSe m12 = mean_se(p12);
    two_sided("cov-identity-tr2-tr2-t5", m22.mean, sq * t22, 4.0 * m22.se);
    two_sided("cov-identity-tr2-tr3-t5", m23.mean, sq * t23, 4.0 * m23.se);
    two_sided("cov-identity-one-tr2-t5", m12.mean, sq * t12, 4.0 * m12.se);
  }

  // --- marginal variance curve at t = 1, 5, 20 ---
  {
    const int horizon = 20;
    std::vector<double> v1(reps), v5(reps), v20(reps);
    for (int r = 0; r < reps; ++r) {
      const SamplePath path = simulate_ou_levy(
          q, horizon, M, derive_stream(cfg.root_seed, 1002, r));
      const double x1 = path.xi[static_cast<size_t>(1) * M];
      const double x5 = path.xi[static_cast<size_t>(5) * M];
      const double x20 = path.xi[static_cast<size_t>(20) * M];
      v1[r] = x1 * x1;
      v5[r] = x5 * x5;
      v20[r] = x20 * x20;
    }
    auto var_ref = [&](double t) {
      return q.a == 0.0 ? sq * t : sq * std::expm1(2.0 * q.a * t) / (2.0 * q.a);
    };
    const MeanSe m1 = mean_se(v1);
    const MeanSe m5 = mean_se(v5);
    const MeanSe m20 = mean_se(v20);
    two_sided("ou-variance-t1", m1.mean, var_ref(1.0), 4.0 * m1.se);
    two_sided("ou-variance-t5", m5.mean, var_ref(5.0), 4.0 * m5.se);
    two_sided("ou-variance-t20", m20.mean, var_ref(20.0), 4.0 * m20.se);
  }

  // --- energy bound: E I(f)^2 <= 2 sigma_q int f^2, step function on [0,4] ---
  {
    const int horizon = 4;
    const double vals[4] = {1.0, -2.0, 0.5, 3.0};
    const double int_f2 =
        vals[0] * vals[0] + vals[1] * vals[1] + vals[2] * vals[2] +
        vals[3] * vals[3];
    std::vector<double> e2(reps);
    for (int r = 0; r < reps; ++r) {
      const SamplePath path = simulate_ou_levy(
          q, horizon, M, derive_stream(cfg.root_seed, 1003, r));
      double acc = 0.0;
      for (int i = 0; i < horizon * M; ++i)
        acc += vals[i / M] * (path.xi[i + 1] - path.xi[i]);
      e2[r] = acc * acc;
    }
    const MeanSe m = mean_se(e2);
    upper_bound("energy-bound-step-n4", m.mean, 2.0 * sq * int_f2, 4.0 * m.se);
  }

  // --- scaled coefficient variance stays within a 1/j^2 band of sigma_q ---
  {
    const int n = 200;
    const int count = 10;
    const std::vector<double> table = trig_table(count, M);
    ObservationRecord obs;
    obs.horizon_n = n;
    obs.steps_per_unit = M;
    obs.dy.resize(static_cast<size_t>(n) * M);
    std::vector<double> c2(reps), c5(reps), c10(reps);
    for (int r = 0; r < reps; ++r) {
      const SamplePath path = simulate_ou_levy(
          q, n, M, derive_stream(cfg.root_seed, 1004, r));
      for (size_t i = 0; i < obs.dy.size(); ++i)
        obs.dy[i] = path.xi[i + 1] - path.xi[i];
      const FourierEstimates est =
          coefficients_from_folded(fold_periods(obs), table, count, n);
      c2[r] = n * est.theta_hat[1] * est.theta_hat[1];
      c5[r] = n * est.theta_hat[4] * est.theta_hat[4];
      c10[r] = n * est.theta_hat[9] * est.theta_hat[9];
    }
    const double band_scale =
        sq * (4.0 * q.a * q.a + 15.0 * std::fabs(q.a) + 2.0);
    const MeanSe m2 = mean_se(c2);
    const MeanSe m5 = mean_se(c5);
    const MeanSe m10 = mean_se(c10);
    two_sided("coef-variance-bound-j2", m2.mean, sq,
              band_scale / 4.0 + 4.0 * m2.se);
    two_sided("coef-variance-bound-j5", m5.mean, sq,
              band_scale / 25.0 + 4.0 * m5.se);
    two_sided("coef-variance-bound-j10", m10.mean, sq,
              band_scale / 100.0 + 4.0 * m10.se);
  }

  // --- overlap-kernel integral bound: deterministic quadrature ---
  for (int d : {7, 10, 50, 100}) {
    upper_bound("basis-overlap-integral-d" + std::to_string(d),
                phi_star_integral(d, phi_grid), 5.0 + std::log(d), 0.0);
  }

  out.passed = true;
  for (const ValidationCheck& c : out.checks) out.passed = out.passed && c.pass;
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return out;
}

ValidationReport validate_identities(const ExperimentConfig& cfg) {
  return run_validation(cfg, std::max(1000, cfg.replications), 10000);
}

ObservationRecord simulate_observation(const ExperimentConfig& cfg) {
  const int n = cfg.n_values.front();
  const SamplePath path = simulate_ou_levy(
      cfg.noise, n, cfg.steps_per_unit,
      derive_stream(cfg.root_seed, static_cast<std::uint64_t>(n), 0));
  return generate_observations(test_signal, path);
}

EstimateResult estimate_from_observation(const ObservationRecord& obs,
                                         const ExperimentConfig& cfg) {
  const int n = obs.horizon_n;
  if (n < 2)
    throw std::invalid_argument("estimate: observation horizon must be >= 2");
  const GridParams gp = grid_params(cfg.grid_preset, n);
  const WeightGrid grid =
      build_grid(n, cfg.bounds.sigma_upper, gp.k_star, gp.eps, gp.m);
  const double rho = cfg.rho ? *cfg.rho : default_rho(n);
  const double rstar = cfg.r_star ? *cfg.r_star : default_r_star(n);
  ShrinkSpec improved_spec;
  improved_spec.mode = cfg.shrink_mode;
  improved_spec.rho_lower = cfg.bounds.rho_lower;
  improved_spec.kappa_star = kappa_star(cfg.bounds);
  improved_spec.r_star = rstar;
  ShrinkSpec raw_spec;
  raw_spec.mode = ShrinkMode::none;

  const FourierEstimates est = estimate_coefficients(obs, n);
  const double sigma_hat =
      cfg.sigma_known ? *cfg.sigma_known : sigma_from_estimates(est);

  EstimateResult out;
  out.n = n;
  out.sigma_hat = sigma_hat;
  out.rho = rho;
  out.improved = select_weights(est, grid, improved_spec, sigma_hat, rho);
  out.lse = select_weights(est, grid, raw_spec, sigma_hat, rho);
  const int p = cfg.eval_points;
  out.curve_t.resize(p);
  for (int i = 0; i < p; ++i)
    out.curve_t[i] = static_cast<double>(i) / (p - 1);
  out.curve_improved = reconstruct(out.improved.coef, p);
  out.curve_lse = reconstruct(out.lse.coef, p);
  return out;
}

}  // namespace ctreg
