// Command-line front end over the C API: simulate one observation path,
// fit the estimators to a stored path, run the replicated benchmark, run the
// distributional validation checks, or evaluate the sharp constant.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctreg/ctreg.h"

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  bool full_scale = false;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file");
  cmd->add_option("--set", o.sets,
                  "override as KEY=VALUE, e.g. --set noise.a=-0.5 "
                  "(repeatable; applied in order, after --full-scale)");
  cmd->add_flag("--full-scale", o.full_scale,
                "start from the long-run settings (more horizons, "
                "replications and resolution)");
  o.seed_opt = cmd->add_option("--set-seed,--seed", o.seed, "root RNG seed");
}

int api_error(const char* context) {
  std::fprintf(stderr, "error: %s: %s\n", context, ctreg_last_error());
  return 1;
}

bool slurp(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// returns nullptr after printing an error
ctreg_config* build_config(const CommonOpts& o) {
  ctreg_config* cfg = nullptr;
  if (!o.config_path.empty()) {
    std::string text;
    if (!slurp(o.config_path, text)) {
      std::fprintf(stderr, "error: cannot read %s\n", o.config_path.c_str());
      return nullptr;
    }
    if (ctreg_config_parse(text.c_str(), &cfg) != CTREG_OK) {
      api_error("config");
      return nullptr;
    }
  } else if (ctreg_config_create(&cfg) != CTREG_OK) {
    api_error("config");
    return nullptr;
  }
  if (o.full_scale && ctreg_config_full_scale(cfg) != CTREG_OK) {
    api_error("config");
    ctreg_config_free(cfg);
    return nullptr;
  }
  for (const std::string& kv : o.sets) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "error: --set expects KEY=VALUE, got \"%s\"\n",
                   kv.c_str());
      ctreg_config_free(cfg);
      return nullptr;
    }
    if (ctreg_config_set(cfg, kv.substr(0, eq).c_str(),
                         kv.substr(eq + 1).c_str()) != CTREG_OK) {
      api_error("--set");
      ctreg_config_free(cfg);
      return nullptr;
    }
  }
  if (o.seed_opt && o.seed_opt->count() > 0) ctreg_config_set_seed(cfg, o.seed);
  return cfg;
}

int write_out(const std::string& path, const char* content) {
  std::error_code ec;
  const std::filesystem::path parent =
      std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  if (ctreg_write_text_file(path.c_str(), content) != CTREG_OK)
    return api_error("write");
  return 0;
}

int run_simulate(const CommonOpts& o, const std::string& out_path) {
  ctreg_config* cfg = build_config(o);
  if (!cfg) return 1;
  char* csv = nullptr;
  const ctreg_status st = ctreg_simulate_path_csv(cfg, &csv);
  ctreg_config_free(cfg);
  if (st != CTREG_OK) return api_error("simulate");
  int rc = 0;
  if (out_path.empty())
    std::fputs(csv, stdout);
  else
    rc = write_out(out_path, csv);
  ctreg_string_free(csv);
  return rc;
}

int run_estimate(const CommonOpts& o, const std::string& input,
                 const std::string& out_path) {
  std::string text;
  if (!slurp(input, text)) {
    std::fprintf(stderr, "error: cannot read %s\n", input.c_str());
    return 1;
  }
  ctreg_config* cfg = build_config(o);
  if (!cfg) return 1;
  char* curve = nullptr;
  char* diag = nullptr;
  const ctreg_status st =
      ctreg_estimate_from_path_csv(cfg, text.c_str(), &curve, &diag);
  ctreg_config_free(cfg);
  if (st != CTREG_OK) return api_error("estimate");
  std::fputs(diag, stdout);
  int rc = 0;
  if (!out_path.empty()) rc = write_out(out_path, curve);
  ctreg_string_free(curve);
  ctreg_string_free(diag);
  return rc;
}

int run_benchmark(const CommonOpts& o, const std::string& out_dir) {
  ctreg_config* cfg = build_config(o);
  if (!cfg) return 1;
  ctreg_report* rep = nullptr;
  if (ctreg_benchmark(cfg, &rep) != CTREG_OK) {
    ctreg_config_free(cfg);
    return api_error("benchmark");
  }
  char* table_text = nullptr;
  if (ctreg_report_table_text(rep, &table_text) == CTREG_OK) {
    std::fputs(table_text, stdout);
    ctreg_string_free(table_text);
  }
  int rc = 0;
  if (!out_dir.empty()) {
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto emit = [&](const char* name,
                    ctreg_status (*fn)(const ctreg_report*, char**)) {
      if (rc) return;
      char* s = nullptr;
      if (fn(rep, &s) != CTREG_OK) {
        rc = api_error(name);
        return;
      }
      rc = write_out((dir / name).string(), s);
      ctreg_string_free(s);
    };
    emit("report.csv", ctreg_report_csv);
    emit("table.csv", ctreg_report_table_csv);
    emit("table.txt", ctreg_report_table_text);
    for (int i = 0; rc == 0 && i < ctreg_report_n_count(rep); ++i) {
      char* s = nullptr;
      if (ctreg_report_plot_csv(rep, i, &s) != CTREG_OK) {
        rc = api_error("plot");
        break;
      }
      const std::string name =
          "plot_n" + std::to_string(ctreg_report_n_at(rep, i)) + ".csv";
      rc = write_out((dir / name).string(), s);
      ctreg_string_free(s);
    }
    if (rc == 0) {
      char* cj = nullptr;
      if (ctreg_config_to_json(cfg, &cj) != CTREG_OK)
        rc = api_error("config");
      else {
        rc = write_out((dir / "config.json").string(), cj);
        ctreg_string_free(cj);
      }
    }
  }
  ctreg_report_free(rep);
  ctreg_config_free(cfg);
  return rc;
}

int run_validate(const CommonOpts& o, const std::string& out_path) {
  ctreg_config* cfg = build_config(o);
  if (!cfg) return 1;
  ctreg_validation* v = nullptr;
  if (ctreg_validate(cfg, &v) != CTREG_OK) {
    ctreg_config_free(cfg);
    return api_error("validate");
  }
  char* text = nullptr;
  if (ctreg_validation_text(v, &text) == CTREG_OK) {
    std::fputs(text, stdout);
    ctreg_string_free(text);
  }
  int rc = 0;
  if (!out_path.empty()) {
    char* js = nullptr;
    if (ctreg_validation_json(v, &js) != CTREG_OK)
      rc = api_error("validate");
    else {
      rc = write_out(out_path, js);
      ctreg_string_free(js);
    }
  }
  const int passed = ctreg_validation_passed(v);
  ctreg_validation_free(v);
  ctreg_config_free(cfg);
  if (rc) return rc;
  return passed == 1 ? 0 : 1;
}

int run_pinsker(double k, double r) {
  double value = 0.0;
  if (ctreg_pinsker_constant(k, r, &value) != CTREG_OK)
    return api_error("pinsker");
  std::printf("%.12g\n", value);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive estimation of a periodic drift from a continuously "
               "observed noisy path"};
  app.require_subcommand(1);

  CLI::App* sim = app.add_subcommand(
      "simulate", "write one observation path of the benchmark signal as CSV");
  CommonOpts sim_opts;
  add_common(sim, sim_opts);
  std::string sim_out;
  sim->add_option("--out", sim_out, "output file (default: stdout)");

  CLI::App* est = app.add_subcommand(
      "estimate",
      "fit both estimators to a stored \"t,y\" path; prints diagnostics JSON");
  CommonOpts est_opts;
  add_common(est, est_opts);
  std::string est_input, est_out;
  est->add_option("input", est_input, "observation path CSV")->required();
  est->add_option("--out", est_out, "write the fitted curves CSV here");

  CLI::App* bench = app.add_subcommand(
      "benchmark", "replicated risk comparison of the estimator variants");
  CommonOpts bench_opts;
  add_common(bench, bench_opts);
  std::string bench_out;
  bench->add_option("--out", bench_out,
                    "directory for report.csv, table.csv, table.txt, "
                    "plot_n*.csv and config.json");

  CLI::App* val = app.add_subcommand(
      "validate",
      "distributional identity checks; exit 0 only if all checks pass");
  CommonOpts val_opts;
  add_common(val, val_opts);
  std::string val_out;
  val->add_option("--out", val_out, "write the JSON check report here");

  CLI::App* pin = app.add_subcommand(
      "pinsker", "print the sharp minimax constant for smoothness k, radius r");
  double pin_k = 0.0, pin_r = 0.0;
  pin->add_option("k", pin_k, "smoothness order (> 0)")->required();
  pin->add_option("r", pin_r, "radius (> 0)")->required();

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) return run_simulate(sim_opts, sim_out);
  if (est->parsed()) return run_estimate(est_opts, est_input, est_out);
  if (bench->parsed()) return run_benchmark(bench_opts, bench_out);
  if (val->parsed()) return run_validate(val_opts, val_out);
  if (pin->parsed()) return run_pinsker(pin_k, pin_r);
  return 1;
}
