#include "ctreg/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctreg/errors.hpp"
#include "json.hpp"

namespace ctreg {

namespace {

using ordered = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError("config: " + path + ": " + msg);
}

void require_keys(const ordered& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known)
      fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
  }
}

double as_number(const ordered& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int as_int(const ordered& v, const std::string& path) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    fail(path, "expected an integer");
  return v.get<int>();
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n_values.empty()) fail("n_values", "must be nonempty");
  for (int n : cfg.n_values)
    if (n < 2) fail("n_values", "each n must be >= 2");
  if (cfg.replications < 1) fail("replications", "must be >= 1");
  if (cfg.eval_points < 2) fail("eval_points", "must be >= 2");
  if (cfg.steps_per_unit < 100) fail("steps_per_unit", "must be >= 100");
  if (cfg.noise.lambda <= 0.0) fail("noise.lambda", "must be positive");
  if (cfg.noise.jump_sd <= 0.0) fail("noise.jump_sd", "must be positive");
  if (std::fabs(cfg.noise.lambda * cfg.noise.jump_sd * cfg.noise.jump_sd -
                1.0) > 1e-9)
    fail("noise", "lambda * jump_sd^2 must equal 1");
  if (cfg.noise.a > 0.0) fail("noise.a", "must be <= 0");
  if (cfg.noise.rho1 <= 0.0) fail("noise.rho1", "must be positive");
  if (cfg.noise.rho2 < 0.0) fail("noise.rho2", "must be nonnegative");
  if (cfg.bounds.a_max <= 0.0) fail("bounds.a_max", "must be positive");
  if (cfg.bounds.rho_lower <= 0.0) fail("bounds.rho_lower", "must be positive");
  if (cfg.bounds.rho_lower > cfg.bounds.sigma_upper)
    fail("bounds", "rho_lower must not exceed sigma_upper");
  if (!check_family(cfg.noise, cfg.bounds))
    fail("noise", "parameters fall outside the family bounds");
  if (cfg.rho && !(*cfg.rho > 0.0 && *cfg.rho < 0.5))
    fail("rho", "must lie in (0, 1/2)");
  if (cfg.r_star && !(*cfg.r_star > 0.0)) fail("r_star", "must be positive");
  if (cfg.sigma_known && !(*cfg.sigma_known > 0.0))
    fail("sigma_known", "must be positive");
  if (cfg.threads < 0) fail("threads", "must be nonnegative");
}

ExperimentConfig config_from_obj(const ordered& j) {
  if (!j.is_object()) throw ParseError("config: top level must be an object");
  require_keys(j, "",
               {"n_values", "replications", "eval_points", "steps_per_unit",
                "noise", "bounds", "grid_preset", "shrink_mode", "rho",
                "r_star", "sigma_known", "root_seed", "threads"});
  ExperimentConfig cfg = default_config();

  if (j.contains("n_values")) {
    const ordered& a = j["n_values"];
    if (!a.is_array()) fail("n_values", "expected an array of integers");
    cfg.n_values.clear();
    for (size_t i = 0; i < a.size(); ++i)
      cfg.n_values.push_back(
          as_int(a[i], "n_values[" + std::to_string(i) + "]"));
  }
  if (j.contains("replications"))
    cfg.replications = as_int(j["replications"], "replications");
  if (j.contains("eval_points"))
    cfg.eval_points = as_int(j["eval_points"], "eval_points");
  if (j.contains("steps_per_unit"))
    cfg.steps_per_unit = as_int(j["steps_per_unit"], "steps_per_unit");

  if (j.contains("noise")) {
    const ordered& o = j["noise"];
    if (!o.is_object()) fail("noise", "expected an object");
    require_keys(o, "noise", {"a", "rho1", "rho2", "lambda", "jump_sd"});
    if (o.contains("a")) cfg.noise.a = as_number(o["a"], "noise.a");
    if (o.contains("rho1")) cfg.noise.rho1 = as_number(o["rho1"], "noise.rho1");
    if (o.contains("rho2")) cfg.noise.rho2 = as_number(o["rho2"], "noise.rho2");
    if (o.contains("lambda"))
      cfg.noise.lambda = as_number(o["lambda"], "noise.lambda");
    if (o.contains("jump_sd"))
      cfg.noise.jump_sd = as_number(o["jump_sd"], "noise.jump_sd");
  }
  if (j.contains("bounds")) {
    const ordered& o = j["bounds"];
    if (!o.is_object()) fail("bounds", "expected an object");
    require_keys(o, "bounds", {"a_max", "rho_lower", "sigma_upper"});
    if (o.contains("a_max"))
      cfg.bounds.a_max = as_number(o["a_max"], "bounds.a_max");
    if (o.contains("rho_lower"))
      cfg.bounds.rho_lower = as_number(o["rho_lower"], "bounds.rho_lower");
    if (o.contains("sigma_upper"))
      cfg.bounds.sigma_upper = as_number(o["sigma_upper"], "bounds.sigma_upper");
  }

  if (j.contains("grid_preset")) {
    const ordered& v = j["grid_preset"];
    if (!v.is_string()) fail("grid_preset", "expected a string");
    const std::string s = v.get<std::string>();
    if (s == "theory")
      cfg.grid_preset = GridPreset::theory;
    else if (s == "paper-sim")
      cfg.grid_preset = GridPreset::paper_sim;
    else
      fail("grid_preset", "expected \"theory\" or \"paper-sim\"");
  }
  if (j.contains("shrink_mode")) {
    const ordered& v = j["shrink_mode"];
    if (!v.is_string()) fail("shrink_mode", "expected a string");
    const std::string s = v.get<std::string>();
    if (s == "none")
      cfg.shrink_mode = ShrinkMode::none;
    else if (s == "theory")
      cfg.shrink_mode = ShrinkMode::theory;
    else if (s == "plugin")
      cfg.shrink_mode = ShrinkMode::plugin;
    else
      fail("shrink_mode", "expected \"none\", \"theory\" or \"plugin\"");
  }

  auto optional_number = [&](const char* key, std::optional<double>& out) {
    if (!j.contains(key)) return;
    const ordered& v = j[key];
    if (v.is_null())
      out.reset();
    else
      out = as_number(v, key);
  };
  optional_number("rho", cfg.rho);
  optional_number("r_star", cfg.r_star);
  optional_number("sigma_known", cfg.sigma_known);

  if (j.contains("root_seed")) {
    const ordered& v = j["root_seed"];
    if (!v.is_number_unsigned())
      fail("root_seed", "expected a nonnegative integer");
    cfg.root_seed = v.get<std::uint64_t>();
  }
  if (j.contains("threads")) cfg.threads = as_int(j["threads"], "threads");

  validate(cfg);
  return cfg;
}

ordered config_to_obj(const ExperimentConfig& cfg) {
  ordered j;
  j["n_values"] = cfg.n_values;
  j["replications"] = cfg.replications;
  j["eval_points"] = cfg.eval_points;
  j["steps_per_unit"] = cfg.steps_per_unit;
  j["noise"] = ordered{{"a", cfg.noise.a},
                       {"rho1", cfg.noise.rho1},
                       {"rho2", cfg.noise.rho2},
                       {"lambda", cfg.noise.lambda},
                       {"jump_sd", cfg.noise.jump_sd}};
  j["bounds"] = ordered{{"a_max", cfg.bounds.a_max},
                        {"rho_lower", cfg.bounds.rho_lower},
                        {"sigma_upper", cfg.bounds.sigma_upper}};
  j["grid_preset"] =
      cfg.grid_preset == GridPreset::theory ? "theory" : "paper-sim";
  j["shrink_mode"] = cfg.shrink_mode == ShrinkMode::none     ? "none"
                     : cfg.shrink_mode == ShrinkMode::theory ? "theory"
                                                             : "plugin";
  j["rho"] = cfg.rho ? ordered(*cfg.rho) : ordered(nullptr);
  j["r_star"] = cfg.r_star ? ordered(*cfg.r_star) : ordered(nullptr);
  j["sigma_known"] =
      cfg.sigma_known ? ordered(*cfg.sigma_known) : ordered(nullptr);
  j["root_seed"] = cfg.root_seed;
  j["threads"] = cfg.threads;
  return j;
}

}  // namespace

ExperimentConfig default_config() { return ExperimentConfig{}; }

ExperimentConfig config_from_json(const std::string& text) {
  ordered j;
  try {
    j = ordered::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("config: invalid JSON: ") + e.what());
  }
  return config_from_obj(j);
}

std::string config_to_json(const ExperimentConfig& cfg) {
  return config_to_obj(cfg).dump(2) + "\n";
}

ExperimentConfig config_with_override(const ExperimentConfig& cfg,
                                      const std::string& key,
                                      const std::string& value) {
  if (key.empty()) throw ParseError("config: override key must be nonempty");
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t dot = key.find('.', start);
    parts.push_back(key.substr(start, dot - start));
    if (parts.back().empty()) fail(key, "empty key segment");
    if (dot == std::string::npos) break;
    start = dot + 1;
  }

  ordered val;
  try {
    val = ordered::parse(value);
  } catch (const std::exception&) {
    val = value;  // bare strings like "theory" need no quotes
  }

  ordered j = config_to_obj(cfg);
  ordered* cur = &j;
  for (size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!cur->is_object()) fail(parts[i], "not an object");
    cur = &((*cur)[parts[i]]);
    if (cur->is_null()) *cur = ordered::object();
  }
  (*cur)[parts.back()] = val;
  return config_from_obj(j);
}

ExperimentConfig full_scale(ExperimentConfig cfg) {
  cfg.n_values = {100, 200, 500, 1000};
  cfg.replications = 1000;
  cfg.steps_per_unit = 1000;
  cfg.eval_points = 100001;
  return cfg;
}

GridParams grid_params(GridPreset preset, int n) {
  if (n < 2) throw std::invalid_argument("grid_params: n must be >= 2");
  const double ln_np1 = std::log(static_cast<double>(n) + 1.0);
  GridParams p;
  p.eps = 1.0 / ln_np1;
  if (preset == GridPreset::theory) {
    p.k_star = std::max(1, static_cast<int>(std::floor(std::sqrt(ln_np1))));
    p.m = 0;  // build_grid derives ceil(1/eps^2)
  } else {
    p.k_star = static_cast<int>(std::floor(100.0 + std::sqrt(ln_np1)));
    p.m = static_cast<int>(std::floor(ln_np1 * ln_np1));
  }
  return p;
}

double default_rho(int n) {
  if (n < 1) throw std::invalid_argument("default_rho: n must be positive");
  const double b = 3.0 + std::log(static_cast<double>(n));
  return 1.0 / (b * b);
}

double default_r_star(int n) {
  if (n < 1) throw std::invalid_argument("default_r_star: n must be positive");
  return std::log(static_cast<double>(n) + 1.0);
}

}  // namespace ctreg
