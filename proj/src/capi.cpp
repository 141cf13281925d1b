#include "ctreg/ctreg.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "ctreg/config.hpp"
#include "ctreg/errors.hpp"
#include "ctreg/io.hpp"
#include "ctreg/montecarlo.hpp"

struct ctreg_config {
  ctreg::ExperimentConfig cfg;
};
struct ctreg_report {
  ctreg::RiskReport rep;
};
struct ctreg_validation {
  ctreg::ValidationReport rep;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ctreg_status fail_invalid(const char* msg) {
  g_last_error = msg;
  return CTREG_ERR_INVALID_ARGUMENT;
}

ctreg_status put_string(const std::string& s, char** out) {
  *out = dup_string(s);
  if (!*out) {
    g_last_error = "out of memory";
    return CTREG_ERR_INTERNAL;
  }
  return CTREG_OK;
}

template <typename Fn>
ctreg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ctreg::ParseError& e) {
    g_last_error = e.what();
    return CTREG_ERR_PARSE;
  } catch (const ctreg::IoError& e) {
    g_last_error = e.what();
    return CTREG_ERR_IO;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return CTREG_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return CTREG_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CTREG_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CTREG_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* ctreg_version(void) { return "1.0.0"; }

const char* ctreg_last_error(void) { return g_last_error.c_str(); }

void ctreg_string_free(char* s) { std::free(s); }

ctreg_status ctreg_config_create(ctreg_config** out) {
  if (!out) return fail_invalid("config_create: out is NULL");
  return guarded([&] {
    *out = new ctreg_config{ctreg::default_config()};
    return CTREG_OK;
  });
}

ctreg_status ctreg_config_parse(const char* json_text, ctreg_config** out) {
  if (!out) return fail_invalid("config_parse: out is NULL");
  if (!json_text) return fail_invalid("config_parse: json_text is NULL");
  return guarded([&] {
    *out = new ctreg_config{ctreg::config_from_json(json_text)};
    return CTREG_OK;
  });
}

ctreg_status ctreg_config_set(ctreg_config* cfg, const char* key,
                              const char* value) {
  if (!cfg) return fail_invalid("config_set: cfg is NULL");
  if (!key) return fail_invalid("config_set: key is NULL");
  if (!value) return fail_invalid("config_set: value is NULL");
  return guarded([&] {
    cfg->cfg = ctreg::config_with_override(cfg->cfg, key, value);
    return CTREG_OK;
  });
}

ctreg_status ctreg_config_set_seed(ctreg_config* cfg, uint64_t seed) {
  if (!cfg) return fail_invalid("config_set_seed: cfg is NULL");
  cfg->cfg.root_seed = seed;
  return CTREG_OK;
}

ctreg_status ctreg_config_full_scale(ctreg_config* cfg) {
  if (!cfg) return fail_invalid("config_full_scale: cfg is NULL");
  return guarded([&] {
    cfg->cfg = ctreg::full_scale(cfg->cfg);
    return CTREG_OK;
  });
}

ctreg_status ctreg_config_to_json(const ctreg_config* cfg, char** out) {
  if (!cfg) return fail_invalid("config_to_json: cfg is NULL");
  if (!out) return fail_invalid("config_to_json: out is NULL");
  return guarded([&] { return put_string(ctreg::config_to_json(cfg->cfg), out); });
}

void ctreg_config_free(ctreg_config* cfg) { delete cfg; }

ctreg_status ctreg_benchmark(const ctreg_config* cfg, ctreg_report** out) {
  if (!cfg) return fail_invalid("benchmark: cfg is NULL");
  if (!out) return fail_invalid("benchmark: out is NULL");
  return guarded([&] {
    *out = new ctreg_report{ctreg::run_experiment(cfg->cfg)};
    return CTREG_OK;
  });
}

ctreg_status ctreg_report_csv(const ctreg_report* rep, char** out) {
  if (!rep) return fail_invalid("report_csv: report is NULL");
  if (!out) return fail_invalid("report_csv: out is NULL");
  return guarded([&] { return put_string(ctreg::report_csv(rep->rep), out); });
}

ctreg_status ctreg_report_table_csv(const ctreg_report* rep, char** out) {
  if (!rep) return fail_invalid("report_table_csv: report is NULL");
  if (!out) return fail_invalid("report_table_csv: out is NULL");
  return guarded(
      [&] { return put_string(ctreg::report_table_csv(rep->rep), out); });
}

ctreg_status ctreg_report_table_text(const ctreg_report* rep, char** out) {
  if (!rep) return fail_invalid("report_table_text: report is NULL");
  if (!out) return fail_invalid("report_table_text: out is NULL");
  return guarded(
      [&] { return put_string(ctreg::report_table_text(rep->rep), out); });
}

int ctreg_report_n_count(const ctreg_report* rep) {
  return rep ? static_cast<int>(rep->rep.rows.size()) : 0;
}

int ctreg_report_n_at(const ctreg_report* rep, int index) {
  if (!rep || index < 0 || index >= static_cast<int>(rep->rep.rows.size()))
    return -1;
  return rep->rep.rows[index].n;
}

ctreg_status ctreg_report_plot_csv(const ctreg_report* rep, int index,
                                   char** out) {
  if (!rep) return fail_invalid("report_plot_csv: report is NULL");
  if (!out) return fail_invalid("report_plot_csv: out is NULL");
  if (index < 0 || index >= static_cast<int>(rep->rep.rows.size()))
    return fail_invalid("report_plot_csv: index out of range");
  return guarded(
      [&] { return put_string(ctreg::plot_csv(rep->rep.rows[index]), out); });
}

void ctreg_report_free(ctreg_report* rep) { delete rep; }

ctreg_status ctreg_validate(const ctreg_config* cfg, ctreg_validation** out) {
  if (!cfg) return fail_invalid("validate: cfg is NULL");
  if (!out) return fail_invalid("validate: out is NULL");
  return guarded([&] {
    *out = new ctreg_validation{ctreg::validate_identities(cfg->cfg)};
    return CTREG_OK;
  });
}

ctreg_status ctreg_validation_text(const ctreg_validation* v, char** out) {
  if (!v) return fail_invalid("validation_text: handle is NULL");
  if (!out) return fail_invalid("validation_text: out is NULL");
  return guarded(
      [&] { return put_string(ctreg::validation_text(v->rep), out); });
}

ctreg_status ctreg_validation_json(const ctreg_validation* v, char** out) {
  if (!v) return fail_invalid("validation_json: handle is NULL");
  if (!out) return fail_invalid("validation_json: out is NULL");
  return guarded(
      [&] { return put_string(ctreg::validation_json(v->rep), out); });
}

int ctreg_validation_passed(const ctreg_validation* v) {
  if (!v) return -1;
  return v->rep.passed ? 1 : 0;
}

void ctreg_validation_free(ctreg_validation* v) { delete v; }

ctreg_status ctreg_simulate_path_csv(const ctreg_config* cfg, char** out) {
  if (!cfg) return fail_invalid("simulate_path_csv: cfg is NULL");
  if (!out) return fail_invalid("simulate_path_csv: out is NULL");
  return guarded([&] {
    return put_string(ctreg::path_csv(ctreg::simulate_observation(cfg->cfg)),
                      out);
  });
}

ctreg_status ctreg_estimate_from_path_csv(const ctreg_config* cfg,
                                          const char* path_csv,
                                          char** curve_csv_out,
                                          char** diagnostics_json_out) {
  if (!cfg) return fail_invalid("estimate_from_path_csv: cfg is NULL");
  if (!path_csv) return fail_invalid("estimate_from_path_csv: path_csv is NULL");
  if (!curve_csv_out)
    return fail_invalid("estimate_from_path_csv: curve_csv_out is NULL");
  if (!diagnostics_json_out)
    return fail_invalid("estimate_from_path_csv: diagnostics_json_out is NULL");
  return guarded([&] {
    const ctreg::ObservationRecord obs = ctreg::parse_path_csv(path_csv);
    const ctreg::EstimateResult res =
        ctreg::estimate_from_observation(obs, cfg->cfg);
    const std::string curve = ctreg::estimate_csv(res);
    const std::string diag = ctreg::estimate_diagnostics_json(res);
    ctreg_status st = put_string(curve, curve_csv_out);
    if (st != CTREG_OK) return st;
    st = put_string(diag, diagnostics_json_out);
    if (st != CTREG_OK) {
      ctreg_string_free(*curve_csv_out);
      *curve_csv_out = nullptr;
    }
    return st;
  });
}

ctreg_status ctreg_pinsker_constant(double k, double r, double* out) {
  if (!out) return fail_invalid("pinsker_constant: out is NULL");
  return guarded([&] {
    *out = ctreg::pinsker_constant(k, r);
    return CTREG_OK;
  });
}

ctreg_status ctreg_write_text_file(const char* path, const char* content) {
  if (!path) return fail_invalid("write_text_file: path is NULL");
  if (!content) return fail_invalid("write_text_file: content is NULL");
  return guarded([&] {
    ctreg::write_text_file_atomic(path, content);
    return CTREG_OK;
  });
}

}  // extern "C"
