#include "ctreg/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "ctreg/errors.hpp"
#include "json.hpp"

namespace ctreg {

namespace {

using ordered = nlohmann::ordered_json;

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string g12(double v) { return fmt(v, "%.12g"); }
std::string g17(double v) { return fmt(v, "%.17g"); }

double parse_double(const std::string& field, const std::string& where) {
  const char* s = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw ParseError("path: " + where + ": not a number: \"" + field + "\"");
  return v;
}

}  // namespace

std::string path_csv(const ObservationRecord& obs) {
  const int M = obs.steps_per_unit;
  std::string out = "t,y\n";
  out.reserve(obs.dy.size() * 32 + 16);
  double y = 0.0;
  out += "0,0\n";
  for (size_t i = 0; i < obs.dy.size(); ++i) {
    y += obs.dy[i];
    out += g17(static_cast<double>(i + 1) / M);
    out += ',';
    out += g17(y);
    out += '\n';
  }
  return out;
}

ObservationRecord parse_path_csv(const std::string& text) {
  std::vector<double> ts, ys;
  size_t pos = 0;
  int line_no = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "t,y")
        throw ParseError("path: line 1: expected header \"t,y\"");
      saw_header = true;
      continue;
    }
    const size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("path: line " + std::to_string(line_no) +
                       ": expected two comma-separated fields");
    const std::string where = "line " + std::to_string(line_no);
    ts.push_back(parse_double(line.substr(0, comma), where));
    ys.push_back(parse_double(line.substr(comma + 1), where));
  }
  if (!saw_header) throw ParseError("path: empty input");
  if (ts.size() < 2) throw ParseError("path: need at least two rows");
  if (std::fabs(ts[0]) > 1e-9) throw ParseError("path: grid must start at t=0");

  const double dt = ts[1] - ts[0];
  if (dt <= 0.0) throw ParseError("path: t must be strictly increasing");
  const long long m = std::llround(1.0 / dt);
  if (m < 100)
    throw ParseError("path: invalid resolution: fewer than 100 steps per unit");
  const long long n = std::llround(ts.back());
  if (n < 1) throw ParseError("path: horizon must cover at least one unit");
  if (static_cast<long long>(ts.size()) != n * m + 1)
    throw ParseError("path: row count " + std::to_string(ts.size()) +
                     " does not match inferred grid (" + std::to_string(n) +
                     " units at " + std::to_string(m) + " steps per unit)");
  for (size_t i = 0; i < ts.size(); ++i)
    if (std::fabs(ts[i] - static_cast<double>(i) / m) > 1e-6)
      throw ParseError("path: t values are not a uniform grid (row " +
                       std::to_string(i + 2) + ")");

  ObservationRecord obs;
  obs.horizon_n = static_cast<int>(n);
  obs.steps_per_unit = static_cast<int>(m);
  obs.dy.resize(ts.size() - 1);
  for (size_t i = 0; i + 1 < ts.size(); ++i) obs.dy[i] = ys[i + 1] - ys[i];
  return obs;
}

std::string report_csv(const RiskReport& report) {
  std::string out = "n,estimator,risk,stderr\n";
  for (const RiskRow& row : report.rows) {
    const std::string n = std::to_string(row.n);
    out += n + ",improved-selected," + g12(row.improved_selected) + "," +
           g12(row.improved_selected_se) + "\n";
    out += n + ",lse-selected," + g12(row.lse_selected) + "," +
           g12(row.lse_selected_se) + "\n";
    out += n + ",improved-fixed," + g12(row.improved_fixed) + "," +
           g12(row.improved_fixed_se) + "\n";
    out += n + ",lse-fixed," + g12(row.lse_fixed) + "," +
           g12(row.lse_fixed_se) + "\n";
  }
  return out;
}

std::string report_table_csv(const RiskReport& report) {
  std::string out =
      "n,improved_selected,lse_selected,ratio_selected,improved_fixed,"
      "lse_fixed,ratio_fixed,sigma_hat_mean\n";
  for (const RiskRow& row : report.rows) {
    out += std::to_string(row.n) + "," + g12(row.improved_selected) + "," +
           g12(row.lse_selected) + "," + g12(row.ratio_selected) + "," +
           g12(row.improved_fixed) + "," + g12(row.lse_fixed) + "," +
           g12(row.ratio_fixed) + "," + g12(row.sigma_hat_mean) + "\n";
  }
  return out;
}

std::string report_table_text(const RiskReport& report) {
  const ExperimentConfig& cfg = report.config;
  char head[256];
  std::snprintf(head, sizeof head,
                "replications=%d  grid=%s  shrink=%s  seed=%llu\n",
                cfg.replications,
                cfg.grid_preset == GridPreset::theory ? "theory" : "paper-sim",
                cfg.shrink_mode == ShrinkMode::none     ? "none"
                : cfg.shrink_mode == ShrinkMode::theory ? "theory"
                                                        : "plugin",
                static_cast<unsigned long long>(cfg.root_seed));
  std::string out = head;
  char line[256];
  std::snprintf(line, sizeof line, "%6s %14s %14s %8s %14s %14s %8s %10s\n",
                "n", "improved-sel", "lse-sel", "ratio", "improved-fix",
                "lse-fix", "ratio", "sigma-hat");
  out += line;
  for (const RiskRow& row : report.rows) {
    std::snprintf(line, sizeof line,
                  "%6d %14.6g %14.6g %8.4g %14.6g %14.6g %8.4g %10.4g\n",
                  row.n, row.improved_selected, row.lse_selected,
                  row.ratio_selected, row.improved_fixed, row.lse_fixed,
                  row.ratio_fixed, row.sigma_hat_mean);
    out += line;
  }
  return out;
}

std::string plot_csv(const RiskRow& row) {
  std::string out = "t,truth,improved,lse\n";
  out.reserve(row.plot_t.size() * 64 + 32);
  for (size_t i = 0; i < row.plot_t.size(); ++i) {
    out += g12(row.plot_t[i]) + "," + g12(row.plot_truth[i]) + "," +
           g12(row.plot_improved[i]) + "," + g12(row.plot_lse[i]) + "\n";
  }
  return out;
}

std::string validation_text(const ValidationReport& report) {
  std::string out;
  int passed = 0;
  for (const ValidationCheck& c : report.checks) {
    out += c.pass ? "[pass] " : "[FAIL] ";
    out += c.name + ": observed " + g12(c.observed);
    out += (c.kind == "upper-bound") ? " bound " : " reference ";
    out += g12(c.reference) + " tolerance " + g12(c.tolerance) + "\n";
    if (c.pass) ++passed;
  }
  char tail[128];
  std::snprintf(tail, sizeof tail, "%d/%zu checks passed in %.1fs\n", passed,
                report.checks.size(), report.seconds);
  out += tail;
  return out;
}

std::string validation_json(const ValidationReport& report) {
  ordered j;
  j["passed"] = report.passed;
  j["seconds"] = report.seconds;
  j["checks"] = ordered::array();
  for (const ValidationCheck& c : report.checks) {
    ordered e;
    e["name"] = c.name;
    e["kind"] = c.kind;
    e["observed"] = c.observed;
    e["reference"] = c.reference;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    j["checks"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string estimate_csv(const EstimateResult& res) {
  std::string out = "t,improved,lse\n";
  out.reserve(res.curve_t.size() * 48 + 16);
  for (size_t i = 0; i < res.curve_t.size(); ++i) {
    out += g12(res.curve_t[i]) + "," + g12(res.curve_improved[i]) + "," +
           g12(res.curve_lse[i]) + "\n";
  }
  return out;
}

std::string estimate_diagnostics_json(const EstimateResult& res) {
  auto side = [](const SelectionState& s) {
    ordered e;
    e["grid_index"] = s.index;
    e["prefix_d"] = s.d;
    e["support"] = static_cast<int>(s.coef.size());
    e["shrink_c"] = s.shrink_c;
    e["degenerate_blocks"] = s.degenerate_blocks;
    e["cost"] = s.costs.empty() ? 0.0 : s.costs[s.index];
    return e;
  };
  ordered j;
  j["n"] = res.n;
  j["sigma_hat"] = res.sigma_hat;
  j["rho"] = res.rho;
  j["improved"] = side(res.improved);
  j["lse"] = side(res.lse);
  return j.dump(2) + "\n";
}

void write_text_file_atomic(const std::string& path,
                            const std::string& content) {
  const std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) throw IoError("cannot open for writing: " + tmp);
  const size_t wrote = std::fwrite(content.data(), 1, content.size(), f);
  const bool flush_ok = std::fflush(f) == 0;
  const bool close_ok = std::fclose(f) == 0;
  if (wrote != content.size() || !flush_ok || !close_ok) {
    std::remove(tmp.c_str());
    throw IoError("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace ctreg
