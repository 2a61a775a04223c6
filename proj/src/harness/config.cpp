#include "whitham/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace whitham::harness {

using nlohmann::json;

const char* to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::consistency_diag: return "consistency_diag";
    case Experiment::consistency_whitham: return "consistency_whitham";
    case Experiment::corollary_onesided: return "corollary_onesided";
    case Experiment::theorem_pipeline: return "theorem_pipeline";
    case Experiment::hamiltonian_suite: return "hamiltonian_suite";
    case Experiment::transform_suite: return "transform_suite";
    case Experiment::dispersion_suite: return "dispersion_suite";
    case Experiment::simulate: return "simulate";
  }
  return "unknown";
}

std::optional<Experiment> experiment_from_string(const std::string& name) {
  for (Experiment e : {Experiment::consistency_diag, Experiment::consistency_whitham,
                       Experiment::corollary_onesided, Experiment::theorem_pipeline,
                       Experiment::hamiltonian_suite, Experiment::transform_suite,
                       Experiment::dispersion_suite, Experiment::simulate}) {
    if (name == to_string(e)) return e;
  }
  return std::nullopt;
}

const char* to_string(Profile p) noexcept {
  switch (p) {
    case Profile::gaussian: return "gaussian";
    case Profile::sech2: return "sech2";
    case Profile::random: return "random";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); }

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where + " must be a table");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) fail("unknown key '" + (where.empty() ? k : where + "." + k) + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    fail("bad value for '" + where + "." + key + "'");
  }
}

Scheme scheme_from(const std::string& s) {
  if (s == "RK4") return Scheme::RK4;
  if (s == "IFRK4") return Scheme::IFRK4;
  fail("unknown scheme '" + s + "'");
}

Profile profile_from(const std::string& s) {
  for (Profile p : {Profile::gaussian, Profile::sech2, Profile::random}) {
    if (s == to_string(p)) return p;
  }
  fail("unknown profile '" + s + "'");
}

LeftConvention left_from(const std::string& s) {
  if (s == "WhithamEquation") return LeftConvention::WhithamEquation;
  if (s == "NormalForm") return LeftConvention::NormalForm;
  fail("unknown left convention '" + s + "'");
}

const char* left_name(LeftConvention c) {
  return c == LeftConvention::WhithamEquation ? "WhithamEquation" : "NormalForm";
}

std::vector<std::pair<double, double>> read_params_grid(const json& j) {
  std::vector<std::pair<double, double>> out;
  if (j.is_array()) {
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
        fail("params_grid rows must be [mu, eps] pairs");
      }
      out.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return out;
  }
  reject_unknown(j, "params_grid", {"mu", "eps", "diagonal"});
  std::vector<double> mus, epss;
  read(j, "mu", mus, "params_grid");
  read(j, "eps", epss, "params_grid");
  bool diagonal = false;
  read(j, "diagonal", diagonal, "params_grid");
  if (diagonal) {
    // mu = eps along the listed values.
    const auto& vals = mus.empty() ? epss : mus;
    for (double v : vals) out.emplace_back(v, v);
    return out;
  }
  for (double m : mus) {
    for (double e : epss) out.emplace_back(m, e);
  }
  return out;
}

}  // namespace

Params ExperimentConfig::params(double mu, double eps) const {
  Params p;
  p.mu = mu;
  p.eps = eps;
  p.mu_max = regime.mu_max;
  p.h_min = regime.h_min;
  return p;
}

double ExperimentConfig::t_end(double mu, double eps) const {
  if (stepper.t_end) return *stepper.t_end;
  double t = 50.0;
  if (eps > 0) t = std::min(t, 1.0 / eps);
  if (mu > 0) t = std::min(t, 1.0 / mu);
  return t;
}

StepperConfig ExperimentConfig::stepper_for(ModelKind kind, double mu, double eps) const {
  StepperConfig s;
  s.dt = stepper.dt;
  s.scheme = stepper.scheme.value_or(default_scheme(kind));
  s.t_end = t_end(mu, eps);
  s.cfl_guard = stepper.cfl_guard;
  return s;
}

void ExperimentConfig::validate() const {
  if (grid.n_points < 8 || grid.n_points % 2 != 0) fail("grid.n_points must be even and >= 8");
  if (!(grid.length > 0)) fail("grid.length must be positive");
  if (!(regime.mu_max > 0) || !(regime.eps_max > 0) || regime.eps_max > 1) {
    fail("regime: need mu_max > 0 and 0 < eps_max <= 1");
  }
  if (!(regime.h_min > 0 && regime.h_min < 1)) fail("regime.h_min must lie in (0, 1)");
  if (!(stepper.dt > 0)) fail("stepper.dt must be positive");
  if (stepper.t_end && !(*stepper.t_end >= 0)) fail("stepper.t_end must be >= 0");
  if (!(stepper.cfl_guard > 0)) fail("stepper.cfl_guard must be positive");
  if (!(initial_data.width > 0)) fail("initial_data.width must be positive");
  if (initial_data.modes < 1) fail("initial_data.modes must be >= 1");
  if (options.dno_order < 0 || options.dno_order > 3) fail("options.dno_order must lie in 0..3");
  if (!(options.snapshot_interval > 0)) fail("options.snapshot_interval must be positive");
  if (options.reference != "DiagonalizedSystem" && options.reference != "WaterWaves") {
    fail("options.reference must be DiagonalizedSystem or WaterWaves");
  }
  if (options.side != "right" && options.side != "left") fail("options.side must be right or left");
  if (!model_kind_from_string(options.model)) fail("unknown options.model '" + options.model + "'");
  if (options.fault != "none" && options.fault != "flip_symbol_sign") {
    fail("options.fault must be none or flip_symbol_sign");
  }
  if (options.trials < 0) fail("options.trials must be >= 0");
  for (const auto& [mu, eps] : params_grid) {
    if (!(mu >= 0 && mu <= regime.mu_max && eps >= 0 && eps <= regime.eps_max)) {
      std::ostringstream os;
      os << "params_grid row (" << mu << ", " << eps << ") outside the regime";
      fail(os.str());
    }
    // Non-cavitation with margin 0.5 h_min for the initial elevation.
    const double depth = 1.0 - eps * std::abs(initial_data.amplitude);
    if (depth < 1.5 * regime.h_min) {
      std::ostringstream os;
      os << "initial amplitude " << initial_data.amplitude << " at eps=" << eps
         << " leaves depth " << depth << " below 1.5 h_min";
      fail(os.str());
    }
  }
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j, "", {"experiment", "grid", "params_grid", "stepper", "initial_data", "seeds",
                         "output", "regime", "options"});
  if (!j.contains("experiment")) fail("missing key 'experiment'");
  const std::string name = j.at("experiment").is_string() ? j.at("experiment").get<std::string>() : "";
  const auto exp = experiment_from_string(name);
  if (!exp) fail("unknown experiment '" + name + "'");
  ExperimentConfig c = default_config(*exp);

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown(g, "grid", {"n_points", "length"});
    read(g, "n_points", c.grid.n_points, "grid");
    read(g, "length", c.grid.length, "grid");
  }
  if (j.contains("params_grid")) c.params_grid = read_params_grid(j.at("params_grid"));
  if (j.contains("stepper")) {
    const json& s = j.at("stepper");
    reject_unknown(s, "stepper", {"dt", "scheme", "t_end", "cfl_guard"});
    read(s, "dt", c.stepper.dt, "stepper");
    read(s, "cfl_guard", c.stepper.cfl_guard, "stepper");
    if (s.contains("scheme")) {
      std::string sc;
      read(s, "scheme", sc, "stepper");
      c.stepper.scheme = scheme_from(sc);
    }
    if (s.contains("t_end")) {
      double t = 0;
      read(s, "t_end", t, "stepper");
      c.stepper.t_end = t;
    }
  }
  if (j.contains("initial_data")) {
    const json& d = j.at("initial_data");
    reject_unknown(d, "initial_data", {"profile", "amplitude", "width", "center", "mean_zero", "modes"});
    if (d.contains("profile")) {
      std::string p;
      read(d, "profile", p, "initial_data");
      c.initial_data.profile = profile_from(p);
    }
    read(d, "amplitude", c.initial_data.amplitude, "initial_data");
    read(d, "width", c.initial_data.width, "initial_data");
    read(d, "center", c.initial_data.center, "initial_data");
    read(d, "mean_zero", c.initial_data.mean_zero, "initial_data");
    read(d, "modes", c.initial_data.modes, "initial_data");
  }
  read(j, "seeds", c.seeds, "");
  if (j.contains("output")) {
    const json& o = j.at("output");
    reject_unknown(o, "output", {"path", "format"});
    read(o, "path", c.output_path, "output");
    if (o.contains("format")) {
      std::string f;
      read(o, "format", f, "output");
      if (f == "csv") c.output_format = OutputFormat::csv;
      else if (f == "json") c.output_format = OutputFormat::json;
      else fail("output.format must be csv or json");
    }
  }
  if (j.contains("regime")) {
    const json& r = j.at("regime");
    reject_unknown(r, "regime", {"mu_max", "eps_max", "h_min"});
    read(r, "mu_max", c.regime.mu_max, "regime");
    read(r, "eps_max", c.regime.eps_max, "regime");
    read(r, "h_min", c.regime.h_min, "regime");
  }
  if (j.contains("options")) {
    const json& o = j.at("options");
    reject_unknown(o, "options", {"reference", "dno_order", "snapshot_interval", "side", "model",
                                  "left_convention", "fault", "trials"});
    read(o, "reference", c.options.reference, "options");
    read(o, "dno_order", c.options.dno_order, "options");
    read(o, "snapshot_interval", c.options.snapshot_interval, "options");
    read(o, "side", c.options.side, "options");
    read(o, "model", c.options.model, "options");
    read(o, "fault", c.options.fault, "options");
    read(o, "trials", c.options.trials, "options");
    if (o.contains("left_convention")) {
      std::string l;
      read(o, "left_convention", l, "options");
      c.options.left = left_from(l);
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const ExperimentConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  j["grid"] = {{"n_points", c.grid.n_points}, {"length", c.grid.length}};
  json rows = json::array();
  for (const auto& [m, e] : c.params_grid) rows.push_back({m, e});
  j["params_grid"] = rows;
  json st = {{"dt", c.stepper.dt}, {"cfl_guard", c.stepper.cfl_guard}};
  if (c.stepper.scheme) st["scheme"] = to_string(*c.stepper.scheme);
  if (c.stepper.t_end) st["t_end"] = *c.stepper.t_end;
  j["stepper"] = st;
  j["initial_data"] = {{"profile", to_string(c.initial_data.profile)},
                       {"amplitude", c.initial_data.amplitude},
                       {"width", c.initial_data.width},
                       {"center", c.initial_data.center},
                       {"mean_zero", c.initial_data.mean_zero},
                       {"modes", c.initial_data.modes}};
  j["seeds"] = c.seeds;
  j["output"] = {{"path", c.output_path},
                 {"format", c.output_format == OutputFormat::csv ? "csv" : "json"}};
  j["regime"] = {{"mu_max", c.regime.mu_max}, {"eps_max", c.regime.eps_max}, {"h_min", c.regime.h_min}};
  j["options"] = {{"reference", c.options.reference},
                  {"dno_order", c.options.dno_order},
                  {"snapshot_interval", c.options.snapshot_interval},
                  {"side", c.options.side},
                  {"model", c.options.model},
                  {"left_convention", left_name(c.options.left)},
                  {"fault", c.options.fault},
                  {"trials", c.options.trials}};
  return j.dump(2);
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  const std::vector<double> axis{0.025, 0.05, 0.1};
  auto square = [&] {
    std::vector<std::pair<double, double>> out;
    for (double m : axis) {
      for (double x : axis) out.emplace_back(m, x);
    }
    return out;
  };
  switch (e) {
    case Experiment::consistency_diag:
    case Experiment::consistency_whitham:
    case Experiment::corollary_onesided:
      c.params_grid = square();
      c.stepper.t_end = 10.0;
      // eps max|zeta0| <= 0.3 h_min at the largest eps of the grid.
      c.initial_data.amplitude = 0.5;
      break;
    case Experiment::theorem_pipeline:
      c.params_grid = {{0.05, 0.05}, {0.1, 0.1}, {0.2, 0.2}};
      c.stepper.t_end = 5.0;
      c.initial_data.amplitude = 0.3;
      break;
    case Experiment::hamiltonian_suite:
    case Experiment::transform_suite:
    case Experiment::dispersion_suite:
      c.grid.n_points = 256;
      c.params_grid = {{0.1, 0.1}};
      c.stepper.t_end = 2.0;
      c.stepper.dt = 0.1;
      break;
    case Experiment::simulate:
      c.params_grid = {{0.1, 0.1}};
      c.stepper.t_end = 10.0;
      break;
  }
  return c;
}

}  // namespace whitham::harness
