// Command-line front end: runs one experiment per subcommand and writes the
// report as CSV or JSON.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>

#include "whitham/harness/config.hpp"
#include "whitham/harness/experiments.hpp"
#include "whitham/harness/report.hpp"

using namespace whitham;
using namespace whitham::harness;

namespace {

struct Common {
  std::string config;
  std::string out;
  std::string format;
  int workers = 1;
  std::optional<std::uint64_t> seed;
  std::string fault;
  int trials = 0;
  std::string only;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "experiment config (JSON)")->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "output path; stdout when absent");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--workers", c.workers, "sweep rows run in parallel")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "overrides the config seed");
}

void write_report(const ScalingReport& r, OutputFormat format, const std::string& path) {
  const std::string text = format == OutputFormat::json ? to_json(r) : to_csv(r);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write '" + path + "'");
  out << text;
}

int run(const Common& c, Experiment fallback, const std::set<Experiment>& allowed) {
  ExperimentConfig cfg = c.config.empty() ? default_config(fallback) : load_config(c.config);
  if (!allowed.count(cfg.experiment)) {
    throw Error(ErrorCode::InvalidConfig, std::string("config names experiment '") +
                                              to_string(cfg.experiment) + "', not valid here");
  }
  if (c.seed) cfg.seeds = *c.seed;
  if (!c.out.empty()) cfg.output_path = c.out;
  if (!c.format.empty()) cfg.output_format = c.format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (!c.fault.empty()) cfg.options.fault = c.fault;
  if (c.trials > 0) cfg.options.trials = c.trials;
  cfg.validate();
  ScalingReport r;
  if (fallback == Experiment::dispersion_suite) {
    if (!c.only.empty()) cfg.experiment = *experiment_from_string(c.only);
    r = c.only.empty() ? run_suites(cfg, c.workers) : run_experiment(cfg, c.workers);
  } else {
    r = run_experiment(cfg, c.workers);
  }
  write_report(r, cfg.output_format, cfg.output_path);
  print_summary(r, std::cerr);
  return r.all_pass() ? 0 : 1;
}

int report(const std::string& input, const Common& c) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open '" + input + "'");
  ScalingReport r;
  const bool json_in = input.size() >= 5 && input.substr(input.size() - 5) == ".json";
  if (json_in) {
    r = read_json(in);
  } else {
    r.rows = read_csv(in);
    if (!r.rows.empty()) r.experiment = r.rows.front().experiment;
  }
  r.fitted_slopes.clear();
  refit_all(r);
  const OutputFormat format = c.format == "csv" || (c.format.empty() && !json_in) ? OutputFormat::csv
                                                                                  : OutputFormat::json;
  if (!c.out.empty()) write_report(r, format, c.out);
  print_summary(r, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitham model hierarchy experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", code_version());

  Common common;
  auto* simulate = app.add_subcommand("simulate", "evolve one model and sample its diagnostics");
  auto* consistency = app.add_subcommand("consistency", "diagonalization or Whitham residual sweep");
  auto* corollary = app.add_subcommand("corollary", "one-sided Whitham approximation sweep");
  auto* pipeline = app.add_subcommand("pipeline", "normal-form pipeline against water waves");
  auto* suites = app.add_subcommand("suites", "invariant suites");
  auto* rep = app.add_subcommand("report", "refit slopes of a written report");
  for (auto* sub : {simulate, consistency, corollary, pipeline, suites}) add_common(sub, common);
  suites->add_option("--fault", common.fault, "fault injection")
      ->check(CLI::IsMember({"none", "flip_symbol_sign"}));
  suites->add_option("--trials", common.trials, "overrides per-check trial counts");
  suites->add_option("--only", common.only, "run a single suite")
      ->check(CLI::IsMember({"hamiltonian_suite", "transform_suite", "dispersion_suite"}));
  std::string input;
  rep->add_option("input", input, "CSV or JSON report")->required()->check(CLI::ExistingFile);
  rep->add_option("--out", common.out, "write the refitted report here");
  rep->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);
  try {
    if (simulate->parsed()) return run(common, Experiment::simulate, {Experiment::simulate});
    if (consistency->parsed()) {
      return run(common, Experiment::consistency_diag,
                 {Experiment::consistency_diag, Experiment::consistency_whitham});
    }
    if (corollary->parsed()) {
      return run(common, Experiment::corollary_onesided, {Experiment::corollary_onesided});
    }
    if (pipeline->parsed()) {
      return run(common, Experiment::theorem_pipeline, {Experiment::theorem_pipeline});
    }
    if (suites->parsed()) {
      return run(common, Experiment::dispersion_suite,
                 {Experiment::hamiltonian_suite, Experiment::transform_suite,
                  Experiment::dispersion_suite});
    }
    if (rep->parsed()) return report(input, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
