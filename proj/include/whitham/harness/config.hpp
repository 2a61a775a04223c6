// Declarative experiment configuration (JSON).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whitham/models.hpp"

namespace whitham::harness {

enum class Experiment {
  consistency_diag,
  consistency_whitham,
  corollary_onesided,
  theorem_pipeline,
  hamiltonian_suite,
  transform_suite,
  dispersion_suite,
  simulate,
};

const char* to_string(Experiment e) noexcept;
std::optional<Experiment> experiment_from_string(const std::string& name);

enum class Profile { gaussian, sech2, random };

const char* to_string(Profile p) noexcept;

enum class OutputFormat { csv, json };

struct GridSpec {
  Index n_points = 512;
  double length = 40.0 * 3.14159265358979323846;
};

struct InitialData {
  Profile profile = Profile::gaussian;
  double amplitude = 1.0;
  double width = 2.0;
  // Fraction of the domain; 0.5 centres the bump.
  double center = 0.5;
  // Subtract the mean so that d^{-1} is defined on the data.
  bool mean_zero = true;
  int modes = 8;  // random profile only
};

struct Regime {
  double mu_max = 1.0;
  double eps_max = 1.0;
  double h_min = 0.2;
};

struct StepperSpec {
  double dt = 0.05;
  std::optional<Scheme> scheme;   // per-model default when absent
  std::optional<double> t_end;    // min(1/eps, 1/mu, 50) when absent
  double cfl_guard = 0.5;
};

struct Options {
  std::string reference = "DiagonalizedSystem";  // corollary_onesided: or "WaterWaves"
  int dno_order = 2;
  double snapshot_interval = 1.0;
  std::string side = "right";                    // corollary_onesided: "right" or "left"
  std::string model = "WhithamRight";            // simulate
  LeftConvention left = LeftConvention::WhithamEquation;
  std::string fault = "none";                    // suites: "none" or "flip_symbol_sign"
  int trials = 0;                                // suites: 0 keeps the per-check defaults
};

struct ExperimentConfig {
  Experiment experiment = Experiment::dispersion_suite;
  GridSpec grid;
  std::vector<std::pair<double, double>> params_grid;  // (mu, eps)
  StepperSpec stepper;
  InitialData initial_data;
  std::uint64_t seeds = 1;
  std::string output_path;
  OutputFormat output_format = OutputFormat::csv;
  Regime regime;
  Options options;

  Params params(double mu, double eps) const;
  double t_end(double mu, double eps) const;
  StepperConfig stepper_for(ModelKind kind, double mu, double eps) const;
  // Throws InvalidConfig when a row leaves the regime or the data cavitates.
  void validate() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string dump_config(const ExperimentConfig& cfg);

// Default configuration of each experiment; the committed configs mirror these.
ExperimentConfig default_config(Experiment e);

}  // namespace whitham::harness
