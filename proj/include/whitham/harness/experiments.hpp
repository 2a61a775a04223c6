// Sweeps over (mu, eps) measuring the distance between levels of the model
// hierarchy, and the invariant suites.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "whitham/dno.hpp"
#include "whitham/harness/config.hpp"
#include "whitham/harness/report.hpp"
#include "whitham/models.hpp"
#include "whitham/transforms.hpp"

namespace whitham::harness {

std::string code_version();

// Provenance tuple of one sweep row, safe to embed in a CSV cell.
std::string provenance_id(const ExperimentConfig& cfg, const StepperConfig& stepper, double mu,
                          double eps);

// Random trigonometric polynomial over modes 1..kmax with decaying amplitude,
// mean zero.
Field random_trig_field(const GridPtr& grid, std::mt19937_64& rng, int kmax, double amplitude);

Field initial_profile(const GridPtr& grid, const InitialData& data, std::uint64_t seed);

// Residual of the exact diagonalized system evaluated on the Riemann variables
// of a Whitham-Boussinesq state, with the time derivative taken through the
// Whitham-Boussinesq equations.
ModelState diagonal_residual(const Field& zeta, const Field& v, const Params& p);

// Residual of the right-going Whitham equation on u+ of a Whitham-Boussinesq
// state; the second slot carries u-.
FieldPair whitham_residual(const Field& zeta, const Field& v, const Params& p);

// Water-waves defect of the normal-form pipeline at (r, s): the time
// derivative of pipeline_wh along the decoupled pair minus J grad H_WW,
// measured in L2 x H-dot-1.
double water_waves_defect(const Field& r, const Field& s, const Params& p, const DnoConfig& dno);

// L2 x H-dot-1 distance between two (zeta, psi) pairs.
double surface_distance(const FieldPair& a, const FieldPair& b);

ScalingReport run_consistency_diag(const ExperimentConfig& cfg, int workers = 1);
ScalingReport run_consistency_whitham(const ExperimentConfig& cfg, int workers = 1);
ScalingReport run_corollary_onesided(const ExperimentConfig& cfg, int workers = 1);
ScalingReport run_theorem_pipeline(const ExperimentConfig& cfg, int workers = 1);
ScalingReport run_simulate(const ExperimentConfig& cfg, int workers = 1);

ScalingReport run_hamiltonian_suite(const ExperimentConfig& cfg);
ScalingReport run_transform_suite(const ExperimentConfig& cfg);
ScalingReport run_dispersion_suite(const ExperimentConfig& cfg);
// All three suites merged; verdict names are prefixed with the suite.
ScalingReport run_suites(const ExperimentConfig& cfg, int workers = 1);

ScalingReport run_experiment(const ExperimentConfig& cfg, int workers = 1);

}  // namespace whitham::harness
