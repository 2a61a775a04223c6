// Evolution systems and their time integration.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "whitham/dno.hpp"
#include "whitham/state.hpp"

namespace whitham {

enum class ModelKind {
  WaterWaves,
  WhithamBoussinesq,
  WhithamBoussinesqSmoothed,
  HamiltonianWB,
  DiagonalizedSystem,
  WhithamRight,
  WhithamLeft,
  DecoupledWhithamPair,
  KdV,
};

// Sign convention for the left-going single Whitham equation.
enum class LeftConvention {
  WhithamEquation,  // u_t - F u_x + (3 eps/2) u u_x = 0
  NormalForm,       // u_t - F u_x - (3 eps/2) u u_x = 0, as in the decoupled pair
};

enum class Scheme { RK4, IFRK4 };

const char* to_string(ModelKind kind) noexcept;
const char* to_string(Scheme scheme) noexcept;
std::optional<ModelKind> model_kind_from_string(const std::string& name);

Chart model_chart(ModelKind kind);
Scheme default_scheme(ModelKind kind);

struct ModelConfig {
  DnoConfig dno{};
  LeftConvention left = LeftConvention::WhithamEquation;
};

struct StepperConfig {
  double dt = 0.05;
  Scheme scheme = Scheme::IFRK4;
  double t_end = 1.0;
  double cfl_guard = 0.5;
};

inline constexpr double kBlowUpThreshold = 1e6;

ModelState rhs(ModelKind kind, const ModelState& state, const Params& p,
               const ModelConfig& cfg = {});

// Per-mode linear part on the half lattice: [[a, b], [c, d]].  Single-field
// kinds only use `a`.
struct ModeMatrix {
  ComplexArray a, b, c, d;
  bool coupled = false;
};

ModeMatrix linear_part(ModelKind kind, const Grid& grid, const Params& p);
ModeMatrix mode_exponential(const ModeMatrix& m, double tau);

// Throws CflViolated when dt exceeds cfl_guard dx / (1 + eps max|state|).
void check_cfl(const ModelState& state, const Params& p, double dt, double cfl_guard);

// Reusable integrator; caches the integrating factors per step size.
class Integrator {
 public:
  Integrator(ModelKind kind, const Params& p, const StepperConfig& stepper,
             const ModelConfig& cfg = {});

  ModelState step(const ModelState& state, double dt);
  ModelState step(const ModelState& state) { return step(state, stepper_.dt); }

  ModelKind kind() const { return kind_; }

 private:
  ModelState step_rk4(const ModelState& u, double dt) const;
  ModelState step_ifrk4(const ModelState& u, double dt);
  const ModeMatrix& factor(double tau);

  ModelKind kind_;
  Params params_;
  StepperConfig stepper_;
  ModelConfig cfg_;
  std::optional<ModeMatrix> linear_;
  std::map<double, ModeMatrix> factors_;
};

ModelState step(ModelKind kind, const ModelState& state, const Params& p,
                const StepperConfig& stepper, const ModelConfig& cfg = {});

// Conserved energy of the kind, when it has one in closed form.
std::optional<double> model_energy(ModelKind kind, const ModelState& state, const Params& p,
                                   const ModelConfig& cfg = {});

struct Observers {
  std::vector<double> snapshot_times;  // states are stored when t reaches these
  double sample_interval = 0.0;        // scalar diagnostics cadence; 0 means every step
  bool energy = true;
  // Called at every step boundary (including t = 0) when set.
  std::function<void(double, const ModelState&)> on_step;
};

struct Sample {
  double t;
  double mean_first;
  double mean_second;
  double norm_l2;
  double energy;  // NaN when the kind has no closed-form energy
};

struct Trajectory {
  explicit Trajectory(ModelState initial) : final_state(std::move(initial)) {}

  std::vector<Sample> samples;
  std::vector<std::pair<double, ModelState>> snapshots;
  ModelState final_state;
  double t_final = 0.0;
  long steps = 0;
  bool completed = true;
  std::string stop_reason;
};

// Marches to stepper.t_end; snapshot times are hit exactly by shortening the
// step that would cross them.  Step failures (blow-up, cavitation) end the run
// early with completed = false instead of throwing.
Trajectory evolve(ModelKind kind, const ModelState& state0, const Params& p,
                  const StepperConfig& stepper, const ModelConfig& cfg = {},
                  const Observers& observers = {});

}  // namespace whitham
