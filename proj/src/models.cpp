#include "whitham/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "whitham/hamiltonians.hpp"

namespace whitham {

const char* to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::WaterWaves: return "WaterWaves";
    case ModelKind::WhithamBoussinesq: return "WhithamBoussinesq";
    case ModelKind::WhithamBoussinesqSmoothed: return "WhithamBoussinesqSmoothed";
    case ModelKind::HamiltonianWB: return "HamiltonianWB";
    case ModelKind::DiagonalizedSystem: return "DiagonalizedSystem";
    case ModelKind::WhithamRight: return "WhithamRight";
    case ModelKind::WhithamLeft: return "WhithamLeft";
    case ModelKind::DecoupledWhithamPair: return "DecoupledWhithamPair";
    case ModelKind::KdV: return "KdV";
  }
  return "Unknown";
}

const char* to_string(Scheme scheme) noexcept {
  return scheme == Scheme::RK4 ? "RK4" : "IFRK4";
}

std::optional<ModelKind> model_kind_from_string(const std::string& name) {
  for (ModelKind k :
       {ModelKind::WaterWaves, ModelKind::WhithamBoussinesq, ModelKind::WhithamBoussinesqSmoothed,
        ModelKind::HamiltonianWB, ModelKind::DiagonalizedSystem, ModelKind::WhithamRight,
        ModelKind::WhithamLeft, ModelKind::DecoupledWhithamPair, ModelKind::KdV}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

Chart model_chart(ModelKind kind) {
  switch (kind) {
    case ModelKind::WaterWaves:
    case ModelKind::HamiltonianWB: return Chart::SurfacePotential;
    case ModelKind::WhithamBoussinesq:
    case ModelKind::WhithamBoussinesqSmoothed: return Chart::SurfaceVelocity;
    case ModelKind::DiagonalizedSystem:
    case ModelKind::DecoupledWhithamPair: return Chart::Diagonal;
    case ModelKind::WhithamRight:
    case ModelKind::WhithamLeft:
    case ModelKind::KdV: return Chart::Scalar;
  }
  return Chart::Scalar;
}

Scheme default_scheme(ModelKind kind) {
  switch (kind) {
    case ModelKind::WaterWaves:
    case ModelKind::WhithamBoussinesq:
    case ModelKind::WhithamBoussinesqSmoothed:
    case ModelKind::HamiltonianWB: return Scheme::RK4;
    default: return Scheme::IFRK4;
  }
}

namespace {

const Symbol kFmu(SymbolKind::Fmu);
const Symbol kFmu2(SymbolKind::Fmu2);

struct Ops {
  const Params& p;
  bool dealiased;

  Field mul(const Field& a, const Field& b) const { return pointwise_product(a, b, dealiased); }
  Field f(const Field& a) const { return apply_multiplier(kFmu, a, p); }
  Field f2(const Field& a) const { return apply_multiplier(kFmu2, a, p); }
};

ModelState scalar_state(const ModelState& like, Field u) {
  return ModelState(Chart::Scalar, std::move(u), Field::zeros(like.grid_ptr()));
}

}  // namespace

ModelState rhs(ModelKind kind, const ModelState& state, const Params& p, const ModelConfig& cfg) {
  require_chart(state, model_chart(kind));
  const Ops op{p, cfg.dno.dealias};
  const Field& a = state.first;
  const Field& b = state.second;
  const double e = p.eps;
  const Chart chart = state.chart;

  switch (kind) {
    case ModelKind::WaterWaves: {
      const FieldPair g = water_waves_gradient(a, b, p, cfg.dno);
      return ModelState(chart, g.second, -g.first);
    }
    case ModelKind::HamiltonianWB: {
      require_non_cavitation(a, p);
      const Field fv = op.f(derivative(b));
      const Field flux = fv + e * op.mul(a, fv);
      const Field zeta_t = -op.f(derivative(flux));
      const Field psi_t = -a - (0.5 * e) * op.mul(fv, fv);
      return ModelState(chart, zeta_t, psi_t);
    }
    case ModelKind::WhithamBoussinesq: {
      require_non_cavitation(a, p);
      const Field zeta_t = -derivative(b + e * op.mul(a, b));
      const Field v_t = -op.f2(derivative(a)) - e * op.mul(b, derivative(b));
      return ModelState(chart, zeta_t, v_t);
    }
    case ModelKind::WhithamBoussinesqSmoothed: {
      require_non_cavitation(a, p);
      const Field zeta_t = -derivative(b) - e * op.f2(derivative(op.mul(a, b)));
      const Field v_t = -op.f2(derivative(a)) - (0.5 * e) * op.f2(op.mul(b, derivative(b)));
      return ModelState(chart, zeta_t, v_t);
    }
    case ModelKind::DiagonalizedSystem: {
      const Field fa = op.f(derivative(a));
      const Field fb = op.f(derivative(b));
      const Field plus_t = -fa - (0.5 * e) * op.mul(3.0 * a + b, fa);
      const Field minus_t = fb - (0.5 * e) * op.mul(a + 3.0 * b, fb);
      return ModelState(chart, plus_t, minus_t);
    }
    case ModelKind::DecoupledWhithamPair: {
      const Field r_t = -op.f(derivative(a)) - (1.5 * e) * op.f(op.mul(a, derivative(a)));
      const Field s_t = op.f(derivative(b)) + (1.5 * e) * op.f(op.mul(b, derivative(b)));
      return ModelState(chart, r_t, s_t);
    }
    case ModelKind::WhithamRight: {
      return scalar_state(state, -op.f(derivative(a)) - (1.5 * e) * op.mul(a, derivative(a)));
    }
    case ModelKind::WhithamLeft: {
      const double sign = cfg.left == LeftConvention::WhithamEquation ? -1.0 : 1.0;
      return scalar_state(state, op.f(derivative(a)) + (1.5 * e * sign) * op.mul(a, derivative(a)));
    }
    case ModelKind::KdV: {
      const Field ux = derivative(a);
      const Field uxxx = derivative(derivative(ux));
      return scalar_state(state, -ux - (1.5 * e) * op.mul(a, ux) - (p.mu / 6.0) * uxxx);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model kind");
}

ModeMatrix linear_part(ModelKind kind, const Grid& grid, const Params& p) {
  using C = std::complex<double>;
  const auto& xi = grid.half_frequencies();
  const Index m = xi.size();
  const Index nyq = m - 1;
  ModeMatrix out;
  out.a = ComplexArray::Zero(m);
  out.b = ComplexArray::Zero(m);
  out.c = ComplexArray::Zero(m);
  out.d = ComplexArray::Zero(m);
  for (Index k = 0; k < m; ++k) {
    const double f = fmu(xi[k], p.mu);
    const bool odd_ok = k != nyq;
    const C ixi = odd_ok ? C(0, xi[k]) : C(0);
    switch (kind) {
      case ModelKind::WaterWaves:
      case ModelKind::HamiltonianWB:
        out.b[k] = xi[k] * xi[k] * f * f;
        out.c[k] = -1.0;
        break;
      case ModelKind::WhithamBoussinesq:
      case ModelKind::WhithamBoussinesqSmoothed:
        out.b[k] = -ixi;
        out.c[k] = -ixi * f * f;
        break;
      case ModelKind::DiagonalizedSystem:
      case ModelKind::DecoupledWhithamPair:
        out.a[k] = -ixi * f;
        out.d[k] = ixi * f;
        break;
      case ModelKind::WhithamRight: out.a[k] = -ixi * f; break;
      case ModelKind::WhithamLeft: out.a[k] = ixi * f; break;
      case ModelKind::KdV: {
        // -i xi + i mu xi^3 / 6
        const double x = odd_ok ? xi[k] : 0.0;
        out.a[k] = C(0, -x + p.mu * x * x * x / 6.0);
        break;
      }
    }
  }
  const Chart chart = model_chart(kind);
  out.coupled = chart == Chart::SurfacePotential || chart == Chart::SurfaceVelocity;
  return out;
}

ModeMatrix mode_exponential(const ModeMatrix& m, double tau) {
  using C = std::complex<double>;
  ModeMatrix out;
  out.coupled = m.coupled;
  const Index n = m.a.size();
  out.a.resize(n);
  out.b = ComplexArray::Zero(n);
  out.c = ComplexArray::Zero(n);
  out.d.resize(n);
  for (Index k = 0; k < n; ++k) {
    if (!m.coupled) {
      out.a[k] = std::exp(m.a[k] * tau);
      out.d[k] = std::exp(m.d[k] * tau);
      continue;
    }
    // exp(A) = e^t [cosh(q) I + sinh(q)/q (A - t I)], t = tr(A)/2,
    // q^2 = t^2 - det(A).
    const C a = m.a[k] * tau, b = m.b[k] * tau, c = m.c[k] * tau, d = m.d[k] * tau;
    const C t = 0.5 * (a + d);
    const C q = std::sqrt(t * t - (a * d - b * c));
    const C ch = std::cosh(q);
    const C sh = std::abs(q) < 1e-8 ? C(1) + q * q / 6.0 : std::sinh(q) / q;
    const C et = std::exp(t);
    out.a[k] = et * (ch + sh * (a - t));
    out.b[k] = et * sh * b;
    out.c[k] = et * sh * c;
    out.d[k] = et * (ch + sh * (d - t));
  }
  return out;
}

namespace {

ModelState apply_modes(const ModeMatrix& m, const ModelState& u) {
  const GridPtr& g = u.grid_ptr();
  if (u.chart == Chart::Scalar) {
    return ModelState(u.chart, Field::from_spectrum(g, m.a * u.first.spectrum()),
                      Field::zeros(g));
  }
  const ComplexArray& x = u.first.spectrum();
  const ComplexArray& y = u.second.spectrum();
  if (!m.coupled) {
    return ModelState(u.chart, Field::from_spectrum(g, m.a * x), Field::from_spectrum(g, m.d * y));
  }
  return ModelState(u.chart, Field::from_spectrum(g, m.a * x + m.b * y),
                    Field::from_spectrum(g, m.c * x + m.d * y));
}

void check_blow_up(const ModelState& s) {
  if (s.max_abs() > kBlowUpThreshold) {
    throw Error(ErrorCode::NonFinite, "blow-up: solution exceeded " +
                                          std::to_string(kBlowUpThreshold));
  }
}

}  // namespace

void check_cfl(const ModelState& state, const Params& p, double dt, double cfl_guard) {
  const double limit = cfl_guard * state.grid().spacing() / (1.0 + p.eps * state.max_abs());
  if (!(dt > 0) || dt > limit * (1 + 1e-9)) {
    throw Error(ErrorCode::CflViolated,
                "dt " + std::to_string(dt) + " exceeds CFL limit " + std::to_string(limit));
  }
}

Integrator::Integrator(ModelKind kind, const Params& p, const StepperConfig& stepper,
                       const ModelConfig& cfg)
    : kind_(kind), params_(p), stepper_(stepper), cfg_(cfg) {
  params_.validate();
  cfg_.dno.validate();
  if (!(stepper_.cfl_guard > 0)) throw Error(ErrorCode::InvalidArgument, "cfl_guard must be positive");
}

const ModeMatrix& Integrator::factor(double tau) {
  auto it = factors_.find(tau);
  if (it != factors_.end()) return it->second;
  if (factors_.size() > 8) factors_.clear();
  return factors_.emplace(tau, mode_exponential(*linear_, tau)).first->second;
}

ModelState Integrator::step(const ModelState& state, double dt) {
  require_chart(state, model_chart(kind_));
  check_cfl(state, params_, dt, stepper_.cfl_guard);
  ModelState next = stepper_.scheme == Scheme::RK4 ? step_rk4(state, dt) : step_ifrk4(state, dt);
  check_blow_up(next);
  return next;
}

ModelState Integrator::step_rk4(const ModelState& u, double dt) const {
  auto f = [&](const ModelState& s) { return rhs(kind_, s, params_, cfg_); };
  const ModelState k1 = f(u);
  const ModelState k2 = f(u + (0.5 * dt) * k1);
  const ModelState k3 = f(u + (0.5 * dt) * k2);
  const ModelState k4 = f(u + dt * k3);
  return u + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
}

ModelState Integrator::step_ifrk4(const ModelState& u, double dt) {
  if (!linear_ || linear_->a.size() != u.grid().half_size()) {
    linear_ = linear_part(kind_, u.grid(), params_);
    factors_.clear();
  }
  const ModeMatrix& lin = *linear_;
  auto n = [&](const ModelState& s) {
    return rhs(kind_, s, params_, cfg_) - apply_modes(lin, s);
  };
  const ModeMatrix half = factor(0.5 * dt);
  const ModeMatrix& full = factor(dt);
  const ModelState k1 = n(u);
  const ModelState k2 = n(apply_modes(half, u + (0.5 * dt) * k1));
  const ModelState eu = apply_modes(half, u);
  const ModelState k3 = n(eu + (0.5 * dt) * k2);
  const ModelState e2u = apply_modes(full, u);
  const ModelState k4 = n(e2u + dt * apply_modes(half, k3));
  return e2u + (dt / 6.0) * (apply_modes(full, k1) + 2.0 * apply_modes(half, k2 + k3) + k4);
}

ModelState step(ModelKind kind, const ModelState& state, const Params& p,
                const StepperConfig& stepper, const ModelConfig& cfg) {
  Integrator integ(kind, p, stepper, cfg);
  return integ.step(state, stepper.dt);
}

std::optional<double> model_energy(ModelKind kind, const ModelState& state, const Params& p,
                                   const ModelConfig& cfg) {
  const Field& a = state.first;
  const Field& b = state.second;
  const double e = p.eps;
  auto cubic = [](const Field& u) { return u.values().cube().sum() * u.grid().spacing(); };
  switch (kind) {
    case ModelKind::WaterWaves:
      return eval(Functional{FunctionalKind::H_WW, p, cfg.dno}, state);
    case ModelKind::HamiltonianWB:
      return eval(Functional{FunctionalKind::H0_eps_H1, p}, state);
    case ModelKind::DecoupledWhithamPair:
      return eval(Functional{FunctionalKind::H_Wh, p}, state);
    case ModelKind::WhithamBoussinesq: {
      const Field f2z = apply_multiplier(kFmu2, a, p);
      return 0.5 * inner(a, f2z) + 0.5 * inner((1.0 + e * a) * b, b);
    }
    case ModelKind::WhithamRight:
      return inner(a, apply_multiplier(kFmu, a, p)) + 0.5 * e * cubic(a);
    case ModelKind::WhithamLeft: {
      const double sign = cfg.left == LeftConvention::WhithamEquation ? -1.0 : 1.0;
      return sign * inner(a, apply_multiplier(kFmu, a, p)) + 0.5 * e * cubic(a);
    }
    case ModelKind::KdV: {
      const Field ux = derivative(a);
      return inner(a, a) + 0.5 * e * cubic(a) - (p.mu / 6.0) * inner(ux, ux);
    }
    default: return std::nullopt;
  }
}

Trajectory evolve(ModelKind kind, const ModelState& state0, const Params& p,
                  const StepperConfig& stepper, const ModelConfig& cfg,
                  const Observers& observers) {
  require_chart(state0, model_chart(kind));
  if (!(stepper.t_end >= 0)) throw Error(ErrorCode::InvalidArgument, "t_end must be >= 0");
  if (!(stepper.dt > 0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  Integrator integ(kind, p, stepper, cfg);

  std::vector<double> snaps;
  for (double t : observers.snapshot_times) {
    if (t >= 0 && t <= stepper.t_end) snaps.push_back(t);
  }
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

  Trajectory traj(state0);
  ModelState state = state0;
  double t = 0.0;
  std::size_t next_snap = 0;
  double next_sample = 0.0;

  auto record = [&](bool force) {
    if (!force && observers.sample_interval > 0 && t < next_sample - 1e-12) return;
    Sample s{t, state.first.mean(), state.chart == Chart::Scalar ? 0.0 : state.second.mean(),
             norm_hs(state, 0.0), std::numeric_limits<double>::quiet_NaN()};
    if (observers.energy) {
      if (auto h = model_energy(kind, state, p, cfg)) s.energy = *h;
    }
    traj.samples.push_back(s);
    if (observers.sample_interval > 0) {
      while (next_sample <= t + 1e-12) next_sample += observers.sample_interval;
    }
  };
  auto snapshot = [&]() {
    while (next_snap < snaps.size() && snaps[next_snap] <= t + 1e-12) {
      traj.snapshots.emplace_back(snaps[next_snap], state);
      ++next_snap;
    }
  };

  record(true);
  snapshot();
  if (observers.on_step) observers.on_step(t, state);

  while (t < stepper.t_end - 1e-12) {
    double target = stepper.t_end;
    if (next_snap < snaps.size()) target = std::min(target, snaps[next_snap]);
    double dt = stepper.dt;
    const bool lands = t + dt >= target - 1e-9 * stepper.dt;
    if (lands) dt = target - t;
    try {
      state = integ.step(state, dt);
    } catch (const Error& err) {
      traj.completed = false;
      traj.stop_reason = err.what();
      break;
    }
    t = lands ? target : t + dt;
    ++traj.steps;
    snapshot();
    record(t >= stepper.t_end - 1e-12);
    if (observers.on_step) observers.on_step(t, state);
  }
  traj.final_state = state;
  traj.t_final = t;
  return traj;
}

}  // namespace whitham
