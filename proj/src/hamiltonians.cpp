#include "whitham/hamiltonians.hpp"

#include <cmath>
#include <string>

namespace whitham {

const char* to_string(FunctionalKind kind) noexcept {
  switch (kind) {
    case FunctionalKind::H_WW: return "H_WW";
    case FunctionalKind::H0_eps_H1: return "H0_eps_H1";
    case FunctionalKind::H_BW: return "H_BW";
    case FunctionalKind::H_Wh: return "H_Wh";
    case FunctionalKind::L_quad: return "L_quad";
    case FunctionalKind::Z_cubic: return "Z_cubic";
    case FunctionalKind::W_coupling: return "W_coupling";
    case FunctionalKind::G_aux: return "G_aux";
  }
  return "Unknown";
}

namespace {

const Symbol kFmu(SymbolKind::Fmu);

// Quadrature works on nodewise products so that gradients are exact
// derivatives of the discrete functionals.
double cube_integral(const Field& f) { return (f.values().cube()).sum() * f.grid().spacing(); }

double l_quad(const Field& r, const Field& s) { return inner(r, r) + inner(s, s); }
double z_cubic(const Field& r, const Field& s) { return 0.5 * (cube_integral(r) + cube_integral(s)); }
double w_coupling(const Field& r, const Field& s) {
  const Field sum = r + s;
  return -0.5 * inner(r * s, sum);
}

double g_aux(const Field& r, const Field& s) {
  require_mean_zero(r, "G_aux first slot");
  require_mean_zero(s, "G_aux second slot");
  const Field r2 = anti_derivative(r * r, MeanPolicy::Project);
  return 0.25 * (inner(r2, s) + inner(anti_derivative(r), s * s));
}

bool is_surface(Chart c) { return c == Chart::SurfacePotential || c == Chart::SurfaceVelocity; }

Field fmu_apply(const Field& f, const Params& p) { return apply_multiplier(kFmu, f, p); }

}  // namespace

FieldPair water_waves_gradient(const Field& zeta, const Field& psi, const Params& p,
                               const DnoConfig& cfg) {
  const bool d = cfg.dealias;
  const Field g = dno_apply(zeta, psi, p, cfg);
  const Field zx = derivative(zeta);
  const Field px = derivative(psi);
  const double e = p.eps;
  const double m = p.mu;
  const Field w = g + e * pointwise_product(zx, px, d);
  const RealArray denom = 1.0 + e * e * m * zx.values().square();
  Field correction(zeta.grid_ptr(), w.values().square() / denom);
  if (d) correction = dealias(correction);
  const Field dz = zeta + (0.5 * e) * pointwise_product(px, px, d) - (0.5 * m * e) * correction;
  return {dz, g};
}

double eval(const Functional& fn, const ModelState& state) {
  const Params& p = fn.params;
  const Field& a = state.first;
  const Field& b = state.second;
  switch (fn.kind) {
    case FunctionalKind::H_WW: {
      require_chart(state, Chart::SurfacePotential);
      return 0.5 * inner(a, a) + 0.5 * inner(b, dno_apply(a, b, p, fn.dno));
    }
    case FunctionalKind::H0_eps_H1: {
      if (!is_surface(state.chart)) require_chart(state, Chart::SurfacePotential);
      const Field v = state.chart == Chart::SurfacePotential ? derivative(b) : b;
      const Field fv = fmu_apply(v, p);
      const Field h = 1.0 + p.eps * a;
      return 0.5 * inner(a, a) + 0.5 * inner(h * fv, fv);
    }
    default: break;
  }
  require_chart(state, Chart::Diagonal);
  switch (fn.kind) {
    case FunctionalKind::L_quad: return l_quad(a, b);
    case FunctionalKind::Z_cubic: return z_cubic(a, b);
    case FunctionalKind::W_coupling: return w_coupling(a, b);
    case FunctionalKind::H_Wh: return l_quad(a, b) + p.eps * z_cubic(a, b);
    case FunctionalKind::H_BW:
      return l_quad(a, b) + p.eps * (z_cubic(a, b) + w_coupling(a, b));
    case FunctionalKind::G_aux: return g_aux(a, b);
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown functional");
}

ModelState gradient(const Functional& fn, const ModelState& state) {
  const Params& p = fn.params;
  const Field& a = state.first;
  const Field& b = state.second;
  const double e = p.eps;
  switch (fn.kind) {
    case FunctionalKind::H_WW: {
      require_chart(state, Chart::SurfacePotential);
      FieldPair g = water_waves_gradient(a, b, p, fn.dno);
      return ModelState(state.chart, g.first, g.second);
    }
    case FunctionalKind::H0_eps_H1: {
      if (!is_surface(state.chart)) require_chart(state, Chart::SurfacePotential);
      const bool potential = state.chart == Chart::SurfacePotential;
      const Field v = potential ? derivative(b) : b;
      const Field fv = fmu_apply(v, p);
      const Field h = 1.0 + e * a;
      const Field dz = a + (0.5 * e) * (fv * fv);
      Field dv = fmu_apply(h * fv, p);
      if (potential) dv = -derivative(dv);
      return ModelState(state.chart, dz, dv);
    }
    default: break;
  }
  require_chart(state, Chart::Diagonal);
  const Chart c = Chart::Diagonal;
  switch (fn.kind) {
    case FunctionalKind::L_quad: return ModelState(c, 2.0 * a, 2.0 * b);
    case FunctionalKind::Z_cubic: return ModelState(c, 1.5 * (a * a), 1.5 * (b * b));
    case FunctionalKind::W_coupling:
      return ModelState(c, -(a * b) - 0.5 * (b * b), -0.5 * (a * a) - (a * b));
    case FunctionalKind::H_Wh:
      return ModelState(c, 2.0 * a + (1.5 * e) * (a * a), 2.0 * b + (1.5 * e) * (b * b));
    case FunctionalKind::H_BW: {
      const Field ab = a * b;
      return ModelState(c, 2.0 * a + e * (1.5 * (a * a) - ab - 0.5 * (b * b)),
                        2.0 * b + e * (1.5 * (b * b) - ab - 0.5 * (a * a)));
    }
    case FunctionalKind::G_aux: {
      require_mean_zero(a, "G_aux first slot");
      require_mean_zero(b, "G_aux second slot");
      const Field inv_a = anti_derivative(a);
      const Field inv_b = anti_derivative(b);
      const Field dr = -2.0 * (a * inv_b) - anti_derivative(b * b, MeanPolicy::Project);
      const Field ds = anti_derivative(a * a, MeanPolicy::Project) + 2.0 * (b * inv_a);
      return ModelState(c, 0.25 * dr, 0.25 * ds);
    }
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown functional");
}

FieldPair apply_tensor(const PoissonTensor& t, const FieldPair& co) {
  const Field& a = co.first;
  const Field& b = co.second;
  check_same_grid(a, b);
  switch (t.kind) {
    case TensorKind::J_canonical: return {b, -a};
    case TensorKind::J_tilde: return {-derivative(b), -derivative(a)};
    case TensorKind::J_mu:
      return {-0.5 * fmu_apply(derivative(a), t.params), 0.5 * fmu_apply(derivative(b), t.params)};
    case TensorKind::J_simp: return {-0.5 * derivative(a), 0.5 * derivative(b)};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown tensor");
}

ModelState apply_tensor(const PoissonTensor& t, const ModelState& co, Chart result_chart) {
  FieldPair out = apply_tensor(t, FieldPair{co.first, co.second});
  return ModelState(result_chart, out.first, out.second);
}

double lie_bracket(const Functional& f, const Functional& g, const ModelState& state,
                   const PoissonTensor& tensor) {
  const ModelState gf = gradient(f, state);
  const ModelState gg = gradient(g, state);
  const FieldPair jg = apply_tensor(tensor, FieldPair{gg.first, gg.second});
  return inner(gf.first, jg.first) + inner(gf.second, jg.second);
}

HomologicalResidual homological_residual(const Field& r, const Field& s, const Params& p) {
  require_mean_zero(r, "homological residual r");
  require_mean_zero(s, "homological residual s");
  const ModelState state(Chart::Diagonal, r, s);
  const Functional l{FunctionalKind::L_quad, p};
  const Functional g{FunctionalKind::G_aux, p};
  const double simp = lie_bracket(l, g, state, PoissonTensor{TensorKind::J_simp, p});
  const double full = lie_bracket(l, g, state, PoissonTensor{TensorKind::J_mu, p});
  return {std::abs(simp + w_coupling(r, s)), std::abs(full - simp)};
}

double normal_form_defect(const Field& r, const Field& s, const Params& p) {
  const FieldPair b = t_b(r, s, p);
  const double bw = eval(Functional{FunctionalKind::H_BW, p}, ModelState(Chart::Diagonal, b.first, b.second));
  const double wh = eval(Functional{FunctionalKind::H_Wh, p}, ModelState(Chart::Diagonal, r, s));
  return std::abs(bw - wh);
}

double structure_defect(const Field& r, const Field& s, const FieldPair& u, const Params& p) {
  const PoissonTensor j{TensorKind::J_mu, p};
  const FieldPair adj = t_b_jacobian_adjoint(r, s, u, p);
  const FieldPair mid = apply_tensor(j, adj);
  const FieldPair lhs = t_b_jacobian(r, s, mid, p);
  const FieldPair ref = apply_tensor(j, u);
  // Constants are Casimirs of J_mu; the mean of the quadratic terms of t_b
  // only moves the constant mode, so it is left out of the comparison.
  const double a = norm_l2(project_mean_zero(lhs.first - ref.first));
  const double b = norm_l2(project_mean_zero(lhs.second - ref.second));
  return std::sqrt(a * a + b * b);
}

}  // namespace whitham
