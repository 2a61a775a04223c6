// Hamiltonian functionals, their gradients, Poisson tensors and the
// normal-form diagnostics built on them.
#pragma once

#include <string>

#include "whitham/dno.hpp"
#include "whitham/state.hpp"
#include "whitham/transforms.hpp"

namespace whitham {

enum class FunctionalKind { H_WW, H0_eps_H1, H_BW, H_Wh, L_quad, Z_cubic, W_coupling, G_aux };

const char* to_string(FunctionalKind kind) noexcept;

struct Functional {
  FunctionalKind kind;
  Params params;
  DnoConfig dno{};  // H_WW only
};

// H_WW and H0_eps_H1 take (zeta, psi); H0_eps_H1 also accepts (zeta, v) with
// v = d/dx psi.  The remaining kinds live on the diagonal chart.
double eval(const Functional& fn, const ModelState& state);
ModelState gradient(const Functional& fn, const ModelState& state);

enum class TensorKind { J_canonical, J_tilde, J_mu, J_simp };

struct PoissonTensor {
  TensorKind kind;
  Params params;
};

FieldPair apply_tensor(const PoissonTensor& t, const FieldPair& cotangent);
ModelState apply_tensor(const PoissonTensor& t, const ModelState& cotangent, Chart result_chart);

// <grad f, T grad g>.
double lie_bracket(const Functional& f, const Functional& g, const ModelState& state,
                   const PoissonTensor& tensor);

struct HomologicalResidual {
  double residual;  // |{L, G}_simp + W|
  double mu_gap;    // |{L, G}_mu - {L, G}_simp|
};

HomologicalResidual homological_residual(const Field& r, const Field& s, const Params& p);

// |H_BW(t_b(r, s)) - H_Wh(r, s)|.
double normal_form_defect(const Field& r, const Field& s, const Params& p);

// L2 norm of (DT_B) J_mu (DT_B)^* U - J_mu U at (r, s).
double structure_defect(const Field& r, const Field& s, const FieldPair& u, const Params& p);

// The surface-potential pieces shared with the water-waves right-hand side:
// returns (dH/dzeta, dH/dpsi) for H_WW.
FieldPair water_waves_gradient(const Field& zeta, const Field& psi, const Params& p,
                               const DnoConfig& cfg);

}  // namespace whitham
