// Changes of variables between the surface, velocity and diagonal charts.
#pragma once

#include <utility>

#include "whitham/spectral.hpp"
#include "whitham/state.hpp"

namespace whitham {

using FieldPair = std::pair<Field, Field>;

// u+- = +-zeta/(1 + sqrt(h)) + F^{-1}v/2, h = 1 + eps zeta.
FieldPair riemann_map(const Field& zeta, const Field& v, const Params& p);

// zeta_c = (u+ - u-) + (eps/4)(u+ - u-)^2, psi_c = d^{-1} F^{-1}(u+ + u-).
FieldPair reconstruct_c(const Field& u_plus, const Field& u_minus, const Params& p,
                        MeanPolicy policy = MeanPolicy::Strict);

// r, s = (zeta +- F d/dx psi)/2.
FieldPair diag_forward(const Field& zeta, const Field& psi, const Params& p);

// (r + s, F^{-1}(r - s)); the second slot is d/dx psi.
FieldPair t_d(const Field& r, const Field& s, const Params& p);

// Inverse of t_d: ((zeta + F v)/2, (zeta - F v)/2).
FieldPair t_d_inv(const Field& zeta, const Field& v, const Params& p);

// Birkhoff map; first slot r + (eps/4) r_x d^{-1}s + (eps/4) r s + (eps/8) s^2,
// second slot the mirror image with r and s exchanged.
FieldPair t_b(const Field& r, const Field& s, const Params& p,
              MeanPolicy policy = MeanPolicy::Strict);

// Approximate inverse Id - eps T~_B of t_b.
FieldPair t_b_inv(const Field& eta, const Field& w, const Params& p,
                  MeanPolicy policy = MeanPolicy::Strict);

// (zeta, d^{-1} v) and its inverse (zeta, d/dx psi).
FieldPair t_i(const Field& zeta, const Field& v, MeanPolicy policy = MeanPolicy::Strict);
FieldPair t_i_inv(const Field& zeta, const Field& psi);

struct PipelineOutput {
  Field zeta;
  Field psi;
  Field v;              // d/dx psi before integration
  double dropped_mean;  // mean of v removed by a projecting d^{-1}
};

// T_I o T_D o T_B.
PipelineOutput pipeline_wh_full(const Field& r, const Field& s, const Params& p,
                                MeanPolicy policy = MeanPolicy::Strict);
FieldPair pipeline_wh(const Field& r, const Field& s, const Params& p,
                      MeanPolicy policy = MeanPolicy::Strict);

// Initial data for the decoupled pair: t_b_inv o t_d_inv o t_i_inv.
FieldPair pipeline_initial(const Field& zeta, const Field& psi, const Params& p,
                           MeanPolicy policy = MeanPolicy::Strict);

// Jacobian of t_b at (r, s) applied to (v1, v2), and its L2 adjoint.
FieldPair t_b_jacobian(const Field& r, const Field& s, const FieldPair& dir, const Params& p);
FieldPair t_b_jacobian_adjoint(const Field& r, const Field& s, const FieldPair& co,
                               const Params& p);

}  // namespace whitham
