#include "whitham/transforms.hpp"

#include <cmath>
#include <string>

#include "whitham/dno.hpp"

namespace whitham {
namespace {

const Symbol kFmu(SymbolKind::Fmu);
const Symbol kFmuInv(SymbolKind::FmuInv);

Field fmu_apply(const Field& f, const Params& p) { return apply_multiplier(kFmu, f, p); }
Field fmu_inv(const Field& f, const Params& p) { return apply_multiplier(kFmuInv, f, p); }

Field mul(const Field& a, const Field& b) { return pointwise_product(a, b, true); }

}  // namespace

FieldPair riemann_map(const Field& zeta, const Field& v, const Params& p) {
  check_same_grid(zeta, v);
  require_non_cavitation(zeta, p);
  const double eps = p.eps;
  const Field elevation = pointwise(zeta, [eps](double z) {
    return z / (1.0 + std::sqrt(1.0 + eps * z));
  });
  const Field half_velocity = 0.5 * fmu_inv(v, p);
  return {elevation + half_velocity, half_velocity - elevation};
}

FieldPair reconstruct_c(const Field& u_plus, const Field& u_minus, const Params& p,
                        MeanPolicy policy) {
  check_same_grid(u_plus, u_minus);
  const Field diff = u_plus - u_minus;
  const double root = 1.0 + 0.5 * p.eps * diff.values().minCoeff();
  if (!(root >= std::sqrt(p.h_min))) {
    throw Error(ErrorCode::CavitationViolated,
                "reconstructed depth root " + std::to_string(root) + " below sqrt(h_min)");
  }
  const Field zeta = diff + (0.25 * p.eps) * (diff * diff);
  const Field psi = anti_derivative(fmu_inv(u_plus + u_minus, p), policy);
  return {zeta, psi};
}

FieldPair diag_forward(const Field& zeta, const Field& psi, const Params& p) {
  check_same_grid(zeta, psi);
  const Field flux = fmu_apply(derivative(psi), p);
  return {0.5 * (zeta + flux), 0.5 * (zeta - flux)};
}

FieldPair t_d(const Field& r, const Field& s, const Params& p) {
  check_same_grid(r, s);
  return {r + s, fmu_inv(r - s, p)};
}

FieldPair t_d_inv(const Field& zeta, const Field& v, const Params& p) {
  check_same_grid(zeta, v);
  const Field fv = fmu_apply(v, p);
  return {0.5 * (zeta + fv), 0.5 * (zeta - fv)};
}

FieldPair t_b(const Field& r, const Field& s, const Params& p, MeanPolicy policy) {
  check_same_grid(r, s);
  if (p.eps == 0) return {r, s};
  const double e = p.eps;
  const Field rs = mul(r, s);
  const Field first = r + (e / 4) * (mul(derivative(r), anti_derivative(s, policy)) + rs) +
                      (e / 8) * mul(s, s);
  const Field second = s + (e / 4) * (mul(derivative(s), anti_derivative(r, policy)) + rs) +
                       (e / 8) * mul(r, r);
  return {first, second};
}

FieldPair t_b_inv(const Field& eta, const Field& w, const Params& p, MeanPolicy policy) {
  check_same_grid(eta, w);
  if (p.eps == 0) return {eta, w};
  // t_b = Id + eps T~, so Id - eps T~ = 2 Id - t_b.
  const FieldPair forward = t_b(eta, w, p, policy);
  return {2.0 * eta - forward.first, 2.0 * w - forward.second};
}

FieldPair t_i(const Field& zeta, const Field& v, MeanPolicy policy) {
  check_same_grid(zeta, v);
  return {zeta, anti_derivative(v, policy)};
}

FieldPair t_i_inv(const Field& zeta, const Field& psi) {
  check_same_grid(zeta, psi);
  return {zeta, derivative(psi)};
}

PipelineOutput pipeline_wh_full(const Field& r, const Field& s, const Params& p,
                                MeanPolicy policy) {
  const FieldPair b = t_b(r, s, p, policy);
  const FieldPair d = t_d(b.first, b.second, p);
  const FieldPair i = t_i(d.first, d.second, policy);
  return {i.first, i.second, d.second, d.second.mean()};
}

FieldPair pipeline_wh(const Field& r, const Field& s, const Params& p, MeanPolicy policy) {
  PipelineOutput out = pipeline_wh_full(r, s, p, policy);
  return {out.zeta, out.psi};
}

FieldPair pipeline_initial(const Field& zeta, const Field& psi, const Params& p,
                           MeanPolicy policy) {
  const FieldPair i = t_i_inv(zeta, psi);
  const FieldPair d = t_d_inv(i.first, i.second, p);
  return t_b_inv(d.first, d.second, p, policy);
}

FieldPair t_b_jacobian(const Field& r, const Field& s, const FieldPair& dir, const Params& p) {
  check_same_grid(r, s);
  const Field& v1 = dir.first;
  const Field& v2 = dir.second;
  if (p.eps == 0) return dir;
  const double q = p.eps / 4;
  const Field sum = r + s;
  const Field inv_s = anti_derivative(s, MeanPolicy::Project);
  const Field inv_r = anti_derivative(r, MeanPolicy::Project);
  const Field first = v1 + q * (mul(s, v1) + mul(inv_s, derivative(v1)) +
                                mul(derivative(r), anti_derivative(v2, MeanPolicy::Project)) + mul(sum, v2));
  const Field second = v2 + q * (mul(derivative(s), anti_derivative(v1, MeanPolicy::Project)) + mul(sum, v1) +
                                 mul(r, v2) + mul(inv_r, derivative(v2)));
  return {first, second};
}

FieldPair t_b_jacobian_adjoint(const Field& r, const Field& s, const FieldPair& co,
                               const Params& p) {
  check_same_grid(r, s);
  const Field& u1 = co.first;
  const Field& u2 = co.second;
  if (p.eps == 0) return co;
  const double q = p.eps / 4;
  const Field sum = r + s;
  const Field inv_s = anti_derivative(s, MeanPolicy::Project);
  const Field inv_r = anti_derivative(r, MeanPolicy::Project);
  // d^{-1} is skew, so the adjoint of f d^{-1}(.) is -d^{-1}(f .); it acts on
  // whatever mean the product has, hence the projecting policy.
  const Field first =
      u1 + q * (mul(s, u1) - derivative(mul(inv_s, u1)) + mul(sum, u2) -
                anti_derivative(mul(derivative(s), u2), MeanPolicy::Project));
  const Field second =
      u2 + q * (mul(sum, u1) - anti_derivative(mul(derivative(r), u1), MeanPolicy::Project) +
                mul(r, u2) - derivative(mul(inv_r, u2)));
  return {first, second};
}

}  // namespace whitham
