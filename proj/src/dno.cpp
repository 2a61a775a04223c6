#include "whitham/dno.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace whitham {

void DnoConfig::validate() const {
  if (truncation_order < 0 || truncation_order > 3) {
    throw Error(ErrorCode::TruncationUnsupported,
                "truncation order " + std::to_string(truncation_order) + " not in 0..3");
  }
}

void require_non_cavitation(const Field& zeta, const Params& p) {
  const double h = 1.0 + p.eps * zeta.values().minCoeff();
  if (!(h >= p.h_min)) {
    throw Error(ErrorCode::CavitationViolated,
                "minimum depth " + std::to_string(h) + " below h_min " + std::to_string(p.h_min));
  }
}

namespace {

// Symbol of E_n = mu^ceil(n/2) e_n, where e_n = |xi|^n for even n and
// |xi|^(n+1) F^2 for odd n.  e_1 is the flat operator
// |xi| tanh(sqrt(mu)|xi|)/sqrt(mu); keeping the hyperbolic factor on odd
// orders means nothing divides by mu.
ComplexArray expansion_symbol(int n, const Grid& grid, const Params& p, bool with_mu = true) {
  const auto& xi = grid.half_frequencies();
  ComplexArray out(xi.size());
  const double mu_pow = with_mu ? std::pow(p.mu, (n + 1) / 2) : 1.0;
  for (Index k = 0; k < xi.size(); ++k) {
    const double a = std::abs(xi[k]);
    double v = std::pow(a, n);
    if (n % 2 == 1) {
      const double f = fmu(xi[k], p.mu);
      v *= a * f * f;
    }
    out[k] = mu_pow * v;
  }
  return out;
}

}  // namespace

Field dno_apply(const Field& zeta, const Field& psi, const Params& p, const DnoConfig& cfg) {
  cfg.validate();
  check_same_grid(zeta, psi);
  require_non_cavitation(zeta, p);
  const int order = cfg.truncation_order;
  const Grid& grid = zeta.grid();

  std::vector<ComplexArray> sym;
  for (int n = 0; n <= order; ++n) sym.push_back(expansion_symbol(n, grid, p));
  const ComplexArray flat = expansion_symbol(1, grid, p, false);

  const Field eta = p.eps * zeta;
  // eta^n / n!
  std::vector<Field> eta_pow;
  eta_pow.push_back(Field::constant(zeta.grid_ptr(), 1.0));
  for (int n = 1; n <= order; ++n) {
    eta_pow.push_back((1.0 / n) * pointwise_product(eta_pow.back(), eta, cfg.dealias));
  }

  // a_0 = psi - mean; a_j = -sum_{n=1..j} (eta^n/n!) E_n a_{j-n}.
  std::vector<Field> a;
  a.push_back(project_mean_zero(psi));
  for (int j = 1; j <= order; ++j) {
    Field acc = Field::zeros(zeta.grid_ptr());
    for (int n = 1; n <= j; ++n) {
      acc = acc - pointwise_product(eta_pow[n], apply_multiplier<double>(sym[n], a[j - n]),
                                    cfg.dealias);
    }
    a.push_back(acc);
  }

  Field sum_a = a[0];
  for (int j = 1; j <= order; ++j) sum_a = sum_a + a[j];
  Field result = apply_multiplier<double>(flat, sum_a);

  // Flux part: -d/dx sum_{m + n <= order - 1} (eta^{n+1}/(n+1)!) d/dx E_n a_m.
  if (order > 0) {
    Field flux = Field::zeros(zeta.grid_ptr());
    for (int m = 0; m < order; ++m) {
      for (int n = 0; m + n < order; ++n) {
        const Field inner_term = derivative(apply_multiplier<double>(sym[n], a[m]));
        flux = flux + pointwise_product(eta_pow[n + 1], inner_term, cfg.dealias);
      }
    }
    result = result - derivative(flux);
  }
  return result;
}

Field dno_shallow(const Field& zeta, const Field& psi, const Params& p) {
  check_same_grid(zeta, psi);
  require_non_cavitation(zeta, p);
  const Field h = 1.0 + p.eps * zeta;
  const Field v = apply_multiplier(Symbol(SymbolKind::Fmu2), derivative(psi), p);
  return -derivative(h * v);
}

}  // namespace whitham
