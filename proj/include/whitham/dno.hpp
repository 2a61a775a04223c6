// Truncated operator expansion of the scaled Dirichlet-Neumann operator
// (1/mu) G[eps zeta] psi over a flat bottom at unit depth.
#pragma once

#include "whitham/spectral.hpp"

namespace whitham {

struct DnoConfig {
  int truncation_order = 2;  // number of terms beyond the flat one, 0..3
  bool dealias = true;

  void validate() const;
};

// Throws CavitationViolated unless 1 + eps zeta >= h_min at every node.
void require_non_cavitation(const Field& zeta, const Params& p);

Field dno_apply(const Field& zeta, const Field& psi, const Params& p, const DnoConfig& cfg = {});

// -d/dx (h F^2 d/dx psi) with h = 1 + eps zeta.
Field dno_shallow(const Field& zeta, const Field& psi, const Params& p);

}  // namespace whitham
