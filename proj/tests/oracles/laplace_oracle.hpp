// Reference Dirichlet-Neumann values from a direct elliptic solve.
#pragma once

#include <Eigen/Dense>

namespace whitham::oracle {

// Solves mu Phi_xx + Phi_zz = 0 on -1 < z < eta(x) with Phi = psi on top and
// Phi_z = 0 at the bottom, on a periodic strip of the given length, and
// returns (1/mu)(Phi_z - mu eta_x Phi_x) on the surface.  Fourier collocation
// in x, Chebyshev in the flattened vertical coordinate (z + 1)/(1 + eta).
Eigen::VectorXd dno_laplace(const Eigen::VectorXd& eta, const Eigen::VectorXd& psi, double length,
                            double mu, int n_cheb);

}  // namespace whitham::oracle
