#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "zeno/bloch.hpp"
#include "zeno/qfi.hpp"

// Independent numerical machinery used to cross-check the closed forms:
// density-matrix propagation by eigendecomposition, projective dephasing,
// the eigenbasis QFI sum, and finite-difference parameter derivatives.
// Nothing here calls back into the closed-form QFI expressions.

namespace zeno::oracle {

using Matrix = Eigen::MatrixXcd;

struct EigenQfiDiagnostics {
    // Eigenpairs closer than 1e-10 whose connecting |drho| element exceeds
    // 1e-12. The QFI sum itself stays valid; the count flags parameter
    // points where a nondegenerate-perturbation-style derivation would not.
    int degenerate_pairs = 0;
};

// exp(-iHt) rho exp(+iHt) for Hermitian H of dimension <= 16.
Matrix propagate_unitary(const Matrix& h, const Matrix& rho, double t);

// Projective measurement of a sector observable: zeroes every matrix
// element connecting basis states with different sector labels. Idempotent.
Matrix dephase(const Matrix& rho, const std::vector<int>& sector_labels);

// QFI from the eigendecomposition of rho: sum of 2 |<a|drho|b>|^2 /
// (lambda_a + lambda_b) over pairs with lambda_a + lambda_b > 1e-12.
double qfi_eigen(const Matrix& rho, const Matrix& drho,
                 EigenQfiDiagnostics* diag = nullptr);

// Central difference of a matrix-valued map. h = 0 picks 1e-6 |x|
// (or 1e-6 when x == 0).
Matrix finite_diff_drho(const std::function<Matrix(double)>& rho_of, double x,
                        double h = 0.0);

// Two-level probe pieces. The Hamiltonian is (wx sigma_x + wz sigma_z)/2
// and states are rho = (I + mu . sigma)/2.
Matrix qubit_hamiltonian(const PrecessionFrequency& omega);
Matrix qubit_rho(const PolarizationVector& mu);
Matrix qubit_rho_z(double mu0);
std::vector<int> qubit_z_labels();
PolarizationVector qubit_mu(const Matrix& rho);

// n periods of (evolve tau, dephase in z), then a coherent tail dt,
// stepped explicitly.
Matrix projected_qubit_rho(const PrecessionFrequency& omega, double mu0,
                           double tau, long long n, double dt);

// QFI about wx from finite-differenced density matrices, coherent and
// projected protocols.
double qfi_coherent_oracle(const PrecessionFrequency& omega, double mu0,
                           double t);
double qfi_projected_oracle(const PrecessionFrequency& omega, double mu0,
                            double tau, long long n, double dt);

}  // namespace zeno::oracle
