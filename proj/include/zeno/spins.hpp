#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "zeno/bloch.hpp"

// Mappings from concrete spin systems onto the two-level probe model:
// AC magnetometry in the rotating frame, a coupled spin pair, the
// symmetric three-spin cluster, and short-time diagnostics for larger
// dipolar networks. Full Hamiltonians for the oracle checks live here too.

namespace zeno {

// Rotating-frame precession of a spin with gyromagnetic ratio gamma in a
// static field b0, driven field amplitude b1 and carrier omega_carrier:
// (gamma b1, 0, gamma b0 - omega_carrier).
PrecessionFrequency ac_field_effective_omega(double gamma, double b0,
                                             double b1, double omega_carrier);

// Secular dipolar coupling between spins separated by r_vec (z is the
// quantization axis): -(prefactor gamma_a gamma_b / 2 r^3)(3 cos^2 th - 1).
// prefactor absorbs the physical constants; the default 1 keeps test
// geometry dimensionless.
double dipolar_coupling(const std::array<double, 3>& r_vec, double gamma_a,
                        double gamma_b, double prefactor = 1.0);

// Time horizon 2 e (wx^2 + wz^2) / |wx|^3 below which the monitored
// protocol wins for a weakly polarized probe. Every spin mapping reuses it
// with its own effective precession vector.
double projective_bound_2e(const PrecessionFrequency& omega);

// ---- spin pair -----------------------------------------------------------

// Flip-flop coupling b between the probe and its partner, offset delta
// between their splittings.
struct TwoSpinSpec {
    double b = 0.0;
    double delta = 0.0;
};

PrecessionFrequency two_spin_effective_omega(const TwoSpinSpec& spec);

struct InitialPolarization {
    double exact;             // exp(-x)/cosh(x) - 1 with x = omega0_i / 2 kT
    double high_temperature;  // leading order -x
};

// Thermal polarization of the partner spin with splitting omega0_i at
// temperature kT (same units, kT > 0).
InitialPolarization two_spin_initial_mu0(double omega0_i, double kT);

// Zero-quantum polarization of the pair:
// mu0 (delta^2 + b^2 cos(sqrt(b^2 + delta^2) t)) / (2 (b^2 + delta^2)).
double two_spin_muz(const TwoSpinSpec& spec, double mu0, double t);

double two_spin_projective_bound(const TwoSpinSpec& spec);

// Full 4-dimensional pieces, basis |s i> with site order (probe, partner):
// H = -delta/2 (S_z - I_z) + b (S_x I_x + S_y I_y),
// rho0 = (I + 2 mu0 I_z) / 4, and the zero-quantum polarization readout
// rho(2,2) - rho(1,1).
Eigen::MatrixXcd two_spin_hamiltonian(const TwoSpinSpec& spec);
Eigen::MatrixXcd two_spin_initial_rho(double mu0);
double two_spin_muz_from_rho(const Eigen::MatrixXcd& rho);

// ---- three-spin cluster ---------------------------------------------------

// Probe S coupled to two partner spins with flip-flop strengths b1, b2,
// partner-partner secular dipolar coupling d, probe-partner splitting
// difference delta, and total splitting sum sigma (a uniform energy shift
// that drops out of the reduced dynamics).
struct ThreeSpinSpec {
    double b1 = 0.0;
    double b2 = 0.0;
    double d = 0.0;
    double delta = 0.0;
    double sigma = 0.0;
};

// The single-flip sector splits off a 3x3 block in the basis
//   { (|ud> + |du>)/sqrt2 x |+>, |uu> x |->, (|ud> - |du>)/sqrt2 x |+> }
// (partner pair state x probe state). Returned in that order.
Eigen::Matrix3d three_spin_block_hamiltonian(const ThreeSpinSpec& spec);

// Effective two-level precession of the block dynamics. Defined for the
// symmetric (b1 == b2) and mirror (b1 == -b2) couplings, where one
// off-diagonal of the block vanishes; throws std::invalid_argument
// otherwise.
PrecessionFrequency three_spin_effective_omega(const ThreeSpinSpec& spec);

double three_spin_projective_bound(const ThreeSpinSpec& spec);

// Full 8-dimensional pieces, site order (partner1, partner2, probe).
Eigen::MatrixXcd three_spin_hamiltonian(const ThreeSpinSpec& spec);
// Columns: the three block basis vectors in the order above.
Eigen::MatrixXcd three_spin_block_basis();

// ---- many-spin network ----------------------------------------------------

// Homonuclear network: offsets omega_i^z plus isotropic couplings
// b_ij I_i . I_j. couplings must be symmetric with zero diagonal, and the
// spin count is capped at 4 so states stay within the oracle's reach.
struct ManySpinSpec {
    std::vector<double> offsets;
    Eigen::MatrixXd couplings;

    int n_spins() const { return static_cast<int>(offsets.size()); }
    void validate() const;
};

struct ShortTimeIz {
    double self_coefficient;       // 1 - sum_j b_ij^2 t^2 / 4
    std::vector<double> transfer;  // b_ij^2 t^2 / 4, entry i is 0
    double validity;               // max_j of max(|b_ij| t, |w_i - w_j| t)
};

// Leading-order decomposition of <I_i^z(t)> over the initial single-spin
// polarizations. The validity figure is returned for the caller to judge,
// not enforced: the expansion degrades as it approaches 1.
ShortTimeIz many_spin_short_time_Iz(const ManySpinSpec& spec, int i, double t);

// Root-mean-square coupling sqrt(sum_j b_ij^2 / n) of spin i.
double many_spin_effective_coupling(const ManySpinSpec& spec, int i);

struct ZenoOptimum {
    double t_max;
    double qfi_max;
};

// Zeno-regime optimum (8 xi / (b_eff^2 tau), 32 phi / b_eff^2) quoted for
// the network's effective coupling. For an isolated pair the directly
// maximized information peaks at a quarter of this t_max and a sixteenth of
// this qfi_max; the validation suite pins those factors.
ZenoOptimum many_spin_zeno_optimum(double b_eff, double mu0, double tau);

Eigen::MatrixXcd many_spin_hamiltonian(const ManySpinSpec& spec);

// Spin-1/2 operator (pauli/2) for the given axis 'x', 'y' or 'z' at the
// given site, site 0 being the leftmost kron factor.
Eigen::MatrixXcd spin_half_op(int n_sites, int site, char axis);

// z sector labels (+1 up, -1 down) of the computational basis for one site.
std::vector<int> many_spin_z_labels(int n_sites, int site);

}  // namespace zeno
