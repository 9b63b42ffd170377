#include "zeno/spins.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "zeno/specfun.hpp"

namespace zeno {

namespace {

using Matrix = Eigen::MatrixXcd;
using std::complex;

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

Matrix pauli_half(char axis) {
    Matrix op(2, 2);
    switch (axis) {
        case 'x':
            op << 0.0, 0.5, 0.5, 0.0;
            break;
        case 'y':
            op << 0.0, complex<double>(0.0, -0.5), complex<double>(0.0, 0.5),
                0.0;
            break;
        case 'z':
            op << 0.5, 0.0, 0.0, -0.5;
            break;
        default:
            throw std::invalid_argument("spin_half_op: axis must be x, y or z");
    }
    return op;
}

void check_mu0(double mu0) {
    if (!(std::abs(mu0) <= 1.0 + 1e-12)) {
        throw std::invalid_argument("|mu0| must not exceed 1");
    }
}

}  // namespace

PrecessionFrequency ac_field_effective_omega(double gamma, double b0,
                                             double b1, double omega_carrier) {
    if (gamma * b1 == 0.0) {
        throw std::invalid_argument(
            "ac_field_effective_omega: the drive gamma * b1 must be nonzero");
    }
    return PrecessionFrequency(gamma * b1, gamma * b0 - omega_carrier);
}

double dipolar_coupling(const std::array<double, 3>& r_vec, double gamma_a,
                        double gamma_b, double prefactor) {
    double r2 = r_vec[0] * r_vec[0] + r_vec[1] * r_vec[1] + r_vec[2] * r_vec[2];
    if (r2 == 0.0) {
        throw std::domain_error("dipolar_coupling: zero separation");
    }
    double r = std::sqrt(r2);
    double cos2 = r_vec[2] * r_vec[2] / r2;
    return -0.5 * prefactor * gamma_a * gamma_b / (r2 * r) * (3.0 * cos2 - 1.0);
}

double projective_bound_2e(const PrecessionFrequency& omega) {
    double w2 = omega.wx * omega.wx + omega.wz * omega.wz;
    double awx = std::abs(omega.wx);
    return 2.0 * std::numbers::e * w2 / (awx * awx * awx);
}

PrecessionFrequency two_spin_effective_omega(const TwoSpinSpec& spec) {
    if (spec.b == 0.0) {
        throw std::invalid_argument(
            "two_spin_effective_omega: coupling b must be nonzero");
    }
    return PrecessionFrequency(-spec.b, spec.delta);
}

InitialPolarization two_spin_initial_mu0(double omega0_i, double kT) {
    if (!(kT > 0.0)) {
        throw std::invalid_argument("two_spin_initial_mu0: kT must be > 0");
    }
    double x = omega0_i / (2.0 * kT);
    return {std::exp(-x) / std::cosh(x) - 1.0, -x};
}

double two_spin_muz(const TwoSpinSpec& spec, double mu0, double t) {
    check_mu0(mu0);
    double w2 = spec.b * spec.b + spec.delta * spec.delta;
    if (w2 == 0.0) {
        throw std::invalid_argument(
            "two_spin_muz: b and delta must not both vanish");
    }
    return 0.5 * mu0 *
           (spec.delta * spec.delta +
            spec.b * spec.b * std::cos(std::sqrt(w2) * t)) /
           w2;
}

double two_spin_projective_bound(const TwoSpinSpec& spec) {
    return projective_bound_2e(two_spin_effective_omega(spec));
}

Eigen::MatrixXcd two_spin_hamiltonian(const TwoSpinSpec& spec) {
    Matrix sz = spin_half_op(2, 0, 'z');
    Matrix sx = spin_half_op(2, 0, 'x');
    Matrix sy = spin_half_op(2, 0, 'y');
    Matrix iz = spin_half_op(2, 1, 'z');
    Matrix ix = spin_half_op(2, 1, 'x');
    Matrix iy = spin_half_op(2, 1, 'y');
    return -0.5 * spec.delta * (sz - iz) + spec.b * (sx * ix + sy * iy);
}

Eigen::MatrixXcd two_spin_initial_rho(double mu0) {
    check_mu0(mu0);
    return 0.25 * (Matrix::Identity(4, 4) +
                   2.0 * mu0 * spin_half_op(2, 1, 'z'));
}

double two_spin_muz_from_rho(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw std::invalid_argument("two_spin_muz_from_rho: expected 4x4");
    }
    return (rho(2, 2) - rho(1, 1)).real();
}

Eigen::Matrix3d three_spin_block_hamiltonian(const ThreeSpinSpec& spec) {
    double off_sym = std::numbers::sqrt2 / 8.0 * (spec.b1 + spec.b2);
    double off_mirror = std::numbers::sqrt2 / 8.0 * (spec.b2 - spec.b1);
    Eigen::Matrix3d h;
    h << 0.25 * (spec.sigma - spec.delta) + 0.5 * spec.d, off_sym, 0.0,
        off_sym, 0.25 * spec.sigma + 0.75 * spec.delta - 0.25 * spec.d,
        off_mirror, 0.0, off_mirror, 0.25 * (spec.sigma - spec.delta);
    return h;
}

PrecessionFrequency three_spin_effective_omega(const ThreeSpinSpec& spec) {
    double scale = std::max(std::abs(spec.b1), std::abs(spec.b2));
    if (std::abs(spec.b1 - spec.b2) <= 1e-12 * scale) {
        double b = 0.5 * (spec.b1 + spec.b2);
        if (b == 0.0) {
            throw std::invalid_argument(
                "three_spin_effective_omega: couplings must be nonzero");
        }
        return PrecessionFrequency(-std::numbers::sqrt2 / 2.0 * b,
                                   0.75 * spec.d - spec.delta);
    }
    if (std::abs(spec.b1 + spec.b2) <= 1e-12 * scale) {
        return PrecessionFrequency(-std::numbers::sqrt2 / 2.0 * spec.b1,
                                   spec.delta - 0.25 * spec.d);
    }
    throw std::invalid_argument(
        "three_spin_effective_omega: defined only for symmetric (b1 == b2) or "
        "mirror (b1 == -b2) couplings");
}

double three_spin_projective_bound(const ThreeSpinSpec& spec) {
    return projective_bound_2e(three_spin_effective_omega(spec));
}

Eigen::MatrixXcd three_spin_hamiltonian(const ThreeSpinSpec& spec) {
    Matrix i1x = spin_half_op(3, 0, 'x'), i1y = spin_half_op(3, 0, 'y'),
           i1z = spin_half_op(3, 0, 'z');
    Matrix i2x = spin_half_op(3, 1, 'x'), i2y = spin_half_op(3, 1, 'y'),
           i2z = spin_half_op(3, 1, 'z');
    Matrix sx = spin_half_op(3, 2, 'x'), sy = spin_half_op(3, 2, 'y'),
           sz = spin_half_op(3, 2, 'z');
    return -0.5 * spec.delta * (sz - i1z - i2z) +
           0.5 * spec.sigma * (sz + i1z + i2z) +
           0.5 * spec.b1 * (sx * i1x + sy * i1y) +
           0.5 * spec.b2 * (sx * i2x + sy * i2y) +
           0.5 * spec.d * (i1x * i2x + i1y * i2y - 2.0 * i1z * i2z);
}

Eigen::MatrixXcd three_spin_block_basis() {
    // Site order (partner1, partner2, probe); bit 0 is up. Index of
    // |b1 b2 bs> is 4 b1 + 2 b2 + bs.
    Matrix basis = Matrix::Zero(8, 3);
    double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    basis(2, 0) = inv_sqrt2;  // |u d u>
    basis(4, 0) = inv_sqrt2;  // |d u u>
    basis(1, 1) = 1.0;        // |u u d>
    basis(2, 2) = inv_sqrt2;
    basis(4, 2) = -inv_sqrt2;
    return basis;
}

void ManySpinSpec::validate() const {
    int n = n_spins();
    if (n < 2 || n > 4) {
        throw std::invalid_argument(
            "ManySpinSpec: between 2 and 4 spins supported (the oracle "
            "propagates the full state)");
    }
    if (couplings.rows() != n || couplings.cols() != n) {
        throw std::invalid_argument(
            "ManySpinSpec: couplings must be n_spins x n_spins");
    }
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(offsets[static_cast<size_t>(i)])) {
            throw std::invalid_argument("ManySpinSpec: offsets must be finite");
        }
        if (couplings(i, i) != 0.0) {
            throw std::invalid_argument(
                "ManySpinSpec: couplings must have a zero diagonal");
        }
        for (int j = i + 1; j < n; ++j) {
            if (couplings(i, j) != couplings(j, i)) {
                throw std::invalid_argument(
                    "ManySpinSpec: couplings must be symmetric");
            }
        }
    }
}

ShortTimeIz many_spin_short_time_Iz(const ManySpinSpec& spec, int i,
                                    double t) {
    spec.validate();
    int n = spec.n_spins();
    if (i < 0 || i >= n) {
        throw std::invalid_argument("many_spin_short_time_Iz: bad spin index");
    }
    if (!(t >= 0.0)) {
        throw std::invalid_argument("many_spin_short_time_Iz: t must be >= 0");
    }
    ShortTimeIz out;
    out.transfer.assign(static_cast<size_t>(n), 0.0);
    double drained = 0.0;
    double validity = 0.0;
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        double bij = spec.couplings(i, j);
        double tr = bij * bij * t * t / 4.0;
        out.transfer[static_cast<size_t>(j)] = tr;
        drained += tr;
        double detuning = spec.offsets[static_cast<size_t>(i)] -
                          spec.offsets[static_cast<size_t>(j)];
        validity = std::max(validity, std::abs(bij) * t);
        validity = std::max(validity, std::abs(detuning) * t);
    }
    out.self_coefficient = 1.0 - drained;
    out.validity = validity;
    return out;
}

double many_spin_effective_coupling(const ManySpinSpec& spec, int i) {
    spec.validate();
    if (i < 0 || i >= spec.n_spins()) {
        throw std::invalid_argument(
            "many_spin_effective_coupling: bad spin index");
    }
    return std::sqrt(spec.couplings.row(i).squaredNorm() / spec.n_spins());
}

ZenoOptimum many_spin_zeno_optimum(double b_eff, double mu0, double tau) {
    if (b_eff == 0.0) {
        throw std::invalid_argument(
            "many_spin_zeno_optimum: b_eff must be nonzero");
    }
    if (!(tau > 0.0)) {
        throw std::invalid_argument("many_spin_zeno_optimum: tau must be > 0");
    }
    double b2 = b_eff * b_eff;
    return {8.0 * xi(std::abs(mu0)) / (b2 * tau),
            32.0 * phi(std::abs(mu0)) / b2};
}

Eigen::MatrixXcd many_spin_hamiltonian(const ManySpinSpec& spec) {
    spec.validate();
    int n = spec.n_spins();
    Eigen::Index dim = Eigen::Index{1} << n;
    Matrix h = Matrix::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        h += spec.offsets[static_cast<size_t>(i)] * spin_half_op(n, i, 'z');
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double bij = spec.couplings(i, j);
            if (bij == 0.0) continue;
            h += bij * (spin_half_op(n, i, 'x') * spin_half_op(n, j, 'x') +
                        spin_half_op(n, i, 'y') * spin_half_op(n, j, 'y') +
                        spin_half_op(n, i, 'z') * spin_half_op(n, j, 'z'));
        }
    }
    return h;
}

Eigen::MatrixXcd spin_half_op(int n_sites, int site, char axis) {
    if (n_sites < 1 || n_sites > 10) {
        throw std::invalid_argument("spin_half_op: unsupported site count");
    }
    if (site < 0 || site >= n_sites) {
        throw std::invalid_argument("spin_half_op: site out of range");
    }
    Matrix op = Matrix::Identity(1, 1);
    Matrix id2 = Matrix::Identity(2, 2);
    for (int k = 0; k < n_sites; ++k) {
        op = kron(op, k == site ? pauli_half(axis) : id2);
    }
    return op;
}

std::vector<int> many_spin_z_labels(int n_sites, int site) {
    if (n_sites < 1 || site < 0 || site >= n_sites) {
        throw std::invalid_argument("many_spin_z_labels: site out of range");
    }
    std::vector<int> labels(static_cast<size_t>(1) << n_sites);
    for (size_t k = 0; k < labels.size(); ++k) {
        labels[k] = ((k >> (n_sites - 1 - site)) & 1U) ? -1 : 1;
    }
    return labels;
}

}  // namespace zeno
