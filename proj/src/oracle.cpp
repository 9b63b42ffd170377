#include "zeno/oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace zeno::oracle {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

void check_density_like(const Matrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    }
    if (m.rows() < 1 || m.rows() > 16) {
        throw std::invalid_argument(std::string(who) +
                                    ": dimension must be between 1 and 16");
    }
}

void check_hermitian(const Matrix& m, const char* who) {
    double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument(std::string(who) +
                                    ": matrix is not Hermitian");
    }
}

}  // namespace

Matrix propagate_unitary(const Matrix& h, const Matrix& rho, double t) {
    check_density_like(h, "propagate_unitary");
    check_hermitian(h, "propagate_unitary");
    if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
        throw std::invalid_argument(
            "propagate_unitary: state and Hamiltonian dimensions differ");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXcd phases =
        (-kI * t * es.eigenvalues().array().cast<complex<double>>())
            .exp()
            .matrix();
    Matrix u = es.eigenvectors() * phases.asDiagonal() *
               es.eigenvectors().adjoint();
    return u * rho * u.adjoint();
}

Matrix dephase(const Matrix& rho, const std::vector<int>& sector_labels) {
    check_density_like(rho, "dephase");
    if (static_cast<Eigen::Index>(sector_labels.size()) != rho.rows()) {
        throw std::invalid_argument(
            "dephase: one sector label per basis state required");
    }
    Matrix out = rho;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            if (sector_labels[static_cast<size_t>(i)] !=
                sector_labels[static_cast<size_t>(j)]) {
                out(i, j) = 0.0;
            }
        }
    }
    return out;
}

double qfi_eigen(const Matrix& rho, const Matrix& drho,
                 EigenQfiDiagnostics* diag) {
    check_density_like(rho, "qfi_eigen");
    check_hermitian(rho, "qfi_eigen");
    if (drho.rows() != rho.rows() || drho.cols() != rho.cols()) {
        throw std::invalid_argument(
            "qfi_eigen: rho and drho dimensions differ");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const auto& lam = es.eigenvalues();
    Matrix d = es.eigenvectors().adjoint() * drho * es.eigenvectors();

    double f = 0.0;
    for (Eigen::Index a = 0; a < rho.rows(); ++a) {
        for (Eigen::Index b = 0; b < rho.rows(); ++b) {
            double den = lam(a) + lam(b);
            if (den > 1e-12) {
                f += 2.0 * std::norm(d(a, b)) / den;
            }
            if (diag != nullptr && a < b && std::abs(lam(a) - lam(b)) < 1e-10 &&
                std::abs(d(a, b)) > 1e-12) {
                diag->degenerate_pairs += 1;
            }
        }
    }
    return f;
}

Matrix finite_diff_drho(const std::function<Matrix(double)>& rho_of, double x,
                        double h) {
    if (h == 0.0) {
        h = (x == 0.0) ? 1e-6 : 1e-6 * std::abs(x);
    }
    return (rho_of(x + h) - rho_of(x - h)) / (2.0 * h);
}

Matrix qubit_hamiltonian(const PrecessionFrequency& omega) {
    Matrix h(2, 2);
    h << 0.5 * omega.wz, 0.5 * omega.wx, 0.5 * omega.wx, -0.5 * omega.wz;
    return h;
}

Matrix qubit_rho(const PolarizationVector& mu) {
    Matrix rho(2, 2);
    rho << 0.5 * (1.0 + mu.mz), 0.5 * complex<double>(mu.mx, -mu.my),
        0.5 * complex<double>(mu.mx, mu.my), 0.5 * (1.0 - mu.mz);
    return rho;
}

Matrix qubit_rho_z(double mu0) {
    return qubit_rho(PolarizationVector(0.0, 0.0, mu0));
}

std::vector<int> qubit_z_labels() { return {1, -1}; }

PolarizationVector qubit_mu(const Matrix& rho) {
    check_density_like(rho, "qubit_mu");
    if (rho.rows() != 2) {
        throw std::invalid_argument("qubit_mu: expected a 2x2 state");
    }
    double mx = 2.0 * rho(1, 0).real();
    double my = 2.0 * rho(1, 0).imag();
    double mz = (rho(0, 0) - rho(1, 1)).real();
    return PolarizationVector(mx, my, mz);
}

Matrix projected_qubit_rho(const PrecessionFrequency& omega, double mu0,
                           double tau, long long n, double dt) {
    if (!(tau > 0.0) || n < 0 || dt < 0.0) {
        throw std::invalid_argument(
            "projected_qubit_rho: need tau > 0, n >= 0, dt >= 0");
    }
    Matrix h = qubit_hamiltonian(omega);
    Matrix rho = qubit_rho_z(mu0);
    std::vector<int> labels = qubit_z_labels();
    for (long long k = 0; k < n; ++k) {
        rho = dephase(propagate_unitary(h, rho, tau), labels);
    }
    if (dt > 0.0) {
        rho = propagate_unitary(h, rho, dt);
    }
    return rho;
}

double qfi_coherent_oracle(const PrecessionFrequency& omega, double mu0,
                           double t) {
    auto rho_of = [&](double wx) {
        return propagate_unitary(qubit_hamiltonian(PrecessionFrequency(wx, omega.wz)),
                                 qubit_rho_z(mu0), t);
    };
    Matrix rho = rho_of(omega.wx);
    Matrix drho = finite_diff_drho(rho_of, omega.wx);
    return qfi_eigen(rho, drho);
}

double qfi_projected_oracle(const PrecessionFrequency& omega, double mu0,
                            double tau, long long n, double dt) {
    auto rho_of = [&](double wx) {
        return projected_qubit_rho(PrecessionFrequency(wx, omega.wz), mu0, tau,
                                   n, dt);
    };
    Matrix rho = rho_of(omega.wx);
    Matrix drho = finite_diff_drho(rho_of, omega.wx);
    return qfi_eigen(rho, drho);
}

}  // namespace zeno::oracle
