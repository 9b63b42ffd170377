// End-to-end acceptance gate: every numbered criterion prints one line with
// its observed figure against the pinned tolerance. The process exit code is
// the number of failed criteria, so the suite integrates with ctest and with
// eyeballs equally well.

#include <sys/wait.h>
#include <unistd.h>

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zeno/bloch.hpp"
#include "zeno/oracle.hpp"
#include "zeno/qfi.hpp"
#include "zeno/specfun.hpp"
#include "zeno/spins.hpp"

using namespace zeno;

namespace {

const double kPi = 3.14159265358979323846;

PrecessionFrequency default_freq() {
    return PrecessionFrequency::from_polar(2.0 * kPi, 0.45 * kPi);
}

double rel_dev(double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

// Relative deviation with an absolute floor, for comparisons where the
// finite-difference oracle bottoms out in roundoff while the closed form
// keeps shrinking.
double rel_dev_floored(double a, double b, double floor) {
    if (std::max(std::abs(a), std::abs(b)) <= floor) return 0.0;
    return rel_dev(a, b);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct Gate {
    int failures = 0;
    int total = 0;

    void line(int idx, bool pass, const std::string& text) {
        ++total;
        if (!pass) ++failures;
        std::printf("[%s] %02d %s\n", pass ? "PASS" : "FAIL", idx, text.c_str());
        std::fflush(stdout);
    }

    void run(int idx, const std::function<std::pair<bool, std::string>()>& fn) {
        try {
            auto [pass, text] = fn();
            line(idx, pass, text);
        } catch (const std::exception& e) {
            line(idx, false, std::string("threw: ") + e.what());
        }
    }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double golden_max(const std::function<double(double)>& f, double lo,
                  double hi) {
    const double inv_phi = 0.6180339887498949;
    // Coarse scan to bracket the peak, then golden-section refinement.
    int best = 0;
    double fbest = -1.0;
    const int kScan = 400;
    for (int i = 0; i <= kScan; ++i) {
        double t = lo + (hi - lo) * i / kScan;
        double v = f(t);
        if (v > fbest) {
            fbest = v;
            best = i;
        }
    }
    double a = lo + (hi - lo) * std::max(0, best - 1) / kScan;
    double b = lo + (hi - lo) * std::min(kScan, best + 1) / kScan;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < 300 && (b - a) > 1e-13 * b; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// ---- criteria -------------------------------------------------------------

std::pair<bool, std::string> c01_eigen_equivalence() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::complex<double> im(0.0, 1.0);

    double worst = 0.0;
    const int kDraws = 10000;
    for (int i = 0; i < kDraws; ++i) {
        double mx = unit(rng), my = unit(rng), mz = unit(rng);
        double len = std::sqrt(mx * mx + my * my + mz * mz);
        double scale = 0.999 * unit(rng);
        if (len > 0.0) scale /= std::max(1.0, len);
        PolarizationVector mu(mx * scale, my * scale, mz * scale);
        Vec3 dmu{unit(rng), unit(rng), unit(rng)};

        oracle::Matrix drho(2, 2);
        drho(0, 0) = 0.5 * dmu[2];
        drho(1, 1) = -0.5 * dmu[2];
        drho(0, 1) = 0.5 * (dmu[0] - im * dmu[1]);
        drho(1, 0) = 0.5 * (dmu[0] + im * dmu[1]);

        double a = qfi_from_polarization(mu, dmu);
        double b = oracle::qfi_eigen(oracle::qubit_rho(mu), drho);
        worst = std::max(worst, rel_dev_floored(a, b, 1e-12));
    }
    double secs = seconds_since(t0);
    bool pass = worst <= 1e-9 && secs < 5.0;
    return {pass,
            fmt("bloch-vector qfi == eigenbasis qfi on %d random qubits "
                "(worst rel dev %.3g, tol 1e-9; %.2f s, limit 5 s)",
                kDraws, worst, secs)};
}

std::pair<bool, std::string> c02_coherent_closed_form() {
    std::mt19937_64 rng(1002);
    std::uniform_real_distribution<double> pick_theta(0.02, 0.49 * kPi);
    std::uniform_real_distribution<double> pick_t(0.05, 50.0);
    const double mu0 = 0.999;

    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        PrecessionFrequency f =
            PrecessionFrequency::from_polar(2.0 * kPi, pick_theta(rng));
        double t = pick_t(rng);
        worst = std::max(worst,
                         rel_dev(qfi_coherent(f, mu0, t).value,
                                 oracle::qfi_coherent_oracle(f, mu0, t)));
    }

    PrecessionFrequency f = default_freq();
    double horizon = 100.0 * f.wz / (f.wx * f.wx);
    double lt_dev = rel_dev(qfi_coherent(f, mu0, horizon).value,
                            qfi_coherent_longtime(f, mu0, horizon).value);
    bool pass = worst <= 1e-5 && lt_dev <= 0.05;
    return {pass,
            fmt("coherent qfi vs finite-difference propagation, 100 draws "
                "(worst rel dev %.3g, tol 1e-5); long-time envelope at "
                "t = 100 wz/wx^2 (dev %.3g, tol 0.05)",
                worst, lt_dev)};
}

std::pair<bool, std::string> c03_projected_closed_forms() {
    PrecessionFrequency f = default_freq();
    std::mt19937_64 rng(1003);
    std::uniform_real_distribution<double> pick_tau(0.05, 0.95);
    std::uniform_int_distribution<long long> pick_n(1, 40);
    const double mu0 = 0.999;

    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        double tau = pick_tau(rng);
        long long n = pick_n(rng);
        // The oracle's finite differences cannot resolve an envelope that
        // has decayed through more than ~8 decades; cap n there.
        double a = std::abs(alpha(f, tau));
        if (a < 1.0) {
            double cap_f = -8.0 * std::log(10.0) / (2.0 * std::log(a));
            long long cap =
                std::clamp(static_cast<long long>(cap_f), 1LL, 40LL);
            n = 1 + (n - 1) % cap;
        }
        double ref = oracle::qfi_projected_oracle(f, mu0, tau, n, 0.0);
        MeasurementSchedule s = MeasurementSchedule::from_parts(tau, n, 0.0);
        for (Formula which :
             {Formula::stroboscopic_approx, Formula::appendix_b_full}) {
            double v = qfi_projected(f, mu0, s, which).value;
            worst = std::max(worst, rel_dev_floored(v, ref, 1e-12));
        }
    }
    bool pass = worst <= 1e-4;
    return {pass,
            fmt("projected qfi, both closed forms, vs stepped propagation at "
                "t = n tau, 50 draws (worst rel dev %.3g, tol 1e-4)",
                worst)};
}

std::pair<bool, std::string> c04_xi_endpoints() {
    double x1 = xi(1.0);
    double x0 = xi(0.0);
    bool pass = (x1 > 0.79 && x1 < 0.80) && x0 == 1.0;
    return {pass,
            fmt("xi endpoints: xi(1) = %.17g in (0.79, 0.80), xi(0) == 1 "
                "exactly (got %.17g)",
                x1, x0)};
}

std::pair<bool, std::string> c05_zeno_plateau() {
    PrecessionFrequency f = default_freq();
    double plateau = 4.0 * phi(1.0) / (f.wx * f.wx);
    double f1 = qfi_projected_max(f, 1.0, 1e-3 * 2.0 * kPi / f.w());
    double dev = rel_dev(f1, plateau);

    PrecessionFrequency doubled(f.wx, 2.0 * f.wz);
    double g1 = qfi_projected_max(doubled, 1.0, 1e-3 * 2.0 * kPi / doubled.w());
    double shift = rel_dev(f1, g1);

    bool pass = dev <= 2e-2 && shift < 1e-2;
    return {pass,
            fmt("zeno plateau: peak vs 4 phi / wx^2 (dev %.3g, tol 0.02); "
                "offset doubling moves it by %.3g (tol 0.01)",
                dev, shift)};
}

std::pair<bool, std::string> c06_anti_zeno() {
    double tau_star = anti_zeno_tau(default_freq());
    bool in_window = tau_star >= 0.36 && tau_star <= 0.39;

    PrecessionFrequency skewed(0.05, 5.0);
    double x = skewed.w() * anti_zeno_tau(skewed);
    double resid = std::abs(x - std::tan(0.5 * x));

    bool pass = in_window && resid <= 1e-3;
    return {pass,
            fmt("anti-zeno minimizer tau* = %.6f in [0.36, 0.39]; at "
                "wz/wx = 100 the fixed point x = tan(x/2) holds to %.3g "
                "(tol 1e-3)",
                tau_star, resid)};
}

std::pair<bool, std::string> c07_peak_identity() {
    PrecessionFrequency f = default_freq();
    double id_dev = 0.0;
    double argmax_dev = 0.0;
    for (double tau : {0.1, 0.3, 0.5}) {
        double closed = t_max(f, 1.0, tau);
        id_dev = std::max(
            id_dev,
            rel_dev(closed, xi(1.0) * characteristic_time(f, tau)));
        auto envelope = [&](double t) {
            return qfi_projected(f, 1.0, tau, t, Formula::stroboscopic_approx)
                .value;
        };
        double numeric = golden_max(envelope, 0.2 * closed, 5.0 * closed);
        argmax_dev = std::max(argmax_dev, rel_dev(numeric, closed));
    }
    bool pass = id_dev <= 1e-10 && argmax_dev <= 1e-3;
    return {pass,
            fmt("peak time t_max == xi(mu0) t_c for tau in {0.1, 0.3, 0.5} "
                "(dev %.3g, tol 1e-10); numeric envelope maximizer agrees "
                "(dev %.3g, tol 1e-3)",
                id_dev, argmax_dev)};
}

std::pair<bool, std::string> c08_crossover() {
    PrecessionFrequency f = default_freq();
    double ratio_dev = 0.0;
    for (double mu0 : {0.2, 0.6, 0.999}) {
        double bound = projective_wins_time_bound(f, mu0);
        ratio_dev =
            std::max(ratio_dev, std::abs(qfi_ratio_max(f, mu0, bound) - 1.0));
    }

    // Boundary curve over a decade of horizons: wz* / (wx* sqrt(wx* t - 1))
    // stays constant, the long-time scaling of the crossover.
    double mu0 = 1.0;
    double x = xi(mu0);
    double k = x * x / (std::exp(2.0 * x) - mu0 * mu0);
    double omega = 2.0 * kPi;
    std::vector<double> cs;
    double root_dev = 0.0;
    for (int i = 0; i < 15; ++i) {
        double t = 5.0 * std::pow(100.0 / 5.0, i / 14.0);
        double cosine = std::cbrt(2.0 * std::sqrt(k) / (omega * t));
        double wx = omega * cosine;
        double wz = omega * std::sqrt(1.0 - cosine * cosine);
        root_dev = std::max(root_dev, rel_dev(boundary_curve(wx, t, mu0), wz));
        cs.push_back(wz / (wx * std::sqrt(wx * t - 1.0)));
    }
    double mean = 0.0;
    for (double c : cs) mean += c;
    mean /= static_cast<double>(cs.size());
    double spread = 0.0;
    for (double c : cs) spread = std::max(spread, rel_dev(c, mean));

    bool pass = ratio_dev <= 1e-6 && root_dev <= 1e-8 && spread <= 0.10;
    return {pass,
            fmt("qfi ratio equals 1 at the crossover bound (dev %.3g, "
                "tol 1e-6); boundary fit wz/(wx sqrt(wx t - 1)) = %.4f "
                "constant to %.3g (tol 0.10)",
                ratio_dev, mean, spread)};
}

std::pair<bool, std::string> c09_two_spin_grid() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    const double mu0 = 0.8;
    Eigen::MatrixXcd rho0 = two_spin_initial_rho(mu0);
    for (int ib = 0; ib < 10; ++ib) {
        for (int id = 0; id < 10; ++id) {
            TwoSpinSpec spec;
            spec.b = 0.3 + 1.7 * ib / 9.0;
            spec.delta = 1.5 * id / 9.0;
            Eigen::MatrixXcd h = two_spin_hamiltonian(spec);
            for (int it = 0; it < 10; ++it) {
                double t = 0.2 + 7.8 * it / 9.0;
                double ref = two_spin_muz_from_rho(
                    oracle::propagate_unitary(h, rho0, t));
                worst = std::max(
                    worst, std::abs(two_spin_muz(spec, mu0, t) - ref));
            }
        }
    }
    double secs = seconds_since(t0);
    bool pass = worst <= 1e-10 && secs < 10.0;
    return {pass,
            fmt("two-spin polarization vs 4-dim propagation on a 10x10x10 "
                "grid (worst abs dev %.3g, tol 1e-10; %.2f s, limit 10 s)",
                worst, secs)};
}

std::pair<bool, std::string> c10_three_spin_block() {
    double dyn_dev = 0.0;
    double dark_dev = 0.0;

    for (int variant = 0; variant < 2; ++variant) {
        ThreeSpinSpec spec;
        spec.b1 = 1.3;
        spec.b2 = variant == 0 ? 1.3 : -1.3;
        spec.d = 0.9;
        spec.delta = 0.6;

        Eigen::MatrixXcd big = three_spin_hamiltonian(spec);
        Eigen::MatrixXcd basis = three_spin_block_basis();
        PrecessionFrequency eff = three_spin_effective_omega(spec);

        Eigen::VectorXcd probe_flip = basis.col(1);  // both partners up
        Eigen::MatrixXcd rho_flip = probe_flip * probe_flip.adjoint();
        // The decoupled pair state: antisymmetric for equal couplings,
        // symmetric for mirrored ones.
        Eigen::VectorXcd dark = basis.col(variant == 0 ? 2 : 0);
        Eigen::MatrixXcd rho_dark = dark * dark.adjoint();

        for (double t : {0.3, 1.1, 2.7, 6.4, 13.9}) {
            Eigen::MatrixXcd rt = oracle::propagate_unitary(big, rho_flip, t);
            double survival = (probe_flip.adjoint() * rt * probe_flip)(0, 0)
                                  .real();
            double two_level = 0.5 * (1.0 + alpha(eff, t));
            dyn_dev = std::max(dyn_dev, std::abs(survival - two_level));

            Eigen::MatrixXcd dt_ = oracle::propagate_unitary(big, rho_dark, t);
            double stay = (dark.adjoint() * dt_ * dark)(0, 0).real();
            dark_dev = std::max(dark_dev, std::abs(stay - 1.0));
        }
    }
    bool pass = dyn_dev <= 1e-10 && dark_dev <= 1e-12;
    return {pass,
            fmt("three-spin probe-flip survival matches the effective "
                "two-level model (worst abs dev %.3g, tol 1e-10); the dark "
                "pair state stays put (dev %.3g, tol 1e-12)",
                dyn_dev, dark_dev)};
}

std::pair<bool, std::string> c11_many_spin_short_time() {
    ManySpinSpec spec;
    spec.offsets = {0.3, -0.2, 0.15, 0.4};
    spec.couplings = Eigen::MatrixXd::Zero(4, 4);
    auto set = [&](int i, int j, double b) {
        spec.couplings(i, j) = spec.couplings(j, i) = b;
    };
    set(0, 1, 1.7);
    set(0, 2, 0.8);
    set(0, 3, 1.1);
    set(1, 2, 0.5);
    set(1, 3, 2.0);
    set(2, 3, 0.9);
    const double bmax = 2.0;
    const double mu = 0.6;

    Eigen::MatrixXcd h = many_spin_hamiltonian(spec);
    Eigen::MatrixXcd z0 = spin_half_op(4, 0, 'z');

    // Exact transfer coefficient of <I_0^z(t)> from an initial polarization
    // sitting on spin j alone.
    auto exact_coeff = [&](int j, double t) {
        Eigen::MatrixXcd rho0 =
            Eigen::MatrixXcd::Identity(16, 16) / 16.0 +
            (mu / 8.0) * spin_half_op(4, j, 'z');
        Eigen::MatrixXcd rt = oracle::propagate_unitary(h, rho0, t);
        return (z0 * rt).trace().real() / (0.5 * mu);
    };
    auto residual = [&](double t) {
        ShortTimeIz pred = many_spin_short_time_Iz(spec, 0, t);
        double r = std::abs(exact_coeff(0, t) - pred.self_coefficient);
        for (int j = 1; j < 4; ++j) {
            r = std::max(r, std::abs(exact_coeff(j, t) -
                                     pred.transfer[static_cast<size_t>(j)]));
        }
        return r;
    };

    double r1 = residual(0.005 / bmax);
    double r2 = residual(0.01 / bmax);
    double r3 = residual(0.02 / bmax);
    double r4 = residual(0.04 / bmax);
    double e_min = std::min({std::log2(r2 / r1), std::log2(r3 / r2),
                             std::log2(r4 / r3)});

    double t_ref = 0.02 / bmax;
    ShortTimeIz pred = many_spin_short_time_Iz(spec, 0, t_ref);
    double rel = rel_dev(exact_coeff(0, t_ref), pred.self_coefficient);
    for (int j = 1; j < 4; ++j) {
        rel = std::max(rel, rel_dev(exact_coeff(j, t_ref),
                                    pred.transfer[static_cast<size_t>(j)]));
    }

    bool pass = e_min >= 2.7 && rel < 1e-2;
    return {pass,
            fmt("4-spin short-time expansion: residual doubling exponent "
                ">= 2.7 over t in [0.005, 0.04]/bmax (min %.2f); coefficients "
                "within 1%% at t = 0.02/bmax (worst rel dev %.3g)",
                e_min, rel)};
}

std::pair<bool, std::string> c12_cli_determinism() {
    namespace fs = std::filesystem;
    int identical = 0;
    std::vector<std::string> figs{"fig2", "fig3", "fig4", "fig5"};
    std::string detail;
    for (const std::string& fig : figs) {
        fs::path a = fs::temp_directory_path() /
                     (fig + "-a-" + std::to_string(::getpid()) + ".csv");
        fs::path b = fs::temp_directory_path() /
                     (fig + "-b-" + std::to_string(::getpid()) + ".csv");
        auto run = [&](const fs::path& out) {
            std::string cmd = std::string("\"") + ZENO_SENSE_BIN + "\" " + fig +
                              " --out " + out.string() + " >/dev/null 2>&1";
            int raw = std::system(cmd.c_str());
            return raw != -1 && WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
        };
        bool ok = run(a) && run(b);
        if (ok) {
            std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
            std::ostringstream sa, sb;
            sa << fa.rdbuf();
            sb << fb.rdbuf();
            ok = !sa.str().empty() && sa.str() == sb.str();
        }
        if (ok) {
            ++identical;
        } else {
            detail += " " + fig;
        }
        fs::remove(a);
        fs::remove(b);
    }
    bool pass = identical == static_cast<int>(figs.size());
    return {pass, fmt("zeno-sense figure csvs byte-identical across reruns "
                      "(%d/4 commands%s%s)",
                      identical, detail.empty() ? "" : "; differing:",
                      detail.c_str())};
}

}  // namespace

int main() {
    Gate gate;
    gate.run(1, c01_eigen_equivalence);
    gate.run(2, c02_coherent_closed_form);
    gate.run(3, c03_projected_closed_forms);
    gate.run(4, c04_xi_endpoints);
    gate.run(5, c05_zeno_plateau);
    gate.run(6, c06_anti_zeno);
    gate.run(7, c07_peak_identity);
    gate.run(8, c08_crossover);
    gate.run(9, c09_two_spin_grid);
    gate.run(10, c10_three_spin_block);
    gate.run(11, c11_many_spin_short_time);
    gate.run(12, c12_cli_determinism);
    std::printf("%d/%d acceptance criteria passed\n",
                gate.total - gate.failures, gate.total);
    return gate.failures;
}
