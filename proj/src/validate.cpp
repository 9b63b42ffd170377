#include "zeno/validate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "zeno/oracle.hpp"
#include "zeno/qfi.hpp"
#include "zeno/specfun.hpp"
#include "zeno/spins.hpp"

namespace zeno {

namespace {

using oracle::Matrix;
using std::complex;

constexpr double kPi = std::numbers::pi;

double rel_dev(double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

// Relative deviation with an absolute floor: values both below the floor
// count as agreement. Used where a finite-difference oracle bottoms out in
// roundoff while the exact expression keeps shrinking.
double rel_dev_floored(double a, double b, double floor) {
    if (std::max(std::abs(a), std::abs(b)) <= floor) return 0.0;
    return rel_dev(a, b);
}

struct Recorder {
    std::vector<CheckResult> results;

    // Passes when observed <= tol.
    void within(std::string name, double tol, double observed) {
        bool ok = std::isfinite(observed) && observed <= tol;
        results.push_back({std::move(name), tol, observed, ok});
    }
    // Passes when observed >= threshold (used for the scaling exponent).
    void at_least(std::string name, double threshold, double observed) {
        bool ok = std::isfinite(observed) && observed >= threshold;
        results.push_back({std::move(name), threshold, observed, ok});
    }
    void condition(std::string name, double tol, double observed, bool extra) {
        bool ok = extra && std::isfinite(observed) && observed <= tol;
        results.push_back({std::move(name), tol, observed, ok});
    }
};

// One-period propagator by eigendecomposition, for stepped sweeps that would
// otherwise redecompose the same Hamiltonian every step.
Matrix period_propagator(const Matrix& h, double tau) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXcd phases =
        (complex<double>(0.0, -tau) *
         es.eigenvalues().array().cast<complex<double>>())
            .exp()
            .matrix();
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
}

Matrix pauli_combo(double x, double y, double z) {
    Matrix m(2, 2);
    m << 0.5 * z, 0.5 * complex<double>(x, -y), 0.5 * complex<double>(x, y),
        -0.5 * z;
    return m;
}

void check_specfun(Recorder& rec) {
    // Identity residual across the domain, including the branch point snap.
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        double x = -std::exp(-1.0) + (10.0 + std::exp(-1.0)) * i / 1999.0;
        double w = lambert_w0(x);
        worst = std::max(worst, std::abs(w * std::exp(w) - x));
    }
    rec.within("lambert_w0 identity residual", 1e-10, worst);

    double anchors = std::abs(lambert_w0(1.0) - 0.5671432904097838);
    anchors = std::max(anchors, std::abs(lambert_w0(0.0)));
    anchors = std::max(anchors,
                       std::abs(lambert_w0(-std::exp(-1.0)) - (-1.0)));
    anchors = std::max(anchors, std::abs(lambert_w0(std::exp(1.0)) - 1.0));
    rec.within("lambert_w0 anchors", 1e-12, anchors);

    double xi_dev = std::abs(xi(0.0) - 1.0);
    xi_dev = std::max(xi_dev, std::abs(xi(1.0) - 0.7968121300200199));
    bool monotone = true;
    double prev = xi(0.0);
    for (int i = 1; i <= 1000; ++i) {
        double cur = xi(i / 1000.0);
        if (cur > prev + 1e-15) monotone = false;
        prev = cur;
    }
    rec.condition("xi endpoints and monotonicity", 1e-12, xi_dev, monotone);

    double limit = phi(1e-3) / 1e-6;
    rec.within("phi small-polarization limit", 1e-4,
               rel_dev(limit, std::exp(-2.0)));
    rec.within("phi anchor at full polarization", 1e-12,
               std::abs(phi(1.0) - 0.1619025594729787));
}

void check_bloch(Recorder& rec) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> uth(0.05, 1.5);
    std::uniform_real_distribution<double> ut(0.0, 50.0);
    std::uniform_real_distribution<double> umu(0.0, 1.0);

    double norm_dev = 0.0;
    double period_dev = 0.0;
    double oracle_dev = 0.0;
    for (int i = 0; i < 200; ++i) {
        auto freq = PrecessionFrequency::from_polar(2.0 * kPi, uth(rng));
        double mu0 = umu(rng);
        double t = ut(rng);
        auto mu = evolve_coherent(freq, mu0, t);
        norm_dev = std::max(norm_dev, std::abs(mu.norm() - mu0));

        double period = 2.0 * kPi / freq.w();
        auto mu2 = evolve_coherent(freq, mu0, t + period);
        period_dev = std::max({period_dev, std::abs(mu.mx - mu2.mx),
                               std::abs(mu.my - mu2.my),
                               std::abs(mu.mz - mu2.mz)});

        auto rho = oracle::propagate_unitary(oracle::qubit_hamiltonian(freq),
                                             oracle::qubit_rho_z(mu0), t);
        auto om = oracle::qubit_mu(rho);
        oracle_dev = std::max({oracle_dev, std::abs(mu.mx - om.mx),
                               std::abs(mu.my - om.my),
                               std::abs(mu.mz - om.mz)});
    }
    rec.within("coherent norm conservation", 1e-12, norm_dev);
    rec.within("coherent periodicity", 1e-10, period_dev);
    rec.within("coherent evolution vs unitary oracle", 1e-12, oracle_dev);

    std::uniform_real_distribution<double> utau(0.05, 1.5);
    std::uniform_int_distribution<long long> un(0, 50);
    double proj_dev = 0.0;
    double log_dev = 0.0;
    for (int i = 0; i < 120; ++i) {
        auto freq = PrecessionFrequency::from_polar(2.0 * kPi, uth(rng));
        double mu0 = 0.2 + 0.8 * umu(rng);
        double tau = utau(rng);
        long long n = un(rng);
        double dt = tau * umu(rng) * 0.999;
        auto sched = MeasurementSchedule::from_parts(tau, n, dt);
        double closed = evolve_projected(freq, mu0, sched);
        auto rho = oracle::projected_qubit_rho(freq, mu0, tau, n, dt);
        proj_dev = std::max(proj_dev,
                            std::abs(closed - oracle::qubit_mu(rho).mz));

        double a = alpha(freq, tau);
        double strobe = evolve_projected(
            freq, mu0, MeasurementSchedule::from_parts(tau, n, 0.0));
        if (std::abs(strobe) > 1e-250 && std::abs(a) > 1e-250) {
            double lhs = std::log(std::abs(strobe));
            double rhs = std::log(mu0) +
                         static_cast<double>(n) * std::log(std::abs(a));
            log_dev = std::max(log_dev, std::abs(lhs - rhs));
        }
    }
    rec.within("projected envelope vs stepped oracle", 1e-10, proj_dev);
    rec.within("projected envelope log-decay identity", 1e-10, log_dev);

    // Short-period estimate t_c ~ w^2 tau / (2 wx^2 sin^2(w tau / 2)).
    auto freq = PrecessionFrequency::from_polar(2.0 * kPi, 0.45 * kPi);
    double tau0 = 0.375;
    double tc = characteristic_time(freq, tau0);
    double half = std::sin(freq.w() * tau0 / 2.0);
    double approx = freq.w() * freq.w() * tau0 /
                    (2.0 * freq.wx * freq.wx * half * half);
    rec.within("characteristic time short-period estimate (tau = 0.375)", 0.03,
               rel_dev(tc, approx));

    double tau_star = anti_zeno_tau(freq);
    rec.condition("anti-zeno minimizer location", 1e-6,
                  std::abs(tau_star - 0.3745260925762424),
                  tau_star > 0.36 && tau_star < 0.39);

    auto steep = PrecessionFrequency(1.0, 100.0);
    double x_star = steep.w() * anti_zeno_tau(steep);
    rec.within("anti-zeno transcendental equation", 1e-3,
               rel_dev(x_star, 2.331122370414423));

    std::uniform_real_distribution<double> uper(1e-6, 1.0 - 1e-6);
    double tc_star = characteristic_time(freq, tau_star);
    double best_sampled = std::numeric_limits<double>::infinity();
    double period = 2.0 * kPi / freq.w();
    for (int i = 0; i < 1000; ++i) {
        best_sampled = std::min(
            best_sampled, characteristic_time(freq, uper(rng) * period));
    }
    rec.within("anti-zeno global minimality", 1e-9,
               std::max(0.0, (tc_star - best_sampled) / tc_star));
}

void check_qfi_core(Recorder& rec, const ValidationHooks& hooks) {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> uth(0.05, 1.5);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    // Derivative of the survival factor against a central difference,
    // through the injectable hook so a wrong sign is caught here.
    std::function<double(const PrecessionFrequency&, double)> d_alpha_impl =
        hooks.d_alpha_d_wx;
    if (!d_alpha_impl) {
        d_alpha_impl = [](const PrecessionFrequency& f, double tau) {
            return d_alpha_d_wx(f, tau);
        };
    }
    double da_dev = 0.0;
    for (double theta : {0.3, 0.7, 1.1, 1.413}) {
        for (double tau : {0.05, 0.3, 0.7}) {
            auto freq = PrecessionFrequency::from_polar(2.0 * kPi, theta);
            double h = 1e-8 * std::abs(freq.wx);
            double fd = (alpha(PrecessionFrequency(freq.wx + h, freq.wz), tau) -
                         alpha(PrecessionFrequency(freq.wx - h, freq.wz), tau)) /
                        (2.0 * h);
            da_dev = std::max(da_dev, std::abs(d_alpha_impl(freq, tau) - fd));
        }
    }
    rec.within("d_alpha_d_wx vs central difference", 1e-8, da_dev);

    double comp_dev = 0.0;
    for (int i = 0; i < 300; ++i) {
        auto freq = PrecessionFrequency::from_polar(2.0 * kPi, uth(rng));
        double mu0 = 0.999 * u01(rng);
        double t = 0.1 + 20.0 * u01(rng);
        double closed = qfi_coherent(freq, mu0, t).value;
        double composed = qfi_from_polarization(evolve_coherent(freq, mu0, t),
                                                d_mu_d_wx(freq, mu0, t));
        comp_dev = std::max(comp_dev, rel_dev(closed, composed));
    }
    rec.within("coherent qfi vs polarization composition", 1e-10, comp_dev);

    double fd_worst = 0.0;
    double fd_sum = 0.0;
    for (int i = 0; i < 100; ++i) {
        auto freq = PrecessionFrequency::from_polar(2.0 * kPi, uth(rng));
        double t = std::exp(std::log(0.1) +
                            (std::log(20.0) - std::log(0.1)) * u01(rng));
        double closed = qfi_coherent(freq, 0.999, t).value;
        double ora = oracle::qfi_coherent_oracle(freq, 0.999, t);
        double dev = rel_dev(closed, ora);
        fd_worst = std::max(fd_worst, dev);
        fd_sum += dev;
    }
    rec.within("coherent qfi vs finite-difference oracle (worst)", 1e-5,
               fd_worst);
    rec.within("coherent qfi vs finite-difference oracle (mean)", 1e-5,
               fd_sum / 100.0);

    double eig_worst = 0.0;
    double eig_sum = 0.0;
    int eig_samples = 2000;
    std::uniform_real_distribution<double> usym(-1.0, 1.0);
    for (int i = 0; i < eig_samples; ++i) {
        double mx = usym(rng), my = usym(rng), mz = usym(rng);
        double norm = std::sqrt(mx * mx + my * my + mz * mz);
        double scale = 0.98 * u01(rng) / std::max(norm, 1e-12);
        PolarizationVector mu(mx * scale, my * scale, mz * scale);
        Vec3 dmu{usym(rng), usym(rng), usym(rng)};
        double f_pol = qfi_from_polarization(mu, dmu);
        double f_eig = oracle::qfi_eigen(oracle::qubit_rho(mu),
                                         pauli_combo(dmu[0], dmu[1], dmu[2]));
        double dev = rel_dev(f_pol, f_eig);
        eig_worst = std::max(eig_worst, dev);
        eig_sum += dev;
    }
    rec.within("eigenbasis vs polarization qfi (worst)", 1e-9, eig_worst);
    rec.within("eigenbasis vs polarization qfi (mean)", 1e-10,
               eig_sum / eig_samples);

    // Everything downstream depends on wx only through even powers.
    double parity_dev = 0.0;
    for (double theta : {0.3, 0.9, 1.4}) {
        auto fp = PrecessionFrequency::from_polar(2.0 * kPi, theta);
        auto fm = PrecessionFrequency(-fp.wx, fp.wz);
        parity_dev = std::max(
            parity_dev, std::abs(qfi_coherent(fp, 0.8, 7.0).value -
                                 qfi_coherent(fm, 0.8, 7.0).value));
        parity_dev = std::max(
            parity_dev,
            std::abs(qfi_projected(fp, 0.8, 0.3, 4.1,
                                   Formula::appendix_b_full)
                         .value -
                     qfi_projected(fm, 0.8, 0.3, 4.1,
                                   Formula::appendix_b_full)
                         .value));
        parity_dev = std::max(parity_dev,
                              std::abs(qfi_projected_max(fp, 0.8, 0.3) -
                                       qfi_projected_max(fm, 0.8, 0.3)));
    }
    rec.within("wx parity", 0.0, parity_dev);

    auto freq = PrecessionFrequency::from_polar(2.0 * kPi, 0.45 * kPi);
    double t_unit = freq.wz / (freq.wx * freq.wx);
    double dev1 = rel_dev(qfi_coherent(freq, 1.0, 10.0 * t_unit).value,
                          qfi_coherent_longtime(freq, 1.0, 10.0 * t_unit).value);
    double dev2 = rel_dev(qfi_coherent(freq, 1.0, 100.0 * t_unit).value,
                          qfi_coherent_longtime(freq, 1.0, 100.0 * t_unit).value);
    double dev3 = rel_dev(qfi_coherent(freq, 1.0, 1000.0 * t_unit).value,
                          qfi_coherent_longtime(freq, 1.0, 1000.0 * t_unit).value);
    rec.condition("long-time envelope monotone approach", 5e-3, dev3,
                  dev1 > dev2 && dev2 > dev3);
}

void check_qfi_projected(Recorder& rec) {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> uth(0.2, 1.5);
    std::uniform_real_distribution<double> utau(0.05, 0.9);
    std::uniform_int_distribution<long long> un(1, 40);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    double strobe_dev = 0.0;
    double offgrid_dev = 0.0;
    for (int i = 0; i < 40; ++i) {
        auto freq = PrecessionFrequency::from_polar(2.0 * kPi, uth(rng));
        double tau = utau(rng);
        // The finite-difference oracle resolves nothing once the envelope
        // alpha^(2n) decays past roundoff (the closed forms keep going, down
        // to 1e-300 and beyond). Cap n so at most 8 decades are gone, and
        // treat values below 1e-12 on both sides as agreement at zero.
        long long n = un(rng);
        double a = std::abs(alpha(freq, tau));
        if (a < 1.0) {
            double cap_f = -8.0 * std::log(10.0) / (2.0 * std::log(a));
            long long cap = std::clamp(
                static_cast<long long>(cap_f), 1LL, 40LL);
            n = 1 + (n - 1) % cap;
        }
        double mu0 = 0.999;
        auto sched = MeasurementSchedule::from_parts(tau, n, 0.0);
        double ora = oracle::qfi_projected_oracle(freq, mu0, tau, n, 0.0);
        strobe_dev = std::max(
            strobe_dev,
            rel_dev_floored(qfi_projected(freq, mu0, sched,
                                          Formula::stroboscopic_approx)
                                .value,
                            ora, 1e-12));
        strobe_dev = std::max(
            strobe_dev,
            rel_dev_floored(
                qfi_projected(freq, mu0, sched, Formula::appendix_b_full)
                    .value,
                ora, 1e-12));

        double dt = tau * (0.1 + 0.8 * u01(rng));
        auto sched2 = MeasurementSchedule::from_parts(tau, n, dt);
        double ora2 = oracle::qfi_projected_oracle(freq, mu0, tau, n, dt);
        offgrid_dev = std::max(
            offgrid_dev,
            rel_dev_floored(
                qfi_projected(freq, mu0, sched2, Formula::appendix_b_full)
                    .value,
                ora2, 1e-12));
    }
    rec.within("stroboscopic qfi vs oracle at t = n tau", 1e-4, strobe_dev);
    rec.within("between-measurement qfi vs oracle", 1e-4, offgrid_dev);

    auto freq = PrecessionFrequency::from_polar(2.0 * kPi, 0.45 * kPi);
    double anchor_dev = rel_dev(t_max(freq, 1.0, 0.1), 17.009026985114748);
    anchor_dev = std::max(anchor_dev,
                          rel_dev(t_max(freq, 1.0, 0.3), 7.342032014930193));
    anchor_dev = std::max(anchor_dev,
                          rel_dev(t_max(freq, 1.0, 0.5), 7.9392557665300965));
    rec.within("peak time anchors (tau = 0.1, 0.3, 0.5)", 1e-10, anchor_dev);

    // Numeric maximization of the envelope in t against the closed t_max.
    double tau0 = 0.3;
    auto envelope = [&](double t) {
        return qfi_projected(freq, 1.0, tau0, t, Formula::stroboscopic_approx)
            .value;
    };
    double lo = 0.1, hi = 5.0 * characteristic_time(freq, tau0);
    constexpr double kGolden = 0.6180339887498949;
    double c = hi - kGolden * (hi - lo), d = lo + kGolden * (hi - lo);
    double fc = envelope(c), fd = envelope(d);
    for (int i = 0; i < 300 && (hi - lo) > 1e-10 * hi; ++i) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kGolden * (hi - lo);
            fc = envelope(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kGolden * (hi - lo);
            fd = envelope(d);
        }
    }
    double t_best = 0.5 * (lo + hi);
    rec.within("peak time maximizes the envelope", 1e-3,
               rel_dev(t_best, t_max(freq, 1.0, tau0)));

    double peak = qfi_projected_max(freq, 1.0, tau0);
    rec.within("peak value matches envelope at t_max", 5e-3,
               rel_dev(peak, envelope(t_max(freq, 1.0, tau0))));
    rec.within("peak value anchor (tau = 0.3)", 1e-10,
               rel_dev(peak, 0.6819309771780591));

    double peak999 = qfi_projected_max(freq, 0.999, tau0);
    double best_oracle = 0.0;
    for (long long n = 1; n <= 120; ++n) {
        best_oracle = std::max(best_oracle, oracle::qfi_projected_oracle(
                                                freq, 0.999, tau0, n, 0.0));
    }
    rec.within("peak value vs oracle maximization", 1e-2,
               rel_dev(peak999, best_oracle));

    double zeno_ref = 4.0 * phi(1.0) / (freq.wx * freq.wx);
    double f1 = qfi_projected_max(freq, 1.0, 1e-3 * 2.0 * kPi / freq.w());
    double f2 = qfi_projected_max(freq, 1.0, 2e-3 * 2.0 * kPi / freq.w());
    double f4 = qfi_projected_max(freq, 1.0, 4e-3 * 2.0 * kPi / freq.w());
    rec.within("zeno limit of the peak value", 2e-2, rel_dev(f1, zeno_ref));
    rec.within("zeno plateau flatness", 1e-2,
               std::max(rel_dev(f1, f2), rel_dev(f2, f4)));

    auto doubled = PrecessionFrequency(freq.wx, 2.0 * freq.wz);
    double g1 = qfi_projected_max(doubled, 1.0, 1e-3 * 2.0 * kPi / doubled.w());
    rec.within("offset-doubling invariance in the zeno limit", 1e-2,
               rel_dev(f1, g1));
}

void check_crossover(Recorder& rec) {
    double ratio_dev = 0.0;
    for (double theta : {0.3, 0.9, 1.35}) {
        for (double mu0 : {1e-3, 0.5, 1.0}) {
            auto freq = PrecessionFrequency::from_polar(2.0 * kPi, theta);
            double bound = projective_wins_time_bound(freq, mu0);
            ratio_dev = std::max(
                ratio_dev, std::abs(qfi_ratio_max(freq, mu0, bound) - 1.0));
        }
    }
    rec.within("ratio equals one at the crossing bound", 1e-12, ratio_dev);

    auto freq = PrecessionFrequency::from_polar(2.0 * kPi, 0.45 * kPi);
    double bound = projective_wins_time_bound(freq, 1e-3);
    double reduced = bound * std::abs(freq.wx) /
                     (1.0 + freq.wz * freq.wz / (freq.wx * freq.wx));
    rec.within("crossing bound small-polarization limit", 1e-3,
               rel_dev(reduced, 2.0 * std::exp(-1.0)));

    // Level set of ratio = 1 at fixed w: theta*(t) from the closed inversion,
    // validated through the root finder, then fitted against
    // wz = c wx sqrt(wx t - 1).
    double mu0 = 1.0;
    double w = 2.0 * kPi;
    double k = phi(mu0) / (mu0 * mu0);
    double root_dev = 0.0;
    std::vector<double> cs;
    for (double t : {10.0, 20.0, 40.0, 80.0}) {
        double cth = std::cbrt(2.0 * std::sqrt(k) / (w * t));
        double wx = w * cth;
        double wz = w * std::sqrt(1.0 - cth * cth);
        root_dev = std::max(root_dev,
                            rel_dev(boundary_curve(wx, t, mu0), wz));
        if (wx * t > 1.0) {
            cs.push_back(wz / (wx * std::sqrt(wx * t - 1.0)));
        }
    }
    rec.within("boundary curve root residual", 1e-8, root_dev);
    double c_mean = 0.0;
    for (double v : cs) c_mean += v;
    c_mean /= static_cast<double>(cs.size());
    double c_spread = 0.0;
    for (double v : cs) c_spread = std::max(c_spread, rel_dev(v, c_mean));
    rec.condition("boundary curve square-root fit", 0.1, c_spread,
                  cs.size() == 4 && std::abs(c_mean - 1.12) < 0.06);
}

void check_oracle_machinery(Recorder& rec) {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> utau(0.05, 1.5);
    std::uniform_real_distribution<double> ut(0.0, 40.0);

    double sched_dev = 0.0;
    for (int i = 0; i < 500; ++i) {
        double tau = utau(rng);
        double total = ut(rng);
        auto s = MeasurementSchedule::from_total(tau, total);
        sched_dev = std::max(
            sched_dev,
            std::abs(static_cast<double>(s.n) * s.tau + s.dt - s.total_t));
        if (!(s.dt >= 0.0 && s.dt < s.tau)) sched_dev = 1.0;
    }
    rec.within("schedule decomposition exactness", 0.0, sched_dev);

    auto freq = PrecessionFrequency::from_polar(2.0 * kPi, 0.45 * kPi);
    Matrix h = oracle::qubit_hamiltonian(freq);
    Matrix rho = oracle::qubit_rho_z(0.9);
    auto labels = oracle::qubit_z_labels();
    double deph_dev = 0.0;
    double seq_dev = 0.0;
    for (int k = 0; k < 50; ++k) {
        rho = oracle::propagate_unitary(h, rho, 0.2);
        Matrix once = oracle::dephase(rho, labels);
        deph_dev = std::max(
            deph_dev,
            (oracle::dephase(once, labels) - once).cwiseAbs().maxCoeff());
        rho = once;
        seq_dev = std::max(seq_dev, std::abs(rho.trace().real() - 1.0));
        seq_dev = std::max(seq_dev, std::abs(rho.trace().imag()));
        seq_dev =
            std::max(seq_dev, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
        seq_dev = std::max(seq_dev, std::max(0.0, -es.eigenvalues().minCoeff()));
    }
    rec.within("dephasing idempotence", 0.0, deph_dev);
    rec.within("propagation preserves trace, hermiticity, positivity", 1e-12,
               seq_dev);

    double commutator_dev = 0.0;
    {
        Matrix h2 = two_spin_hamiltonian({1.1, 0.7});
        Matrix mz2 = spin_half_op(2, 0, 'z') + spin_half_op(2, 1, 'z');
        commutator_dev = std::max(commutator_dev,
                                  (h2 * mz2 - mz2 * h2).cwiseAbs().maxCoeff());
        Matrix h3 = three_spin_hamiltonian({1.3, 0.7, 0.9, 0.6, 0.25});
        Matrix mz3 = spin_half_op(3, 0, 'z') + spin_half_op(3, 1, 'z') +
                     spin_half_op(3, 2, 'z');
        commutator_dev = std::max(commutator_dev,
                                  (h3 * mz3 - mz3 * h3).cwiseAbs().maxCoeff());
    }
    rec.within("total-z conservation of the spin Hamiltonians", 1e-14,
               commutator_dev);
}

void check_spins(Recorder& rec) {
    double pair_dev = 0.0;
    for (double b : {0.6, 1.0, 1.8}) {
        for (double delta : {0.0, 0.8, 3.0}) {
            for (double t : {0.5, 2.0, 7.0}) {
                for (double mu0 : {1.0, -0.4}) {
                    TwoSpinSpec spec{b, delta};
                    auto rho = oracle::propagate_unitary(
                        two_spin_hamiltonian(spec), two_spin_initial_rho(mu0),
                        t);
                    pair_dev = std::max(
                        pair_dev, std::abs(two_spin_muz(spec, mu0, t) -
                                           two_spin_muz_from_rho(rho)));
                }
            }
        }
    }
    rec.within("two-spin polarization vs oracle", 1e-10, pair_dev);

    // Single-flip block of the three-spin cluster against the full
    // 8-dimensional dynamics, plus the reduction onto the effective qubit.
    ThreeSpinSpec sym{1.3, 1.3, 0.9, 0.6, 0.25};
    Matrix basis = three_spin_block_basis();
    Matrix h8 = three_spin_hamiltonian(sym);
    Eigen::Matrix3d hb = three_spin_block_hamiltonian(sym);
    double block_dev =
        (basis.adjoint() * h8 * basis - hb.cast<complex<double>>())
            .cwiseAbs()
            .maxCoeff();

    Eigen::Vector3d pops(0.2, 0.7, 0.1);
    Matrix rho3 = Matrix::Zero(3, 3);
    rho3.diagonal() = pops.cast<complex<double>>();
    Matrix rho8 = basis * rho3 * basis.adjoint();
    double effective_dev = 0.0;
    double asym_dev = 0.0;
    for (double t : {0.7, 2.3}) {
        Matrix r8 = oracle::propagate_unitary(h8, rho8, t);
        Matrix r3 = oracle::propagate_unitary(hb.cast<complex<double>>(),
                                              rho3, t);
        Matrix r8_in_block = basis.adjoint() * r8 * basis;
        block_dev = std::max(block_dev,
                             (r8_in_block - r3).cwiseAbs().maxCoeff());
        asym_dev = std::max(asym_dev, std::abs(r8_in_block(2, 2).real() - 0.1));

        auto eff = three_spin_effective_omega(sym);
        Matrix h2 = oracle::qubit_hamiltonian(eff);
        Matrix rho2 = Matrix::Zero(2, 2);
        rho2(0, 0) = 0.2;
        rho2(1, 1) = 0.7;
        Matrix r2 = oracle::propagate_unitary(h2, rho2, t);
        effective_dev = std::max(
            effective_dev, std::abs(r3(0, 0).real() - r2(0, 0).real()));

        ThreeSpinSpec mirror{1.3, -1.3, 0.9, 0.6, 0.25};
        auto effm = three_spin_effective_omega(mirror);
        Eigen::Matrix3d hbm = three_spin_block_hamiltonian(mirror);
        Matrix r3m = oracle::propagate_unitary(hbm.cast<complex<double>>(),
                                               rho3, t);
        Matrix h2m = oracle::qubit_hamiltonian(effm);
        Matrix rho2m = Matrix::Zero(2, 2);
        rho2m(0, 0) = 0.7;
        rho2m(1, 1) = 0.1;
        Matrix r2m = oracle::propagate_unitary(h2m, rho2m, t);
        effective_dev = std::max(
            effective_dev, std::abs(r3m(1, 1).real() - r2m(0, 0).real()));
    }
    rec.within("three-spin block vs full dynamics", 1e-10, block_dev);
    rec.within("three-spin effective two-level dynamics", 1e-10,
               effective_dev);
    rec.within("three-spin antisymmetric population constancy", 1e-12,
               asym_dev);
}

ManySpinSpec four_spin_fixture() {
    ManySpinSpec spec;
    spec.offsets = {0.3, -0.2, 0.15, 0.4};
    spec.couplings = Eigen::MatrixXd::Zero(4, 4);
    auto set = [&](int i, int j, double v) {
        spec.couplings(i, j) = v;
        spec.couplings(j, i) = v;
    };
    set(0, 1, 1.7);
    set(0, 2, 0.8);
    set(0, 3, 1.1);
    set(1, 2, 0.5);
    set(1, 3, 2.0);
    set(2, 3, 0.9);
    return spec;
}

// Oracle coefficients of <I_i^z(t)> over the initial single-spin
// polarizations: c_j = 2 tr(I_i^z rho_j(t)) with rho_j = (I + 2 I_j^z)/16.
std::vector<double> iz_coefficients(const ManySpinSpec& spec, int i,
                                    double t) {
    int n = spec.n_spins();
    Matrix h = many_spin_hamiltonian(spec);
    Matrix iiz = spin_half_op(n, i, 'z');
    Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<double> out;
    for (int j = 0; j < n; ++j) {
        Matrix rho = (Matrix::Identity(dim, dim) +
                      2.0 * spin_half_op(n, j, 'z')) /
                     static_cast<double>(dim);
        Matrix evolved = oracle::propagate_unitary(h, rho, t);
        out.push_back(2.0 * (iiz * evolved).trace().real());
    }
    return out;
}

double short_time_residual(const ManySpinSpec& spec, int i, double t) {
    auto pred = many_spin_short_time_Iz(spec, i, t);
    auto coeff = iz_coefficients(spec, i, t);
    double res = std::abs(coeff[static_cast<size_t>(i)] -
                          pred.self_coefficient);
    for (int j = 0; j < spec.n_spins(); ++j) {
        if (j == i) continue;
        res += std::abs(coeff[static_cast<size_t>(j)] -
                        pred.transfer[static_cast<size_t>(j)]);
    }
    return res;
}

void check_many_spin(Recorder& rec) {
    auto spec = four_spin_fixture();
    double bmax = spec.couplings.cwiseAbs().maxCoeff();

    double t = 0.02 / bmax;
    auto pred = many_spin_short_time_Iz(spec, 0, t);
    auto coeff = iz_coefficients(spec, 0, t);
    double transfer_dev = rel_dev(1.0 - coeff[0], 1.0 - pred.self_coefficient);
    for (int j = 1; j < 4; ++j) {
        transfer_dev = std::max(
            transfer_dev, rel_dev(coeff[static_cast<size_t>(j)],
                                  pred.transfer[static_cast<size_t>(j)]));
    }
    rec.within("short-time transfer coefficients (4 spins)", 1e-2,
               transfer_dev);

    double r1 = short_time_residual(spec, 0, 0.01 / bmax);
    double r2 = short_time_residual(spec, 0, 0.02 / bmax);
    double exponent = std::log2(r2 / r1);
    rec.at_least("short-time residual doubling exponent", 2.8, exponent);

    // Monitored pair under stroboscopic projections: the true optimum sits a
    // factor 4 below the quoted t_max and a factor 16 below the quoted
    // qfi_max. The quoted pair stays exact by construction.
    double b = 1.0;
    double mu0 = 0.8;
    double tau = 0.01;
    double t_true = 2.0 * xi(mu0) / (b * b * tau);
    double f_true = 2.0 * phi(mu0) / (b * b);
    auto quoted = many_spin_zeno_optimum(b, mu0, tau);
    double factor_dev = std::max(rel_dev(quoted.t_max, 4.0 * t_true),
                                 rel_dev(quoted.qfi_max, 16.0 * f_true));

    ManySpinSpec pair;
    pair.offsets = {0.0, 0.0};
    pair.couplings = Eigen::MatrixXd::Zero(2, 2);
    pair.couplings(0, 1) = pair.couplings(1, 0) = b;
    double h = 1e-6;
    std::array<double, 3> bs{b - h, b, b + h};
    std::array<Matrix, 3> u;
    std::array<Matrix, 3> rho;
    for (int k = 0; k < 3; ++k) {
        ManySpinSpec pk = pair;
        pk.couplings(0, 1) = pk.couplings(1, 0) = bs[static_cast<size_t>(k)];
        u[static_cast<size_t>(k)] =
            period_propagator(many_spin_hamiltonian(pk), tau);
        rho[static_cast<size_t>(k)] =
            0.25 * (Matrix::Identity(4, 4) +
                    2.0 * mu0 * spin_half_op(2, 0, 'z'));
    }
    auto labels = many_spin_z_labels(2, 0);
    long long n_max = static_cast<long long>(2.5 * t_true / tau);
    double best_f = 0.0;
    long long best_n = 0;
    for (long long n = 1; n <= n_max; ++n) {
        for (size_t k = 0; k < 3; ++k) {
            rho[k] = oracle::dephase(u[k] * rho[k] * u[k].adjoint(), labels);
        }
        if (n % 64 == 0) {
            Matrix drho = (rho[2] - rho[0]) / (2.0 * h);
            double f = oracle::qfi_eigen(rho[1], drho);
            if (f > best_f) {
                best_f = f;
                best_n = n;
            }
        }
    }
    double sweep_dev =
        std::max(rel_dev(static_cast<double>(best_n) * tau, t_true),
                 rel_dev(best_f, f_true));
    rec.condition("pair-model optimum (true values and quoted factors)", 5e-2,
                  sweep_dev, factor_dev < 1e-12);
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationHooks& hooks) {
    Recorder rec;
    check_specfun(rec);
    check_bloch(rec);
    check_qfi_core(rec, hooks);
    check_qfi_projected(rec);
    check_crossover(rec);
    check_oracle_machinery(rec);
    check_spins(rec);
    check_many_spin(rec);
    return rec.results;
}

}  // namespace zeno
