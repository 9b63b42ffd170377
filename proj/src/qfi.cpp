#include "zeno/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zeno/specfun.hpp"

namespace zeno {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_mu0(double mu0) {
    if (!(std::abs(mu0) <= 1.0 + 1e-12)) {
        throw std::invalid_argument("|mu0| must not exceed 1");
    }
}

// |a|^p via exp(p ln|a|), with the a = 0 limits filled in.
double abs_pow(double a, double p) {
    if (a == 0.0) {
        if (p > 0.0) return 0.0;
        if (p == 0.0) return 1.0;
        return kInf;
    }
    return std::exp(p * std::log(std::abs(a)));
}

// phi(mu0) / mu0^2 = xi^2 / (exp(2 xi) - mu0^2), finite down to mu0 = 0
// where it equals e^-2. Used wherever the ratio appears so that the
// mu0 -> 0 limit is exact rather than 0/0.
double phi_over_mu0sq(double mu0) {
    double x = xi(mu0);
    return x * x / (std::exp(2.0 * x) - mu0 * mu0);
}

}  // namespace

double qfi_from_polarization(const PolarizationVector& mu, const Vec3& dmu) {
    double d2 = dmu[0] * dmu[0] + dmu[1] * dmu[1] + dmu[2] * dmu[2];
    double m2 = mu.mx * mu.mx + mu.my * mu.my + mu.mz * mu.mz;
    if (m2 == 0.0) {
        return d2;
    }
    double dr = (mu.mx * dmu[0] + mu.my * dmu[1] + mu.mz * dmu[2]) /
                std::sqrt(m2);
    double dt2 = std::max(d2 - dr * dr, 0.0);
    if (m2 >= 1.0) {
        if (std::abs(dr) > 1e-10) {
            throw std::domain_error(
                "qfi_from_polarization: nonzero radial derivative at a pure "
                "state, the radial term diverges");
        }
        return dt2;
    }
    return dr * dr / (1.0 - m2) + dt2;
}

Vec3 d_mu_d_wx(const PrecessionFrequency& omega, double mu0, double t) {
    check_mu0(mu0);
    double wx = omega.wx;
    double wz = omega.wz;
    double w = omega.w();
    double w2 = w * w;
    double w3 = w2 * w;
    double w4 = w2 * w2;
    double c = std::cos(w * t);
    double s = std::sin(w * t);
    double dx = wz * (wz * wz - wx * wx) * (1.0 - c) / w4 +
                wx * wx * wz * t * s / w3;
    double dy = -wz * wz * s / w3 - (wx * wx / w2) * t * c;
    double dz = -2.0 * wx * wz * wz * (1.0 - c) / w4 -
                (wx * wx * wx / w3) * t * s;
    return {mu0 * dx, mu0 * dy, mu0 * dz};
}

QfiEvaluation qfi_coherent(const PrecessionFrequency& omega, double mu0,
                           double t) {
    check_mu0(mu0);
    if (!(t >= 0.0)) {
        throw std::invalid_argument("qfi_coherent: t must be >= 0");
    }
    QfiEvaluation out{Protocol::coherent, t, std::nullopt, 0.0, Formula::exact};
    if (t == 0.0) {
        return out;
    }
    double wx2 = omega.wx * omega.wx;
    double wz2 = omega.wz * omega.wz;
    double w = omega.w();
    double w2 = w * w;
    double w4 = w2 * w2;
    double c = std::cos(w * t);
    double s = std::sin(w * t);
    double value = (wx2 * wx2 / w4) * t * t +
                   2.0 * wx2 * wz2 / (w4 * w) * t * s +
                   wz2 / w4 * ((1.0 - c) * (1.0 - c) + wz2 / w2 * s * s);
    out.value = std::max(mu0 * mu0 * value, 0.0);
    return out;
}

QfiEvaluation qfi_coherent_longtime(const PrecessionFrequency& omega,
                                    double mu0, double t) {
    check_mu0(mu0);
    if (!(t >= 0.0)) {
        throw std::invalid_argument("qfi_coherent_longtime: t must be >= 0");
    }
    double r2 = omega.wx * omega.wx / (omega.w() * omega.w());
    return {Protocol::coherent, t, std::nullopt, mu0 * mu0 * r2 * r2 * t * t,
            Formula::long_time_approx};
}

double d_alpha_d_wx(const PrecessionFrequency& omega, double tau) {
    double wx = omega.wx;
    double wz = omega.wz;
    double w = omega.w();
    double w2 = w * w;
    double c = std::cos(w * tau);
    double s = std::sin(w * tau);
    return -(wx / w) *
           (2.0 * wz * wz / (w2 * w) * (1.0 - c) + (wx * wx / w2) * tau * s);
}

QfiEvaluation qfi_projected(const PrecessionFrequency& omega, double mu0,
                            const MeasurementSchedule& sched, Formula which) {
    check_mu0(mu0);
    if (which != Formula::stroboscopic_approx &&
        which != Formula::appendix_b_full) {
        throw std::invalid_argument(
            "qfi_projected: formula must be stroboscopic_approx or "
            "appendix_b_full");
    }
    QfiEvaluation out{Protocol::projected, sched.total_t, sched.tau, 0.0,
                      which};
    if (sched.total_t == 0.0 || mu0 == 0.0) {
        return out;
    }
    // cos rounding can push |alpha| a hair past 1, which would flip the
    // sign of the 1 - mu0^2 alpha^(2n) denominator at large n.
    double a = std::clamp(alpha(omega, sched.tau), -1.0, 1.0);
    double da = d_alpha_d_wx(omega, sched.tau);
    double mu02 = mu0 * mu0;

    if (which == Formula::stroboscopic_approx) {
        double r = sched.total_t / sched.tau;
        double num = abs_pow(a, 2.0 * (r - 1.0));
        double den = 1.0 - mu02 * abs_pow(a, 2.0 * r);
        out.value = sched.total_t * sched.total_t * mu02 /
                    (sched.tau * sched.tau) * num / den * da * da;
        return out;
    }

    double a2n = ipow(a, 2 * sched.n);
    double value = 0.0;
    if (sched.n > 0) {
        double nn = static_cast<double>(sched.n);
        value = mu02 * nn * nn * ipow(a, 2 * (sched.n - 1)) /
                (1.0 - mu02 * a2n) * da * da;
    }
    Vec3 dmu = d_mu_d_wx(omega, 1.0, sched.dt);
    value += mu02 * a2n *
             (dmu[0] * dmu[0] + dmu[1] * dmu[1] + dmu[2] * dmu[2]);
    out.value = value;
    return out;
}

QfiEvaluation qfi_projected(const PrecessionFrequency& omega, double mu0,
                            double tau, double t, Formula which) {
    return qfi_projected(omega, mu0, MeasurementSchedule::from_total(tau, t),
                         which);
}

double t_max(const PrecessionFrequency& omega, double mu0, double tau) {
    return xi(std::abs(mu0)) * characteristic_time(omega, tau);
}

double qfi_projected_max(const PrecessionFrequency& omega, double mu0,
                         double tau) {
    double tc = characteristic_time(omega, tau);
    if (!std::isfinite(tc)) {
        return kInf;
    }
    double a = alpha(omega, tau);
    if (a == 0.0) {
        // The continuous envelope diverges as t -> tau from below.
        return kInf;
    }
    double wx2 = omega.wx * omega.wx;
    double wz2 = omega.wz * omega.wz;
    double w = omega.w();
    double w2 = w * w;
    double c = std::cos(w * tau);
    double s = std::sin(w * tau);
    double bracket =
        2.0 * (1.0 - c) / (w * tau) * wz2 / w2 + s * wx2 / w2;
    return phi(std::abs(mu0)) * tc * tc / (a * a) * (wx2 / w2) * bracket *
           bracket;
}

double qfi_ratio_max(const PrecessionFrequency& omega, double mu0, double t) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("qfi_ratio_max: t must be > 0");
    }
    double k = phi_over_mu0sq(std::abs(mu0));
    double wx2 = omega.wx * omega.wx;
    double w2 = omega.w() * omega.w();
    return 4.0 * k * w2 * w2 / (wx2 * wx2 * wx2 * t * t);
}

double projective_wins_time_bound(const PrecessionFrequency& omega,
                                  double mu0) {
    double k = phi_over_mu0sq(std::abs(mu0));
    double wx2 = omega.wx * omega.wx;
    return 2.0 * std::sqrt(k) / std::abs(omega.wx) *
           (1.0 + omega.wz * omega.wz / wx2);
}

double boundary_curve(double wx, double t, double mu0) {
    if (wx == 0.0 || !std::isfinite(wx)) {
        throw std::invalid_argument("boundary_curve: wx must be finite and nonzero");
    }
    if (!(t > 0.0)) {
        throw std::invalid_argument("boundary_curve: t must be > 0");
    }
    double k = phi_over_mu0sq(std::abs(mu0));
    double awx = std::abs(wx);
    // ratio = 1 is equivalent to wx^2 + wz^2 = |wx|^3 t / (2 sqrt(k)),
    // which guides the bracket; the returned root comes from bisection on
    // the ratio itself.
    double target = awx * awx * awx * t / (2.0 * std::sqrt(k));
    if (target < wx * wx) {
        throw std::runtime_error(
            "boundary_curve: no crossover, t is below the wz = 0 bound");
    }
    double guess = std::sqrt(target - wx * wx);

    auto excess = [&](double wz) {
        return qfi_ratio_max(PrecessionFrequency(wx, wz), mu0, t) - 1.0;
    };
    double lo = 0.0;
    double hi = std::max(guess * 1.05, 1e-12 * awx);
    for (int i = 0; i < 60 && excess(hi) < 0.0; ++i) {
        hi *= 10.0;
    }
    if (excess(hi) < 0.0) {
        throw std::runtime_error("boundary_curve: failed to bracket the root");
    }
    while (hi - lo > 1e-10 * (hi + awx)) {
        double mid = 0.5 * (lo + hi);
        if (excess(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace zeno
