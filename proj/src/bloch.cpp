#include "zeno/bloch.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace zeno {

PrecessionFrequency::PrecessionFrequency(double wx_, double wz_)
    : wx(wx_), wz(wz_) {
    if (!std::isfinite(wx) || !std::isfinite(wz)) {
        throw std::invalid_argument(
            "PrecessionFrequency: components must be finite");
    }
    if (wx == 0.0) {
        throw std::invalid_argument(
            "PrecessionFrequency: wx must be nonzero (it is the estimated "
            "coupling)");
    }
}

PrecessionFrequency PrecessionFrequency::from_polar(double w, double theta) {
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument("PrecessionFrequency: w must be positive");
    }
    return PrecessionFrequency(w * std::cos(theta), w * std::sin(theta));
}

PolarizationVector::PolarizationVector(double mx_, double my_, double mz_)
    : mx(mx_), my(my_), mz(mz_) {
    if (!std::isfinite(mx) || !std::isfinite(my) || !std::isfinite(mz)) {
        throw std::invalid_argument(
            "PolarizationVector: components must be finite");
    }
    if (norm() > 1.0 + 1e-12) {
        throw std::invalid_argument("PolarizationVector: |mu| exceeds 1");
    }
}

MeasurementSchedule MeasurementSchedule::from_total(double tau,
                                                    double total_t) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("MeasurementSchedule: tau must be > 0");
    }
    if (!(total_t >= 0.0) || !std::isfinite(total_t)) {
        throw std::invalid_argument("MeasurementSchedule: total_t must be >= 0");
    }
    auto n = static_cast<long long>(std::floor(total_t / tau));
    double dt = total_t - static_cast<double>(n) * tau;
    // The quotient can round across an integer; renormalize so dt in [0, tau).
    if (dt < 0.0) {
        n -= 1;
        dt = total_t - static_cast<double>(n) * tau;
    }
    if (dt >= tau) {
        n += 1;
        dt = total_t - static_cast<double>(n) * tau;
    }
    if (dt < 0.0) dt = 0.0;
    return MeasurementSchedule(tau, total_t, n, dt);
}

MeasurementSchedule MeasurementSchedule::from_parts(double tau, long long n,
                                                    double dt) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("MeasurementSchedule: tau must be > 0");
    }
    if (n < 0) {
        throw std::invalid_argument("MeasurementSchedule: n must be >= 0");
    }
    if (!(dt >= 0.0) || dt >= tau) {
        throw std::invalid_argument(
            "MeasurementSchedule: dt must lie in [0, tau)");
    }
    double total_t = static_cast<double>(n) * tau + dt;
    return MeasurementSchedule(tau, total_t, n, dt);
}

double ipow(double base, long long n) {
    if (n < 0) {
        throw std::invalid_argument("ipow: exponent must be >= 0");
    }
    double acc = 1.0;
    double b = base;
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

namespace {

void check_mu0(double mu0) {
    if (!(std::abs(mu0) <= 1.0 + 1e-12)) {
        throw std::invalid_argument("|mu0| must not exceed 1");
    }
}

}  // namespace

PolarizationVector evolve_coherent(const PrecessionFrequency& omega,
                                   double mu0, double t) {
    check_mu0(mu0);
    double w = omega.w();
    double w2 = w * w;
    double half = std::sin(0.5 * w * t);
    double s = std::sin(w * t);
    double mx = mu0 * (omega.wx * omega.wz / w2) * 2.0 * half * half;
    double my = -mu0 * (omega.wx / w) * s;
    double mz = mu0 * alpha(omega, t);
    return PolarizationVector(mx, my, mz);
}

double alpha(const PrecessionFrequency& omega, double t) {
    // 1 - (wx/w)^2 (1 - cos w t) with 1 - cos written as 2 sin^2(t/2):
    // cancellation-free, exactly 1 at t = 0, and in the Zeno limit it reaches
    // 1 exactly once the correction drops below an ulp, which is what makes
    // the infinite-t_c sentinel reachable.
    double w = omega.w();
    double half = std::sin(0.5 * w * t);
    return 1.0 - (omega.wx * omega.wx) / (w * w) * 2.0 * half * half;
}

double evolve_projected(const PrecessionFrequency& omega, double mu0,
                        const MeasurementSchedule& sched) {
    check_mu0(mu0);
    return mu0 * ipow(alpha(omega, sched.tau), sched.n) *
           alpha(omega, sched.dt);
}

double characteristic_time(const PrecessionFrequency& omega, double tau) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("characteristic_time: tau must be > 0");
    }
    double a = alpha(omega, tau);
    if (a == 0.0) {
        return 0.0;
    }
    double aa = std::abs(a);
    if (aa >= 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    return -tau / std::log(aa);
}

double anti_zeno_tau(const PrecessionFrequency& omega) {
    if (!(omega.wz > std::abs(omega.wx))) {
        throw std::domain_error(
            "anti_zeno_tau: requires a dominant offset, wz > |wx|");
    }
    double period = 2.0 * std::numbers::pi / omega.w();
    double lo = 1e-6 * period;
    double hi = period - 1e-6 * period;
    auto tc = [&](double tau) { return characteristic_time(omega, tau); };

    // Coarse scan to bracket the global minimum, then golden-section within
    // the bracketing cells. t_c need not be unimodal over the whole period.
    constexpr int kScan = 512;
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScan; ++i) {
        double tau = lo + (hi - lo) * i / (kScan - 1);
        double v = tc(tau);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double step = (hi - lo) / (kScan - 1);
    double a = std::max(lo, lo + (best - 1) * step);
    double b = std::min(hi, lo + (best + 1) * step);

    constexpr double kGolden = 0.6180339887498949;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = tc(c);
    double fd = tc(d);
    for (int i = 0; i < 200 && (b - a) > 1e-12 * period; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = tc(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = tc(d);
        }
    }
    if ((b - a) > 1e-10 * period) {
        throw std::runtime_error("anti_zeno_tau: minimization did not converge");
    }
    return 0.5 * (a + b);
}

}  // namespace zeno
