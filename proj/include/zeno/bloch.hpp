#pragma once

#include <cmath>

// Bloch-vector kinematics of a two-level probe precessing about
// omega = (wx, 0, wz), with and without stroboscopic projective
// measurements of sigma_z. The density matrix is rho = (I + mu . sigma)/2,
// so |mu| <= 1 and the initial state is mu0 * zhat.

namespace zeno {

// Precession vector of the probe. wx is the transverse coupling under
// estimation and must be nonzero; the y component is identically zero
// by choice of frame.
struct PrecessionFrequency {
    double wx;
    double wz;

    PrecessionFrequency(double wx_, double wz_);

    double w() const { return std::hypot(wx, wz); }
    double theta() const { return std::atan2(wz, wx); }

    static PrecessionFrequency from_polar(double w, double theta);
};

// Bloch vector with |mu| <= 1 (up to 1e-12 rounding slack).
struct PolarizationVector {
    double mx;
    double my;
    double mz;

    PolarizationVector(double mx_, double my_, double mz_);

    double norm() const { return std::sqrt(mx * mx + my * my + mz * mz); }
};

// Decomposition of a total evolution time into n full measurement periods
// of length tau plus a coherent remainder dt in [0, tau). Satisfies
// n * tau + dt == total_t exactly in floating point.
struct MeasurementSchedule {
    double tau;
    double total_t;
    long long n;
    double dt;

    static MeasurementSchedule from_total(double tau, double total_t);
    static MeasurementSchedule from_parts(double tau, long long n, double dt);

   private:
    MeasurementSchedule(double tau_, double total_t_, long long n_, double dt_)
        : tau(tau_), total_t(total_t_), n(n_), dt(dt_) {}
};

// Integer power by repeated squaring; n >= 0.
double ipow(double base, long long n);

// Free precession of mu0 * zhat for time t. |mu0| <= 1; the sign convention
// follows thermal polarizations, which can be negative.
PolarizationVector evolve_coherent(const PrecessionFrequency& omega, double mu0,
                                   double t);

// Survival factor alpha(t) = wz^2/w^2 + (wx^2/w^2) cos(w t): the z projection
// retained by one coherent stretch of length t.
double alpha(const PrecessionFrequency& omega, double t);

// z polarization after the schedule: mu0 * alpha(tau)^n * alpha(dt).
// Evaluated in closed form, never by stepping.
double evolve_projected(const PrecessionFrequency& omega, double mu0,
                        const MeasurementSchedule& sched);

// Decay time of the projected envelope, t_c = -tau / ln|alpha(tau)|.
// Returns +infinity when |alpha(tau)| rounds to 1 (no decay resolved)
// and 0 when alpha(tau) == 0 (a single period kills the polarization).
double characteristic_time(const PrecessionFrequency& omega, double tau);

// Measurement period in (0, 2pi/w) minimizing the decay time t_c.
// Requires wz > |wx| (a dominant offset); the minimizer is then interior.
double anti_zeno_tau(const PrecessionFrequency& omega);

}  // namespace zeno
