#pragma once

#include <array>
#include <optional>

#include "zeno/bloch.hpp"

// Quantum Fisher information about the coupling wx, for the free and the
// projectively monitored probe, plus the closed-form measurement optima
// built on top of them. All values carry units of 1/frequency^2.

namespace zeno {

enum class Protocol { coherent, projected };

// Which closed form produced a projected-protocol value.
//  - stroboscopic_approx: the continuous-in-t envelope form with exponent
//    2(t/tau - 1); exact at stroboscopic instants t = n tau.
//  - appendix_b_full: the exact split into n completed periods plus the
//    coherent remainder; agrees with the oracle at every t.
enum class Formula { exact, long_time_approx, stroboscopic_approx, appendix_b_full };

struct QfiEvaluation {
    Protocol protocol;
    double t;
    std::optional<double> tau;  // engaged iff protocol == projected
    double value;               // >= 0
    Formula formula;
};

using Vec3 = std::array<double, 3>;

// Fisher information of a Bloch vector mu with parameter derivative dmu:
// (radial)^2 / (1 - |mu|^2) + (tangential)^2. At |mu| = 0 the radial
// direction is undefined and the value reduces to |dmu|^2. For pure states
// (|mu| >= 1 within validation slack) the radial derivative must vanish
// (|radial| <= 1e-10), otherwise std::domain_error is thrown because the
// expression diverges.
double qfi_from_polarization(const PolarizationVector& mu, const Vec3& dmu);

// Derivative of the freely precessing Bloch vector with respect to wx,
// obtained by direct differentiation of the closed-form evolution.
Vec3 d_mu_d_wx(const PrecessionFrequency& omega, double mu0, double t);

// QFI of the free probe at time t, in closed form. Returns exactly 0 at
// t = 0. Equals the composition of evolve_coherent and d_mu_d_wx through
// qfi_from_polarization to 1e-10 relative.
QfiEvaluation qfi_coherent(const PrecessionFrequency& omega, double mu0,
                           double t);

// Long-time envelope mu0^2 (wx/w)^4 t^2 of the free-probe QFI.
QfiEvaluation qfi_coherent_longtime(const PrecessionFrequency& omega,
                                    double mu0, double t);

// d alpha / d wx at fixed period tau, by direct differentiation:
// -(wx/w) * (2 wz^2/w^3 (1 - cos w tau) + (wx^2/w^2) tau sin(w tau)).
double d_alpha_d_wx(const PrecessionFrequency& omega, double tau);

// QFI of the monitored probe for the given schedule. Formula must be
// stroboscopic_approx or appendix_b_full. At stroboscopic instants build the
// schedule with MeasurementSchedule::from_parts(tau, n, 0): the value jumps
// at measurement times, and from_total can land on either side of the jump
// when n*tau rounds.
QfiEvaluation qfi_projected(const PrecessionFrequency& omega, double mu0,
                            const MeasurementSchedule& sched, Formula which);

// Convenience overload decomposing t via MeasurementSchedule::from_total.
QfiEvaluation qfi_projected(const PrecessionFrequency& omega, double mu0,
                            double tau, double t, Formula which);

// Time maximizing the stroboscopic-envelope QFI: t_max = xi(|mu0|) * t_c.
// Propagates the infinite-t_c sentinel of characteristic_time.
double t_max(const PrecessionFrequency& omega, double mu0, double tau);

// Peak value of the stroboscopic-envelope QFI, reached at t_max.
// Returns +infinity in the sentinel cases where the envelope never decays
// (|alpha(tau)| rounds to 1) or diverges below the first measurement
// (alpha(tau) == 0).
double qfi_projected_max(const PrecessionFrequency& omega, double mu0,
                         double tau);

// Best projected-to-coherent QFI ratio achievable at time t:
// (4 phi / mu0^2) * w^4 / (wx^6 t^2), evaluated in a cancellation-free form
// that is exact in the mu0 -> 0 limit.
double qfi_ratio_max(const PrecessionFrequency& omega, double mu0, double t);

// Time horizon below which the monitored probe can beat the free one:
// the ratio above equals 1 exactly at this t.
double projective_wins_time_bound(const PrecessionFrequency& omega,
                                  double mu0);

// Offset wz >= 0 on which the ratio equals 1 for given wx and t, found by
// bisection (relative tolerance 1e-10). Throws std::runtime_error when no
// root exists, i.e. when t is below the wz = 0 crossover time.
double boundary_curve(double wx, double t, double mu0);

}  // namespace zeno
