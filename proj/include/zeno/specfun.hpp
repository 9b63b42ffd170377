#pragma once

// Special functions behind the closed-form measurement optima: the principal
// branch of the Lambert W function and the derived polarization factors
// xi(mu0) and phi(mu0).

namespace zeno {

// Principal branch W0, defined for x >= -1/e, with W0(x) >= -1.
// Certified by residual: |w*exp(w) - x| <= 1e-12 absolute over the domain.
// Arguments within 1e-12 of the branch point -1/e return exactly -1.
// Throws std::domain_error below the branch point.
double lambert_w0(double x);

// xi(mu0) = 1 + W0(-2 mu0^2 / e^2) / 2.
// Monotone non-increasing from xi(0) = 1 to xi(1) ~ 0.7968.
// mu0 must lie in [0, 1].
double xi(double mu0);

// phi(mu0) = mu0^2 xi^2 / (exp(2 xi) - mu0^2), with phi(0) = 0 and
// phi(mu0)/mu0^2 -> e^-2 as mu0 -> 0. mu0 must lie in [0, 1].
double phi(double mu0);

}  // namespace zeno
