#include "zeno/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace zeno {

namespace {

constexpr double kBranchPoint = -0.36787944117144233;  // -1/e

// Seed for the Halley iteration. Near the branch point the expansion in
// p = sqrt(2(e x + 1)) is used because the plain Newton/Halley step loses
// accuracy as W'(x) diverges there.
double w0_seed(double x) {
    if (x < -0.25) {
        double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
        return -1.0 + p - p * p / 3.0 + (11.0 / 72.0) * p * p * p;
    }
    if (x < std::exp(1.0)) {
        return x / (1.0 + x);
    }
    double l1 = std::log(x);
    double l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double x) {
    if (std::isnan(x)) {
        throw std::domain_error("lambert_w0: argument is NaN");
    }
    if (std::abs(x - kBranchPoint) <= 1e-12) {
        return -1.0;
    }
    if (x < kBranchPoint) {
        throw std::domain_error("lambert_w0: argument below -1/e");
    }
    if (x == 0.0) {
        return 0.0;
    }

    double w = w0_seed(x);
    for (int i = 0; i < 50; ++i) {
        double ew = std::exp(w);
        double f = w * ew - x;
        if (std::abs(f) <= 1e-14) {
            break;
        }
        double wp1 = w + 1.0;
        double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        w -= f / denom;
    }
    // Rounding in the final step can land a hair below the principal branch.
    return std::max(w, -1.0);
}

double xi(double mu0) {
    if (!(mu0 >= 0.0 && mu0 <= 1.0)) {
        throw std::domain_error("xi: mu0 must lie in [0, 1]");
    }
    double arg = -2.0 * mu0 * mu0 * std::exp(-2.0);
    return 1.0 + 0.5 * lambert_w0(arg);
}

double phi(double mu0) {
    if (!(mu0 >= 0.0 && mu0 <= 1.0)) {
        throw std::domain_error("phi: mu0 must lie in [0, 1]");
    }
    double x = xi(mu0);
    return mu0 * mu0 * x * x / (std::exp(2.0 * x) - mu0 * mu0);
}

}  // namespace zeno
