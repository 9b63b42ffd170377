#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zeno/bloch.hpp"

// Cross-validation of every closed form against the independent oracle
// machinery: identities, frozen anchors, finite differences and stepped
// density-matrix propagation. The CLI exposes this as `zeno-sense validate`.

namespace zeno {

struct CheckResult {
    std::string name;
    // Threshold the observed figure is compared against. Most checks pass
    // when observed <= tolerance; the residual-doubling check passes when
    // the observed exponent is at least the threshold.
    double tolerance;
    double observed;
    bool pass;
};

// Injection points for the self-test of the harness itself: swapping in a
// deliberately wrong derivative must make the corresponding check fail.
struct ValidationHooks {
    std::function<double(const PrecessionFrequency&, double)> d_alpha_d_wx;
};

std::vector<CheckResult> run_validation(const ValidationHooks& hooks = {});

}  // namespace zeno
