#pragma once

#include <string>
#include <vector>

// Deterministic CSV sweeps behind the zeno-sense figure commands, plus the
// optional oracle spot checks. Byte-identical output across runs: fixed
// grids, no locale, %.17g formatting, LF line endings.

namespace zeno {

struct GridSpec {
    double min;
    double max;
    int count;
    bool log_spaced;

    // count >= 2, min < max, and log spacing needs min > 0.
    std::vector<double> points() const;
};

struct FigureResult {
    std::string csv;
    std::vector<std::string> report;
    bool ok = true;  // false when an oracle spot check misses its tolerance
};

// Coherent-probe QFI over (theta, t), with the fixed-information contour
// t*(theta) and its t cos^2(theta) fit. Columns: theta,t,qfi_coh.
struct Fig2Config {
    GridSpec theta{0.1, 1.4, 27, false};
    GridSpec t{1.0, 200.0, 60, true};
    double omega = 6.283185307179586;
    double mu0 = 1.0;
    double contour_level = 25.0;
};
FigureResult run_fig2(const Fig2Config& cfg, int spotcheck = 0);

// Decay time t_c(tau) plus polarization traces for the free, Zeno and
// anti-Zeno schedules. Columns: series,x,y. The tau sweep is prefixed with
// decade points down to 1e-9, where |alpha| rounds to 1 and t_c is inf.
struct Fig3Config {
    GridSpec tau{0.02, 0.98, 97, false};
    double theta = 1.4137166941154069;  // 0.45 pi
    double omega = 6.283185307179586;
    double mu0 = 1.0;
    double zeno_tau = 0.1;
    double anti_zeno_tau = 0.375;
    double trace_t_max = 20.0;
    int trace_count = 1001;
};
FigureResult run_fig3(const Fig3Config& cfg, int spotcheck = 0);

// Monitored-probe QFI over (tau, t) with the peak ridge (t_max, qfi_max)
// per tau. Columns: series,tau,t,value.
struct Fig4Config {
    GridSpec tau{1e-3, 0.9, 45, true};
    GridSpec t{0.5, 30.0, 60, false};
    double theta = 1.4137166941154069;
    double omega = 6.283185307179586;
    double mu0 = 1.0;
};
FigureResult run_fig4(const Fig4Config& cfg, int spotcheck = 0);

// Best monitored-to-free ratio over (theta, t) with the ratio = 1 boundary
// and its square-root fit. Columns: theta,t,ratio.
struct Fig5Config {
    GridSpec theta{0.05, 1.52, 74, false};
    GridSpec t{5.0, 100.0, 40, true};
    double omega = 6.283185307179586;
    double mu0 = 1.0;
};
FigureResult run_fig5(const Fig5Config& cfg, int spotcheck = 0);

// %.17g, with infinities and NaNs spelled inf/-inf/nan.
std::string format_g17(double v);

}  // namespace zeno
