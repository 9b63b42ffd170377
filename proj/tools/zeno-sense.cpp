#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeno/bloch.hpp"
#include "zeno/figures.hpp"
#include "zeno/qfi.hpp"
#include "zeno/spins.hpp"
#include "zeno/validate.hpp"

namespace {

// With --out the CSV goes to the file and the report to stdout; without it
// the CSV goes to stdout and the report to stderr, so piping stays clean.
int emit_figure(const zeno::FigureResult& res, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << res.csv;
        for (const auto& line : res.report) std::cerr << line << '\n';
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << res.csv;
        if (!out) throw std::runtime_error("cannot write " + out_path);
        for (const auto& line : res.report) std::cout << line << '\n';
    }
    return res.ok ? 0 : 1;
}

void add_grid_options(CLI::App* cmd, const std::string& stem,
                      zeno::GridSpec& grid) {
    cmd->add_option("--" + stem + "-min", grid.min, "smallest " + stem)
        ->capture_default_str();
    cmd->add_option("--" + stem + "-max", grid.max, "largest " + stem)
        ->capture_default_str();
    cmd->add_option("--" + stem + "-count", grid.count,
                    "number of " + stem + " points")
        ->capture_default_str();
}

std::string describe(const zeno::PrecessionFrequency& omega) {
    return "wx = " + zeno::format_g17(omega.wx) +
           ", wz = " + zeno::format_g17(omega.wz) +
           ", w = " + zeno::format_g17(omega.w()) +
           ", theta = " + zeno::format_g17(omega.theta());
}

void print_zeno_peak(const zeno::PrecessionFrequency& omega, double mu0,
                     double tau) {
    std::cout << "stroboscopic peak at tau = " << zeno::format_g17(tau)
              << ": t_max = " << zeno::format_g17(zeno::t_max(omega, mu0, tau))
              << ", qfi_max = "
              << zeno::format_g17(zeno::qfi_projected_max(omega, mu0, tau))
              << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Quantum-Zeno probe numerics: QFI sweeps, oracle validation and "
        "spin-system mappings"};
    app.set_config("--config", "",
                   "read options from an INI file ([fig2] etc. sections "
                   "with key=value lines, # comments)");
    app.allow_config_extras(false);
    app.fallthrough();
    app.require_subcommand(1);

    int rc = 0;

    zeno::Fig2Config c2;
    std::string out2;
    int spot2 = 0;
    auto* fig2 = app.add_subcommand(
        "fig2", "coherent-probe qfi over (theta, t) with the "
                "fixed-information contour");
    add_grid_options(fig2, "theta", c2.theta);
    add_grid_options(fig2, "t", c2.t);
    fig2->add_option("--omega", c2.omega, "precession magnitude")
        ->capture_default_str();
    fig2->add_option("--mu0", c2.mu0, "initial polarization")
        ->capture_default_str();
    fig2->add_option("--level", c2.contour_level, "qfi value of the contour")
        ->capture_default_str();
    fig2->add_option("--out", out2, "write the csv to this file");
    fig2->add_option("--oracle-spotcheck", spot2,
                     "cross-check this many random cells against the oracle");
    fig2->callback([&] { rc = emit_figure(zeno::run_fig2(c2, spot2), out2); });

    zeno::Fig3Config c3;
    std::string out3;
    int spot3 = 0;
    auto* fig3 = app.add_subcommand(
        "fig3", "decay time over tau plus free/zeno/anti-zeno polarization "
                "traces");
    add_grid_options(fig3, "tau", c3.tau);
    fig3->add_option("--theta", c3.theta, "precession polar angle")
        ->capture_default_str();
    fig3->add_option("--omega", c3.omega, "precession magnitude")
        ->capture_default_str();
    fig3->add_option("--mu0", c3.mu0, "initial polarization")
        ->capture_default_str();
    fig3->add_option("--zeno-tau", c3.zeno_tau, "period of the zeno trace")
        ->capture_default_str();
    fig3->add_option("--antizeno-tau", c3.anti_zeno_tau,
                     "period of the anti-zeno trace")
        ->capture_default_str();
    fig3->add_option("--trace-tmax", c3.trace_t_max,
                     "largest time in the traces")
        ->capture_default_str();
    fig3->add_option("--trace-count", c3.trace_count,
                     "number of time points per trace")
        ->capture_default_str();
    fig3->add_option("--out", out3, "write the csv to this file");
    fig3->add_option("--oracle-spotcheck", spot3,
                     "cross-check this many random rows against the oracle");
    fig3->callback([&] { rc = emit_figure(zeno::run_fig3(c3, spot3), out3); });

    zeno::Fig4Config c4;
    std::string out4;
    int spot4 = 0;
    auto* fig4 = app.add_subcommand(
        "fig4", "monitored-probe qfi over (tau, t) with the peak ridge");
    add_grid_options(fig4, "tau", c4.tau);
    add_grid_options(fig4, "t", c4.t);
    fig4->add_option("--theta", c4.theta, "precession polar angle")
        ->capture_default_str();
    fig4->add_option("--omega", c4.omega, "precession magnitude")
        ->capture_default_str();
    fig4->add_option("--mu0", c4.mu0, "initial polarization")
        ->capture_default_str();
    fig4->add_option("--out", out4, "write the csv to this file");
    fig4->add_option("--oracle-spotcheck", spot4,
                     "cross-check this many random cells against the oracle");
    fig4->callback([&] { rc = emit_figure(zeno::run_fig4(c4, spot4), out4); });

    zeno::Fig5Config c5;
    std::string out5;
    int spot5 = 0;
    auto* fig5 = app.add_subcommand(
        "fig5", "monitored-to-free qfi ratio over (theta, t) with the "
                "crossover boundary");
    add_grid_options(fig5, "theta", c5.theta);
    add_grid_options(fig5, "t", c5.t);
    fig5->add_option("--omega", c5.omega, "precession magnitude")
        ->capture_default_str();
    fig5->add_option("--mu0", c5.mu0, "initial polarization")
        ->capture_default_str();
    fig5->add_option("--out", out5, "write the csv to this file");
    fig5->add_option("--oracle-spotcheck", spot5,
                     "cross-check this many random cells against the oracle");
    fig5->callback([&] { rc = emit_figure(zeno::run_fig5(c5, spot5), out5); });

    auto* val = app.add_subcommand(
        "validate", "run every closed form against the independent oracles");
    val->callback([&] {
        auto results = zeno::run_validation();
        size_t failed = 0;
        for (const auto& check : results) {
            if (!check.pass) ++failed;
            std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name
                      << ": observed " << zeno::format_g17(check.observed)
                      << ", threshold " << zeno::format_g17(check.tolerance)
                      << '\n';
        }
        std::cout << (results.size() - failed) << "/" << results.size()
                  << " checks passed\n";
        rc = failed == 0 ? 0 : 1;
    });

    auto* spins = app.add_subcommand(
        "spins", "map concrete spin systems onto the probe model");
    spins->require_subcommand(1);

    double two_b = 0.0;
    double two_delta = 0.0;
    double two_omega0 = 0.0;
    double two_kt = 0.0;
    double two_mu0 = 1.0;
    double two_tau = 0.0;
    auto* two = spins->add_subcommand(
        "two", "probe coupled to one partner spin by a flip-flop term");
    two->add_option("--b", two_b, "flip-flop coupling")->required();
    two->add_option("--delta", two_delta, "splitting offset")
        ->capture_default_str();
    auto* two_kt_opt =
        two->add_option("--kT", two_kt, "temperature, same units as the "
                                        "splitting");
    auto* two_omega0_opt =
        two->add_option("--omega0-i", two_omega0,
                        "partner splitting for the thermal polarization")
            ->needs(two_kt_opt);
    two_kt_opt->needs(two_omega0_opt);
    auto* two_mu0_opt = two->add_option(
        "--mu0", two_mu0, "initial polarization (overrides the thermal one)");
    two->add_option("--tau", two_tau,
                    "measurement period for the stroboscopic peak");
    two->callback([&] {
        zeno::TwoSpinSpec spec{two_b, two_delta};
        auto omega = zeno::two_spin_effective_omega(spec);
        std::cout << "effective precession: " << describe(omega) << '\n';
        double mu0 = two_mu0;
        if (two_mu0_opt->count() == 0 && two_kt_opt->count() > 0) {
            auto pol = zeno::two_spin_initial_mu0(two_omega0, two_kt);
            std::cout << "thermal polarization: exact "
                      << zeno::format_g17(pol.exact) << ", high-temperature "
                      << zeno::format_g17(pol.high_temperature) << '\n';
            mu0 = pol.exact;
        }
        std::cout << "initial polarization mu0 = " << zeno::format_g17(mu0)
                  << '\n';
        std::cout << "projective advantage bound: t < "
                  << zeno::format_g17(zeno::two_spin_projective_bound(spec))
                  << '\n';
        if (two_tau > 0.0) print_zeno_peak(omega, mu0, two_tau);
    });

    zeno::ThreeSpinSpec tspec;
    double three_mu0 = 1.0;
    double three_tau = 0.0;
    auto* three = spins->add_subcommand(
        "three", "probe coupled to a partner pair (symmetric or mirror "
                 "couplings reduce to two levels)");
    three->add_option("--b1", tspec.b1, "flip-flop coupling to partner 1")
        ->required();
    three->add_option("--b2", tspec.b2, "flip-flop coupling to partner 2")
        ->required();
    three->add_option("--d", tspec.d, "partner-partner dipolar coupling")
        ->capture_default_str();
    three->add_option("--delta", tspec.delta, "probe-partner splitting "
                                              "difference")
        ->capture_default_str();
    three->add_option("--sigma", tspec.sigma, "total splitting sum")
        ->capture_default_str();
    three->add_option("--mu0", three_mu0, "initial polarization")
        ->capture_default_str();
    three->add_option("--tau", three_tau,
                      "measurement period for the stroboscopic peak");
    three->callback([&] {
        auto block = zeno::three_spin_block_hamiltonian(tspec);
        std::cout << "single-flip block (basis: symmetric pair, both-up "
                     "pair, antisymmetric pair):\n";
        for (int r = 0; r < 3; ++r) {
            std::cout << "  [" << zeno::format_g17(block(r, 0)) << ", "
                      << zeno::format_g17(block(r, 1)) << ", "
                      << zeno::format_g17(block(r, 2)) << "]\n";
        }
        auto omega = zeno::three_spin_effective_omega(tspec);
        std::cout << "effective precession: " << describe(omega) << '\n';
        std::cout << "projective advantage bound: t < "
                  << zeno::format_g17(zeno::three_spin_projective_bound(tspec))
                  << '\n';
        if (three_tau > 0.0) print_zeno_peak(omega, three_mu0, three_tau);
    });

    std::vector<double> offsets;
    std::vector<double> couplings;
    int many_spin = 0;
    double many_t = 0.0;
    double many_mu0 = 1.0;
    double many_tau = 0.0;
    auto* many = spins->add_subcommand(
        "many", "short-time polarization-transfer diagnostics of a coupled "
                "network");
    many->add_option("--offsets", offsets,
                     "comma-separated z offsets, one per spin")
        ->delimiter(',')
        ->required();
    many->add_option("--couplings", couplings,
                     "comma-separated upper triangle of the coupling matrix, "
                     "row by row")
        ->delimiter(',')
        ->required();
    many->add_option("--spin", many_spin, "probed spin index")
        ->capture_default_str();
    many->add_option("--t", many_t, "evolution time")->required();
    many->add_option("--mu0", many_mu0, "initial polarization")
        ->capture_default_str();
    many->add_option("--tau", many_tau,
                     "measurement period for the quoted zeno optimum");
    many->callback([&] {
        int n = static_cast<int>(offsets.size());
        if (couplings.size() != static_cast<size_t>(n * (n - 1) / 2)) {
            throw CLI::ValidationError(
                "--couplings", "expected n(n-1)/2 entries for n spins");
        }
        if (many_spin < 0 || many_spin >= n) {
            throw CLI::ValidationError("--spin", "index out of range");
        }
        zeno::ManySpinSpec spec;
        spec.offsets = offsets;
        spec.couplings = Eigen::MatrixXd::Zero(n, n);
        size_t k = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                spec.couplings(i, j) = couplings[k];
                spec.couplings(j, i) = couplings[k];
                ++k;
            }
        }
        spec.validate();
        auto st = zeno::many_spin_short_time_Iz(spec, many_spin, many_t);
        std::cout << n << " spins, probing spin " << many_spin << " at t = "
                  << zeno::format_g17(many_t) << '\n';
        std::cout << "expansion validity figure (small is good): "
                  << zeno::format_g17(st.validity) << '\n';
        std::cout << "self coefficient: "
                  << zeno::format_g17(st.self_coefficient) << '\n';
        for (int j = 0; j < n; ++j) {
            if (j == many_spin) continue;
            std::cout << "transfer from spin " << j << ": "
                      << zeno::format_g17(st.transfer[static_cast<size_t>(j)])
                      << '\n';
        }
        double b_eff = zeno::many_spin_effective_coupling(spec, many_spin);
        std::cout << "effective coupling b_eff = " << zeno::format_g17(b_eff)
                  << '\n';
        if (many_tau > 0.0) {
            auto opt = zeno::many_spin_zeno_optimum(b_eff, many_mu0, many_tau);
            std::cout << "quoted zeno optimum: t_max = "
                      << zeno::format_g17(opt.t_max)
                      << ", qfi_max = " << zeno::format_g17(opt.qfi_max)
                      << " (an isolated pair peaks at a quarter and a "
                         "sixteenth of these)\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
