#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// ZENO_SENSE_BIN is injected by the build and points at the zeno-sense
// executable these tests drive end to end.

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_path(const std::string& stem) {
    static int counter = 0;
    return fs::temp_directory_path() /
           (stem + "-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
}

RunResult run_cli(const std::string& args) {
    fs::path out = temp_path("cli-out");
    fs::path err = temp_path("cli-err");
    std::string cmd = std::string("\"") + ZENO_SENSE_BIN + "\" " + args +
                      " >" + out.string() + " 2>" + err.string();
    int raw = std::system(cmd.c_str());
    RunResult r;
    if (raw != -1 && WIFEXITED(raw)) {
        r.code = WEXITSTATUS(raw);
    }
    r.out = slurp(out);
    r.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

long lines(const std::string& s) {
    return std::count(s.begin(), s.end(), '\n');
}

}  // namespace

TEST_CASE("help exits cleanly, bad arguments exit 2") {
    RunResult help = run_cli("--help");
    CHECK(help.code == 0);
    CHECK(contains(help.out, "fig2"));
    CHECK(contains(help.out, "validate"));

    CHECK(run_cli("fig2 --help").code == 0);
    CHECK(run_cli("--no-such-flag").code == 2);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("spins two").code == 2);  // --b is required

    RunResult bad_grid = run_cli("fig2 --theta-count 1");
    CHECK(bad_grid.code == 2);
    CHECK(contains(bad_grid.err, "error:"));
}

TEST_CASE("validate passes every check") {
    RunResult r = run_cli("validate");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "[PASS]"));
    CHECK_FALSE(contains(r.out, "[FAIL]"));
    CHECK(contains(r.out, "checks passed"));
}

TEST_CASE("fig2 writes a deterministic csv to --out") {
    fs::path a = temp_path("fig2a");
    fs::path b = temp_path("fig2b");
    RunResult ra = run_cli("fig2 --out " + a.string());
    RunResult rb = run_cli("fig2 --out " + b.string());
    CHECK(ra.code == 0);
    CHECK(rb.code == 0);
    // With the csv redirected, the report claims stdout.
    CHECK(contains(ra.out, "contour"));

    std::string csv = slurp(a);
    CHECK(csv == slurp(b));
    CHECK(csv.rfind("theta,t,qfi_coh\n", 0) == 0);
    // Header plus the default 27 x 60 grid.
    CHECK(lines(csv) == 1 + 27 * 60);

    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("without --out the csv goes to stdout and the report to stderr") {
    RunResult r = run_cli("fig2");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("theta,t,qfi_coh\n", 0) == 0);
    CHECK(contains(r.err, "contour"));
    CHECK_FALSE(contains(r.out, "contour"));
}

TEST_CASE("fig3 emits the no-decay sentinel rows") {
    RunResult r = run_cli("fig3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, ",inf\n"));
    CHECK(contains(r.err, "t_c minimum at tau"));
}

TEST_CASE("config file sections configure a subcommand") {
    fs::path cfg = temp_path("cfg");
    {
        std::ofstream f(cfg);
        f << "# small grid for a quick run\n"
          << "[fig2]\n"
          << "theta-count=5\n"
          << "t-count=4\n";
    }
    RunResult r = run_cli("fig2 --config " + cfg.string());
    CHECK(r.code == 0);
    CHECK(lines(r.out) == 1 + 5 * 4);

    std::ofstream(cfg) << "[fig2]\nbogus-key=3\n";
    CHECK(run_cli("fig2 --config " + cfg.string()).code == 2);

    fs::remove(cfg);
    CHECK(run_cli("fig2 --config " + cfg.string()).code == 2);
}

TEST_CASE("an unwritable --out is an error") {
    CHECK(run_cli("fig2 --out /no-such-dir/x.csv").code == 2);
}

TEST_CASE("spins two reports the mapping") {
    RunResult r = run_cli("spins two --b 1.3 --delta 0.6 --kT 5 --omega0-i 2");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "effective precession"));
    CHECK(contains(r.out, "thermal polarization"));
    CHECK(contains(r.out, "projective advantage bound"));

    // --kT and --omega0-i only make sense together.
    CHECK(run_cli("spins two --b 1.3 --kT 5").code == 2);
}

TEST_CASE("spins three reduces symmetric couplings and rejects generic ones") {
    RunResult sym = run_cli("spins three --b1 1.3 --b2 1.3 --d 0.9 --delta 0.6");
    CHECK(sym.code == 0);
    CHECK(contains(sym.out, "single-flip block"));
    CHECK(contains(sym.out, "effective precession"));

    RunResult gen = run_cli("spins three --b1 1.0 --b2 0.5");
    CHECK(gen.code == 2);
    // The block is still printed before the reduction fails.
    CHECK(contains(gen.out, "single-flip block"));
    CHECK(contains(gen.err, "error:"));
}

TEST_CASE("spins many validates the coupling count") {
    RunResult ok = run_cli(
        "spins many --offsets 0.1,-0.05,0.2,0.0 "
        "--couplings 1.7,0.8,1.1,0.0,0.0,0.0 --t 0.01");
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "transfer from spin"));
    CHECK(contains(ok.out, "effective coupling"));

    CHECK(run_cli("spins many --offsets 0.1,0.2 --couplings 1.0,2.0 --t 0.01")
              .code == 2);
}
