#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support/reference.hpp"
#include "wpbc/experiments.hpp"

using namespace wpbc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
    fs::path d = fs::temp_directory_path() / "wpbc_tests" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

fs::path write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Csv {
    std::vector<std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

Csv parse_csv(const fs::path& p) {
    Csv c;
    std::ifstream f(p);
    REQUIRE(f.good());
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            c.meta.push_back(line);
        } else if (c.header.empty()) {
            c.header = split(line);
        } else {
            c.rows.push_back(split(line));
        }
    }
    return c;
}

double cell_d(const Csv& c, size_t row, const std::string& col) {
    for (size_t i = 0; i < c.header.size(); ++i)
        if (c.header[i] == col) return std::strtod(c.rows[row][i].c_str(), nullptr);
    FAIL("no column ", col);
    return 0;
}

std::string cell_s(const Csv& c, size_t row, const std::string& col) {
    for (size_t i = 0; i < c.header.size(); ++i)
        if (c.header[i] == col) return c.rows[row][i];
    FAIL("no column ", col);
    return {};
}

ExperimentConfig small_config(const fs::path& out) {
    ExperimentConfig cfg;
    cfg.scenario.seed = 12345;
    cfg.sweep = {5, 45, 20};  // three points
    cfg.n_trials = 16;
    cfg.convergence_curves = 2;
    cfg.grid.n_p0 = 120;
    cfg.grid.n_tau = 120;
    cfg.output_dir = out.string();
    return cfg;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("dbm conversion") {
    CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dbm_to_watt(0.0) == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(dbm_to_watt(5.0) == doctest::Approx(3.1622776601683794e-3).epsilon(1e-15));
    for (double dbm : {-10.0, 5.0, 25.0, 45.0})
        CHECK(watt_to_dbm(dbm_to_watt(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
}

TEST_CASE("sweep values") {
    SweepSpec def;
    auto v = def.values_dbm();
    REQUIRE(v.size() == 9);
    CHECK(v.front() == 5.0);
    CHECK(v.back() == 45.0);

    SweepSpec odd{5, 26, 10};
    auto w = odd.values_dbm();
    REQUIRE(w.size() == 3);
    CHECK(w[1] == 15.0);
    CHECK(w[2] == 25.0);
}

TEST_CASE("params assembly folds the channel draw") {
    ParamsTemplate t;
    ChannelInstance ch{1.0, 1.0, 2.0e-3, 3.0e-4};  // path loss already folded in
    SystemParams p = make_params(t, ch, 0.5);
    CHECK(p.h0 == 2.0e-3);
    CHECK(p.h1 == 3.0e-4);
    CHECK(p.p_max == 0.5);
    CHECK(p.eta == t.eta);
    CHECK(p.sigma2 == t.sigma2);
    CHECK(p.valid());
}

TEST_CASE("config loading") {
    fs::path dir = scratch_dir("config");

    SUBCASE("overrides and defaults") {
        fs::path f = write_file(dir / "c.json", R"({
            "config_version": 1,
            "scenario": {"seed": 99, "d0_m": 8.0},
            "params": {"p_tc_w": 2e-3},
            "pmax_sweep_dbm": {"start": 10, "stop": 20, "step": 5},
            "n_trials": 7,
            "solver": {"eps": 1e-8},
            "oracle": {"n_p0": 64, "gap_threshold": 0.02}
        })");
        ExperimentConfig c = load_config(f);
        CHECK(c.scenario.seed == 99);
        CHECK(c.scenario.d0 == 8.0);
        CHECK(c.scenario.d1 == 15.0);  // untouched default
        CHECK(c.params.p_tc == 2e-3);
        CHECK(c.params.eta == 0.6);
        CHECK(c.sweep.values_dbm() == std::vector<double>{10, 15, 20});
        CHECK(c.n_trials == 7);
        CHECK(c.solver.eps == 1e-8);
        CHECK(c.solver.l_max == 50);
        CHECK(c.grid.n_p0 == 64);
        CHECK(c.grid.n_tau == 200);
        CHECK(c.oracle_gap_threshold == 0.02);
    }
    SUBCASE("unknown keys are rejected") {
        fs::path f = write_file(dir / "typo.json", R"({"n_trails": 7})");
        CHECK_THROWS_AS(load_config(f), std::runtime_error);
        fs::path g = write_file(dir / "nested.json", R"({"solver": {"epsilon": 1e-8}})");
        CHECK_THROWS_AS(load_config(g), std::runtime_error);
    }
    SUBCASE("bad json and missing file") {
        fs::path f = write_file(dir / "broken.json", "{, nope");
        CHECK_THROWS_AS(load_config(f), std::runtime_error);
        CHECK_THROWS_AS(load_config(dir / "absent.json"), std::runtime_error);
    }
}

TEST_CASE("config hash") {
    ExperimentConfig a;
    ExperimentConfig b;
    CHECK(config_hash(a) == config_hash(b));

    b.output_dir = "/somewhere/else";
    CHECK(config_hash(a) == config_hash(b));  // location must not affect identity

    b.scenario.seed = 31337;
    CHECK(config_hash(a) != config_hash(b));

    ExperimentConfig c;
    c.solver.eps = 1e-7;
    CHECK(config_hash(a) != config_hash(c));

    // canonical form is key-sorted, so it is parseable and stable
    std::string s = canonical_config_json(a);
    CHECK(s.find("output_dir") == std::string::npos);
    CHECK(s.find("\"seed\"") != std::string::npos);
}

TEST_CASE("shortest round-trip formatting") {
    for (double v : {0.0, 1.0, 0.1, 1e-13, 3.1622776601683794e-3, 12.058691153357701,
                     -4938270.604938272, 1e300}) {
        std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("convergence runner") {
    fs::path dir = scratch_dir("conv");
    ExperimentConfig cfg = small_config(dir);
    fs::path csv = run_convergence(cfg);
    Csv c = parse_csv(csv);

    REQUIRE(c.meta.size() >= 4);
    CHECK(c.meta[0].find("wpbc") != std::string::npos);
    bool has_hash = false;
    for (const auto& m : c.meta) has_hash |= m.find("config_hash") != std::string::npos;
    CHECK(has_hash);
    REQUIRE(c.header.size() == 9);
    CHECK(c.header[0] == "curve");
    CHECK(c.header[4] == "iteration");

    // curves 0..n present, per-curve q non-decreasing, all converged
    int max_curve = 0;
    double last_q = 0;
    int last_curve = -1;
    for (size_t i = 0; i < c.rows.size(); ++i) {
        int curve = int(cell_d(c, i, "curve"));
        double q = cell_d(c, i, "q");
        if (curve != last_curve) {
            last_curve = curve;
        } else {
            CHECK(q >= last_q * (1 - 1e-15));
        }
        last_q = q;
        max_curve = std::max(max_curve, curve);
        CHECK(cell_d(c, i, "converged_iteration") > 0);
    }
    CHECK(max_curve == cfg.convergence_curves);
}

TEST_CASE("mode switch runner") {
    fs::path dir = scratch_dir("mode");
    ExperimentConfig cfg = small_config(dir);
    cfg.sweep = {5, 45, 5};
    fs::path csv = run_mode_switch(cfg);
    Csv c = parse_csv(csv);
    REQUIRE(c.rows.size() == 9);

    bool saw_mp = false, saw_aa = false;
    std::string prev_mode;
    int switches = 0;
    for (size_t i = 0; i < c.rows.size(); ++i) {
        double gap = cell_d(c, i, "rel_gap");
        CHECK(gap >= -1e-9);
        CHECK(gap <= 0.01);
        std::string mode = cell_s(c, i, "mode");
        saw_mp |= mode == "max-power";
        saw_aa |= mode == "always-active";
        if (i > 0 && mode != prev_mode) ++switches;
        prev_mode = mode;
        CHECK(cell_d(c, i, "solver_ee") >= cell_d(c, i, "ee_fixed_max_power") * (1 - 1e-9));
        CHECK(cell_d(c, i, "solver_ee") >= cell_d(c, i, "ee_no_sleep") * (1 - 1e-9));
    }
    CHECK(saw_mp);
    CHECK(saw_aa);
    CHECK(switches == 1);  // one clean crossover along the sweep
}

TEST_CASE("ee sweep runner") {
    fs::path dir = scratch_dir("sweep");
    ExperimentConfig cfg = small_config(dir);
    fs::path csv = run_ee_sweep(cfg);
    Csv c = parse_csv(csv);
    REQUIRE(c.rows.size() == 3 * 4);  // three sweep points, four schemes

    // paired draws make the average ordering inherit pointwise dominance
    for (size_t base = 0; base < c.rows.size(); base += 4) {
        REQUIRE(cell_s(c, base, "scheme") == "optimal-ee");
        double top = cell_d(c, base, "avg_ee");
        CHECK(top > 0);
        for (size_t j = 1; j < 4; ++j) {
            CHECK(top >= cell_d(c, base + j, "avg_ee") * (1 - 1e-9));
            CHECK(cell_d(c, base + j, "n_trials") == 16);
            CHECK(cell_d(c, base + j, "n_infeasible") >= 0);
        }
    }
    // the no-sleep scheme cannot run at a 5 dBm cap in this geometry
    REQUIRE(cell_s(c, 3, "scheme") == "no-sleep");
    CHECK(cell_d(c, 3, "n_infeasible") == 16);
}

TEST_CASE("oracle check runner") {
    fs::path dir = scratch_dir("ocheck");
    ExperimentConfig cfg = small_config(dir);
    cfg.n_trials = 12;
    OracleCheckSummary s = run_oracle_check(cfg);
    CHECK(s.n == 12);
    CHECK(s.n_certified + s.n_vacuous == 12);
    CHECK(s.n_failed == 0);
    CHECK(s.worst_gap <= cfg.oracle_gap_threshold);
    Csv c = parse_csv(s.csv);
    REQUIRE(int(c.rows.size()) == 12);
    for (size_t i = 0; i < c.rows.size(); ++i) CHECK(cell_d(c, i, "row_ok") == 1);
}

TEST_CASE("outputs are byte identical across runs") {
    fs::path a = scratch_dir("rep_a");
    fs::path b = scratch_dir("rep_b");
    ExperimentConfig ca = small_config(a);
    ExperimentConfig cb = small_config(b);
    ca.n_trials = cb.n_trials = 8;

    CHECK(slurp(run_ee_sweep(ca)) == slurp(run_ee_sweep(cb)));
    CHECK(slurp(run_convergence(ca)) == slurp(run_convergence(cb)));
    CHECK(slurp(run_mode_switch(ca)) == slurp(run_mode_switch(cb)));
}

TEST_CASE("solve printer") {
    ExperimentConfig cfg;
    std::ostringstream os;
    print_solve(os, cfg, 25.0, true, 0);
    std::string s = os.str();
    CHECK(s.find("mode: ") != std::string::npos);
    CHECK(s.find("ee=") != std::string::npos);
    CHECK(s.find("trace") != std::string::npos);
    CHECK(s.find("baselines:") != std::string::npos);

    // deep fade at a small cap still prints a feasible long-sleep answer
    std::ostringstream os2;
    cfg.scenario.seed = 12345;
    print_solve(os2, cfg, 5.0, false, 2);
    CHECK(os2.str().find("allocation:") != std::string::npos);
}

}  // TEST_SUITE
