#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wpbc/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"energy-efficiency-optimal resource allocation for wirelessly powered "
                 "backscatter links"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand name

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    double eps = 0;
    int trials = 0;
    app.add_option("--config", config_path, "JSON config file (defaults used when omitted)");
    app.add_option("--seed", seed, "override scenario seed");
    app.add_option("--out", out_dir, "override output directory");
    app.add_option("--eps", eps, "override solver convergence tolerance");
    app.add_option("--trials", trials, "override Monte Carlo trial count");

    auto* solve = app.add_subcommand("solve", "solve one instance and print the outcome");
    double pmax_dbm = 25.0;
    bool unit_fading = false;
    std::uint64_t stream = 0;
    solve->add_option("--pmax-dbm", pmax_dbm, "transmit power cap in dBm");
    solve->add_flag("--unit-fading", unit_fading, "use |g0|^2 = |g1|^2 = 1 instead of a draw");
    solve->add_option("--stream", stream, "random draw index");

    auto* convergence = app.add_subcommand("convergence", "per-iteration solver traces -> CSV");
    auto* mode_switch = app.add_subcommand("mode-switch", "unit-fading sweep vs oracle -> CSV");
    auto* ee_sweep = app.add_subcommand("ee-sweep", "four-scheme Monte Carlo sweep -> CSV");
    auto* oracle_check =
        app.add_subcommand("oracle-check", "random instances, solver vs oracle -> CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        wpbc::ExperimentConfig cfg =
            config_path.empty() ? wpbc::ExperimentConfig{} : wpbc::load_config(config_path);
        if (app.count("--seed")) cfg.scenario.seed = seed;
        if (app.count("--out")) cfg.output_dir = out_dir;
        if (app.count("--eps")) cfg.solver.eps = eps;
        if (app.count("--trials")) cfg.n_trials = trials;

        if (solve->parsed()) {
            wpbc::print_solve(std::cout, cfg, pmax_dbm, unit_fading, stream);
        } else if (convergence->parsed()) {
            std::cout << wpbc::run_convergence(cfg).string() << "\n";
        } else if (mode_switch->parsed()) {
            std::cout << wpbc::run_mode_switch(cfg).string() << "\n";
        } else if (ee_sweep->parsed()) {
            std::cout << wpbc::run_ee_sweep(cfg).string() << "\n";
        } else if (oracle_check->parsed()) {
            wpbc::OracleCheckSummary s = wpbc::run_oracle_check(cfg);
            std::cout << s.csv.string() << "\n";
            std::cout << s.n << " instances: " << s.n_certified << " certified, " << s.n_vacuous
                      << " beyond grid cap, " << s.n_failed << " failed; worst certified gap "
                      << wpbc::format_double(s.worst_gap) << "\n";
            return s.n_failed == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
