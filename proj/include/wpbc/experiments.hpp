#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wpbc/baselines.hpp"
#include "wpbc/channel.hpp"
#include "wpbc/oracle.hpp"

namespace wpbc {

inline constexpr const char* kToolVersion = "wpbc 1.0.0";

double dbm_to_watt(double dbm);
double watt_to_dbm(double w);

// Link constants shared by every instance of a run; h0/h1/p_max get filled
// per channel draw and sweep point.
struct ParamsTemplate {
    double eta = 0.6;
    double xi = 0.9;
    double p_sc = 0.1;
    double p_rc = 0.01;
    double p_tc = 1e-3;
    double sigma2 = 1e-13;
};

SystemParams make_params(const ParamsTemplate& t, const ChannelInstance& ch, double pmax_w);

struct SweepSpec {
    double start_dbm = 5;
    double stop_dbm = 45;
    double step_dbm = 5;
    std::vector<double> values_dbm() const;
};

struct ExperimentConfig {
    int config_version = 1;
    ScenarioConfig scenario;
    ParamsTemplate params;
    SweepSpec sweep;
    int n_trials = 500;
    SolverOptions solver;
    double convergence_pmax_dbm = 25;
    int convergence_curves = 5;
    GridSpec grid;
    double oracle_gap_threshold = 0.01;
    std::string output_dir = ".";
};

// JSON config file. Missing keys keep their defaults; unknown keys are an
// error (they are usually typos). The effective config is serialized with
// sorted keys and hashed (FNV-1a 64) into every output header, so a CSV can
// always be traced back to the exact settings that produced it.
ExperimentConfig load_config(const std::filesystem::path& file);
std::string canonical_config_json(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Experiment runners. Each writes one CSV (metadata lines prefixed with '#',
// then a header row, then data) into cfg.output_dir and returns its path.
// No timestamps or machine state go into the files: identical config + seed
// reproduces them byte for byte.

// Per-iteration Dinkelbach traces at one sweep point: curve 0 is the
// unit-fading instance, curves 1..n are random draws.
std::filesystem::path run_convergence(const ExperimentConfig& cfg);

// Unit-fading sweep: full solver vs grid oracle, winning mode, and both
// single-branch restricted EEs per sweep point.
std::filesystem::path run_mode_switch(const ExperimentConfig& cfg);

// Average EE of all four schemes over n_trials paired draws per sweep point.
// A scheme that is infeasible on a draw contributes 0 to its average.
std::filesystem::path run_ee_sweep(const ExperimentConfig& cfg);

struct OracleCheckSummary {
    int n = 0;
    int n_certified = 0;  // oracle found a feasible grid point
    int n_vacuous = 0;    // optimum sits beyond the grid's tau_s cap
    int n_failed = 0;
    double worst_gap = 0;  // over certified rows
    std::filesystem::path csv;
};

// Random instances (p_max cycling through the sweep), solver vs oracle per
// row. A certified row fails if its gap exceeds cfg.oracle_gap_threshold or
// the oracle beats the solver; a vacuous row fails unless the solver's own
// optimum lies beyond the grid cap (tau_a < tau_delta), which is the only
// honest reason for the oracle to come up empty.
OracleCheckSummary run_oracle_check(const ExperimentConfig& cfg);

// One instance end to end, human-readable, for the `solve` subcommand.
void print_solve(std::ostream& os, const ExperimentConfig& cfg, double pmax_dbm,
                 bool unit_fading, std::uint64_t stream);

// Shortest-round-trip double formatting used for every CSV number.
std::string format_double(double v);

}  // namespace wpbc
