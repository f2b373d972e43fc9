#include "wpbc/experiments.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace wpbc {

namespace {

using nlohmann::json;

void check_known_keys(const json& obj, const std::set<std::string>& allowed, const char* where) {
    for (auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw std::runtime_error(std::string("config: unknown key '") + key + "' in " + where);
}

json to_canonical_json(const ExperimentConfig& c) {
    // output_dir intentionally left out: it does not affect any data row, and
    // two runs into different directories should hash identically
    json j;
    j["config_version"] = c.config_version;
    j["scenario"] = {{"d0_m", c.scenario.d0},
                     {"d1_m", c.scenario.d1},
                     {"path_loss_exponent", c.scenario.path_loss_exponent},
                     {"seed", c.scenario.seed}};
    j["params"] = {{"eta", c.params.eta},       {"xi", c.params.xi},
                   {"p_sc_w", c.params.p_sc},   {"p_rc_w", c.params.p_rc},
                   {"p_tc_w", c.params.p_tc},   {"sigma2_w", c.params.sigma2}};
    j["pmax_sweep_dbm"] = {{"start", c.sweep.start_dbm},
                           {"stop", c.sweep.stop_dbm},
                           {"step", c.sweep.step_dbm}};
    j["n_trials"] = c.n_trials;
    j["solver"] = {{"eps", c.solver.eps}, {"l_max", c.solver.l_max}};
    j["convergence"] = {{"pmax_dbm", c.convergence_pmax_dbm}, {"n_curves", c.convergence_curves}};
    j["oracle"] = {{"n_p0", c.grid.n_p0},
                   {"n_tau", c.grid.n_tau},
                   {"n_beta", c.grid.n_beta},
                   {"refine_passes", c.grid.refine_passes},
                   {"tau_delta", c.grid.tau_delta},
                   {"gap_threshold", c.oracle_gap_threshold}};
    return j;
}

void validate(const ExperimentConfig& c) {
    if (c.config_version != 1) throw std::runtime_error("config: unsupported config_version");
    if (c.scenario.d0 <= 0 || c.scenario.d1 <= 0 || c.scenario.path_loss_exponent <= 0)
        throw std::runtime_error("config: scenario distances/exponent must be positive");
    ParamsTemplate t = c.params;
    if (t.eta <= 0 || t.eta > 1 || t.xi <= 0 || t.xi > 1 || t.sigma2 <= 0 || t.p_sc < 0 ||
        t.p_rc < 0 || t.p_tc < 0)
        throw std::runtime_error("config: params out of range");
    if (c.sweep.step_dbm <= 0 || c.sweep.stop_dbm < c.sweep.start_dbm)
        throw std::runtime_error("config: sweep must be ascending with positive step");
    if (c.n_trials < 1) throw std::runtime_error("config: n_trials must be >= 1");
    if (c.solver.eps <= 0 || c.solver.l_max < 1) throw std::runtime_error("config: bad solver options");
    if (c.grid.n_p0 < 2 || c.grid.n_tau < 2 || c.grid.n_beta < 0 || c.grid.refine_passes < 0 ||
        c.grid.tau_delta <= 0 || c.grid.tau_delta >= 1)
        throw std::runtime_error("config: bad oracle grid");
    if (c.convergence_curves < 0) throw std::runtime_error("config: bad convergence.n_curves");
    if (c.oracle_gap_threshold < 0) throw std::runtime_error("config: bad oracle.gap_threshold");
}

std::ofstream open_csv(const ExperimentConfig& cfg, const char* name, const char* experiment) {
    std::filesystem::create_directories(cfg.output_dir);
    auto path = std::filesystem::path(cfg.output_dir) / name;
    std::ofstream f(path, std::ios::binary);  // binary: identical bytes on every platform
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    char hash[32];
    std::snprintf(hash, sizeof hash, "0x%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    f << "# tool=" << kToolVersion << "\n";
    f << "# experiment=" << experiment << "\n";
    f << "# config_hash=" << hash << "\n";
    f << "# seed=" << cfg.scenario.seed << "\n";
    f << "# generator=" << generator_family() << "\n";
    f << "# config=" << canonical_config_json(cfg) << "\n";
    return f;
}

double scheme_ee(const SolveOutcome& out) { return out.feasible() ? out.ee : 0.0; }

}  // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

SystemParams make_params(const ParamsTemplate& t, const ChannelInstance& ch, double pmax_w) {
    SystemParams p;
    p.h0 = ch.h0;
    p.h1 = ch.h1;
    p.sigma2 = t.sigma2;
    p.eta = t.eta;
    p.xi = t.xi;
    p.p_sc = t.p_sc;
    p.p_rc = t.p_rc;
    p.p_tc = t.p_tc;
    p.p_max = pmax_w;
    return p;
}

std::vector<double> SweepSpec::values_dbm() const {
    std::vector<double> v;
    int n = int(std::lround((stop_dbm - start_dbm) / step_dbm)) + 1;
    for (int i = 0; i < n; ++i) {
        double x = start_dbm + i * step_dbm;
        if (x > stop_dbm + 1e-9) break;
        v.push_back(x);
    }
    return v;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream f(file);
    if (!f) throw std::runtime_error("cannot read config: " + file.string());
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error in " + file.string() + ": " + e.what());
    }

    ExperimentConfig c;
    check_known_keys(j, {"config_version", "scenario", "params", "pmax_sweep_dbm", "n_trials",
                         "solver", "convergence", "oracle", "output_dir"},
                     file.string().c_str());
    c.config_version = j.value("config_version", c.config_version);
    if (j.contains("scenario")) {
        auto& s = j["scenario"];
        check_known_keys(s, {"d0_m", "d1_m", "path_loss_exponent", "seed"}, "scenario");
        c.scenario.d0 = s.value("d0_m", c.scenario.d0);
        c.scenario.d1 = s.value("d1_m", c.scenario.d1);
        c.scenario.path_loss_exponent = s.value("path_loss_exponent", c.scenario.path_loss_exponent);
        c.scenario.seed = s.value("seed", c.scenario.seed);
    }
    if (j.contains("params")) {
        auto& s = j["params"];
        check_known_keys(s, {"eta", "xi", "p_sc_w", "p_rc_w", "p_tc_w", "sigma2_w"}, "params");
        c.params.eta = s.value("eta", c.params.eta);
        c.params.xi = s.value("xi", c.params.xi);
        c.params.p_sc = s.value("p_sc_w", c.params.p_sc);
        c.params.p_rc = s.value("p_rc_w", c.params.p_rc);
        c.params.p_tc = s.value("p_tc_w", c.params.p_tc);
        c.params.sigma2 = s.value("sigma2_w", c.params.sigma2);
    }
    if (j.contains("pmax_sweep_dbm")) {
        auto& s = j["pmax_sweep_dbm"];
        check_known_keys(s, {"start", "stop", "step"}, "pmax_sweep_dbm");
        c.sweep.start_dbm = s.value("start", c.sweep.start_dbm);
        c.sweep.stop_dbm = s.value("stop", c.sweep.stop_dbm);
        c.sweep.step_dbm = s.value("step", c.sweep.step_dbm);
    }
    c.n_trials = j.value("n_trials", c.n_trials);
    if (j.contains("solver")) {
        auto& s = j["solver"];
        check_known_keys(s, {"eps", "l_max"}, "solver");
        c.solver.eps = s.value("eps", c.solver.eps);
        c.solver.l_max = s.value("l_max", c.solver.l_max);
    }
    if (j.contains("convergence")) {
        auto& s = j["convergence"];
        check_known_keys(s, {"pmax_dbm", "n_curves"}, "convergence");
        c.convergence_pmax_dbm = s.value("pmax_dbm", c.convergence_pmax_dbm);
        c.convergence_curves = s.value("n_curves", c.convergence_curves);
    }
    if (j.contains("oracle")) {
        auto& s = j["oracle"];
        check_known_keys(s, {"n_p0", "n_tau", "n_beta", "refine_passes", "tau_delta", "gap_threshold"},
                         "oracle");
        c.grid.n_p0 = s.value("n_p0", c.grid.n_p0);
        c.grid.n_tau = s.value("n_tau", c.grid.n_tau);
        c.grid.n_beta = s.value("n_beta", c.grid.n_beta);
        c.grid.refine_passes = s.value("refine_passes", c.grid.refine_passes);
        c.grid.tau_delta = s.value("tau_delta", c.grid.tau_delta);
        c.oracle_gap_threshold = s.value("gap_threshold", c.oracle_gap_threshold);
    }
    c.output_dir = j.value("output_dir", c.output_dir);
    validate(c);
    return c;
}

std::string canonical_config_json(const ExperimentConfig& cfg) {
    return to_canonical_json(cfg).dump();  // nlohmann objects keep keys sorted
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    std::string s = canonical_config_json(cfg);
    std::uint64_t h = 14695981039346656037ull;  // FNV-1a 64
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::filesystem::path run_convergence(const ExperimentConfig& cfg) {
    validate(cfg);
    auto f = open_csv(cfg, "convergence.csv", "convergence");
    f << "curve,pmax_dbm,g0_sq,g1_sq,iteration,q,objective,q_over_z,converged_iteration\n";
    double pmax_w = dbm_to_watt(cfg.convergence_pmax_dbm);
    for (int curve = 0; curve <= cfg.convergence_curves; ++curve) {
        ChannelInstance ch = curve == 0 ? fixed_instance(cfg.scenario)
                                        : draw_instance(cfg.scenario, std::uint64_t(curve - 1));
        SolveOutcome out = dinkelbach_solve(make_params(cfg.params, ch, pmax_w), cfg.solver);
        int converged = out.status == SolveOutcome::Status::Converged ? out.iterations : 0;
        for (const TraceRow& row : out.trace) {
            f << curve << ',' << format_double(cfg.convergence_pmax_dbm) << ','
              << format_double(ch.g0_sq) << ',' << format_double(ch.g1_sq) << ','
              << row.iteration << ',' << format_double(row.q) << ','
              << format_double(row.objective) << ',' << format_double(row.q_over_z) << ','
              << converged << "\n";
        }
    }
    return std::filesystem::path(cfg.output_dir) / "convergence.csv";
}

std::filesystem::path run_mode_switch(const ExperimentConfig& cfg) {
    validate(cfg);
    auto f = open_csv(cfg, "mode_switch.csv", "mode-switch");
    f << "pmax_dbm,solver_ee,oracle_ee,rel_gap,mode,iterations,ee_fixed_max_power,ee_no_sleep\n";
    ChannelInstance ch = fixed_instance(cfg.scenario);
    for (double dbm : cfg.sweep.values_dbm()) {
        SystemParams p = make_params(cfg.params, ch, dbm_to_watt(dbm));
        SolveOutcome out = dinkelbach_solve(p, cfg.solver);
        OracleResult oracle = grid_search(p, cfg.grid);
        double gap = oracle.feasible ? (out.ee - oracle.ee) / oracle.ee : 0.0;
        f << format_double(dbm) << ',' << format_double(scheme_ee(out)) << ','
          << format_double(oracle.ee) << ',' << format_double(gap) << ','
          << mode_name(out.mode) << ',' << out.iterations << ','
          << format_double(scheme_ee(solve_fixed_maxpower(p, cfg.solver))) << ','
          << format_double(scheme_ee(solve_no_sleep(p, cfg.solver))) << "\n";
    }
    return std::filesystem::path(cfg.output_dir) / "mode_switch.csv";
}

std::filesystem::path run_ee_sweep(const ExperimentConfig& cfg) {
    validate(cfg);
    auto f = open_csv(cfg, "ee_sweep.csv", "ee-sweep");
    f << "pmax_dbm,scheme,avg_ee,n_infeasible,n_trials\n";
    const Scheme schemes[] = {Scheme::OptimalEE, Scheme::OptimalSE, Scheme::FixedMaxPower,
                              Scheme::NoSleep};
    std::vector<double> sweep = cfg.sweep.values_dbm();

    // same draws for every scheme and sweep point: paired comparison
    std::vector<ChannelInstance> draws(size_t(cfg.n_trials));
    for (int k = 0; k < cfg.n_trials; ++k)
        draws[size_t(k)] = draw_instance(cfg.scenario, std::uint64_t(k));

    for (double dbm : sweep) {
        double pmax_w = dbm_to_watt(dbm);
        for (Scheme s : schemes) {
            double sum = 0;
            int infeasible = 0;
            for (const ChannelInstance& ch : draws) {
                SolveOutcome out = solve_scheme(make_params(cfg.params, ch, pmax_w), s, cfg.solver);
                if (out.feasible())
                    sum += out.ee;
                else
                    ++infeasible;  // contributes 0 to the average
            }
            f << format_double(dbm) << ',' << scheme_name(s) << ','
              << format_double(sum / cfg.n_trials) << ',' << infeasible << ',' << cfg.n_trials
              << "\n";
        }
    }
    return std::filesystem::path(cfg.output_dir) / "ee_sweep.csv";
}

OracleCheckSummary run_oracle_check(const ExperimentConfig& cfg) {
    validate(cfg);
    auto f = open_csv(cfg, "oracle_check.csv", "oracle-check");
    f << "trial,pmax_dbm,g0_sq,g1_sq,solver_ee,oracle_ee,rel_gap,oracle_feasible,row_ok\n";
    std::vector<double> sweep = cfg.sweep.values_dbm();
    OracleCheckSummary sum;
    sum.n = cfg.n_trials;
    for (int i = 0; i < cfg.n_trials; ++i) {
        ChannelInstance ch = draw_instance(cfg.scenario, std::uint64_t(i));
        double dbm = sweep[size_t(i) % sweep.size()];
        SystemParams p = make_params(cfg.params, ch, dbm_to_watt(dbm));
        SolveOutcome out = dinkelbach_solve(p, cfg.solver);
        VerifyReport rep = verify_outcome(p, out, cfg.grid, cfg.oracle_gap_threshold);
        bool ok;
        if (rep.oracle_feasible) {
            ++sum.n_certified;
            ok = rep.within_threshold;
            if (rep.rel_gap > sum.worst_gap) sum.worst_gap = rep.rel_gap;
        } else {
            // no feasible grid point: legitimate only when the optimum needs a
            // longer sleep than the grid's tau_s cap can express
            ++sum.n_vacuous;
            ok = out.feasible() && rep.alloc_check.ok && out.allocation.tau_a < cfg.grid.tau_delta;
        }
        if (!ok) ++sum.n_failed;
        f << i << ',' << format_double(dbm) << ',' << format_double(ch.g0_sq) << ','
          << format_double(ch.g1_sq) << ',' << format_double(rep.solver_ee) << ','
          << format_double(rep.oracle_ee) << ',' << format_double(rep.rel_gap) << ','
          << (rep.oracle_feasible ? 1 : 0) << ',' << (ok ? 1 : 0) << "\n";
    }
    sum.csv = std::filesystem::path(cfg.output_dir) / "oracle_check.csv";
    return sum;
}

void print_solve(std::ostream& os, const ExperimentConfig& cfg, double pmax_dbm, bool unit_fading,
                 std::uint64_t stream) {
    ChannelInstance ch =
        unit_fading ? fixed_instance(cfg.scenario) : draw_instance(cfg.scenario, stream);
    SystemParams p = make_params(cfg.params, ch, dbm_to_watt(pmax_dbm));
    os << "instance: pmax=" << format_double(pmax_dbm) << " dBm ("
       << format_double(p.p_max) << " W), h0=" << format_double(p.h0)
       << ", h1=" << format_double(p.h1) << ", |g0|^2=" << format_double(ch.g0_sq)
       << ", |g1|^2=" << format_double(ch.g1_sq) << "\n";

    SolveOutcome out = dinkelbach_solve(p, cfg.solver);
    if (!out.feasible()) {
        os << "no feasible allocation\n";
        return;
    }
    const Allocation& a = out.allocation;
    ModelQuantities m = compute_all(p, a);
    os << "mode: " << mode_name(out.mode) << "  (" << out.iterations << " iterations, "
       << (out.status == SolveOutcome::Status::Converged ? "converged" : "iteration limit")
       << ")\n";
    os << "allocation: p0=" << format_double(a.p0) << " W, tau_s=" << format_double(a.tau_s)
       << ", tau_a=" << format_double(a.tau_a) << ", beta=" << format_double(a.beta) << "\n";
    os << "ee=" << format_double(out.ee) << " bits/J, throughput=" << format_double(m.throughput)
       << " bits/slot, e_total=" << format_double(m.e_total) << " J\n";
    os << "harvested: sleep=" << format_double(m.e_sleep) << " J, active="
       << format_double(m.e_active) << " J, tag circuit needs "
       << format_double(p.p_tc * a.tau_a) << " J\n";
    os << "trace (iteration, q, objective, q_over_z):\n";
    for (const TraceRow& r : out.trace)
        os << "  " << r.iteration << "  " << format_double(r.q) << "  "
           << format_double(r.objective) << "  " << format_double(r.q_over_z) << "\n";

    os << "baselines:\n";
    for (Scheme s : {Scheme::OptimalSE, Scheme::FixedMaxPower, Scheme::NoSleep}) {
        SolveOutcome b = solve_scheme(p, s, cfg.solver);
        os << "  " << scheme_name(s) << ": ";
        if (b.feasible())
            os << "ee=" << format_double(b.ee) << " (p0=" << format_double(b.allocation.p0)
               << ", tau_s=" << format_double(b.allocation.tau_s)
               << ", beta=" << format_double(b.allocation.beta) << ")\n";
        else
            os << "infeasible\n";
    }
}

}  // namespace wpbc
