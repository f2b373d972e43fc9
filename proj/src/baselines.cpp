#include "wpbc/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace wpbc {

namespace {

constexpr double kTauCap = 1e-4;  // tau_s searched in [0, 1 - kTauCap]
constexpr int kGridPoints = 1024;
constexpr double kGoldenTol = 1e-9;

// Throughput at p0 = p_max with the best beta for this split; negative when
// no transmission is possible there.
double se_rate(const SystemParams& p, double tau_s) {
    double tau_a = 1.0 - tau_s;
    auto beta = optimal_beta(p, p.p_max, tau_s, tau_a);
    if (!beta) return -1.0;
    return tau_a * std::log1p(*beta * p.p_max * p.lambda()) / M_LN2;
}

}  // namespace

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::OptimalEE: return "optimal-ee";
        case Scheme::OptimalSE: return "optimal-se";
        case Scheme::FixedMaxPower: return "fixed-max-power";
        case Scheme::NoSleep: return "no-sleep";
    }
    return "?";
}

SolveOutcome solve_se_optimal(const SystemParams& p) {
    if (!p.valid()) throw std::domain_error("invalid system params");
    const double hi = 1.0 - kTauCap;

    double best = -1.0;
    int best_i = -1;
    for (int i = 0; i < kGridPoints; ++i) {
        double ts = hi * i / (kGridPoints - 1);
        double r = se_rate(p, ts);
        if (r > best) { best = r; best_i = i; }
    }
    SolveOutcome out;
    if (best < 0.0) return out;  // no split supports beta > 0 within the cap

    // golden-section polish on the bracket around the best grid cell
    double a = hi * std::max(best_i - 1, 0) / (kGridPoints - 1);
    double b = hi * std::min(best_i + 1, kGridPoints - 1) / (kGridPoints - 1);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = se_rate(p, c), fd = se_rate(p, d);
    while (b - a > kGoldenTol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = se_rate(p, c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = se_rate(p, d);
        }
    }
    double ts = 0.5 * (a + b);
    if (se_rate(p, ts) < best) ts = hi * best_i / (kGridPoints - 1);  // keep the grid winner on ties

    Allocation alloc;
    alloc.p0 = p.p_max;
    alloc.tau_s = ts;
    alloc.tau_a = 1.0 - ts;
    auto beta = optimal_beta(p, alloc.p0, alloc.tau_s, alloc.tau_a);
    if (!beta) return out;
    alloc.beta = *beta;

    out.status = SolveOutcome::Status::Converged;
    out.allocation = alloc;
    out.ee = compute_ee(p, alloc);
    out.mode = ts > 0.0 ? Mode::MaxPower : Mode::AlwaysActive;
    out.iterations = 0;
    return out;
}

SolveOutcome solve_fixed_maxpower(const SystemParams& p, SolverOptions opt) {
    return dinkelbach_solve_restricted(p, BranchSet::MaxPowerOnly, opt);
}

SolveOutcome solve_no_sleep(const SystemParams& p, SolverOptions opt) {
    return dinkelbach_solve_restricted(p, BranchSet::AlwaysActiveOnly, opt);
}

SolveOutcome solve_scheme(const SystemParams& p, Scheme s, SolverOptions opt) {
    switch (s) {
        case Scheme::OptimalEE: return dinkelbach_solve(p, opt);
        case Scheme::OptimalSE: return solve_se_optimal(p);
        case Scheme::FixedMaxPower: return solve_fixed_maxpower(p, opt);
        case Scheme::NoSleep: return solve_no_sleep(p, opt);
    }
    throw std::logic_error("unknown scheme");
}

}  // namespace wpbc
