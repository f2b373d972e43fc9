#include "wpbc/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wpbc {

namespace {

// Relative margin keeping projected points off open interval ends.
constexpr double kEdge = 1e-12;

BranchSolution always_active_point(const SystemParams& p, double q, double z) {
    return {z, 1.0, reduced_rate(p, z) - q * reduced_energy(p, z, 1.0), Branch::AlwaysActive};
}

}  // namespace

const char* mode_name(Mode m) {
    return m == Mode::MaxPower ? "max-power" : "always-active";
}

double reduced_rate(const SystemParams& p, double z) {
    return std::log1p(p.lambda() * (z - p.breakeven_power())) / M_LN2;
}

double reduced_energy(const SystemParams& p, double z, double t) {
    return z / p.xi + p.p_sc * t + p.p_rc;
}

std::optional<BranchSolution> solve_always_active(const SystemParams& p, double q) {
    const double c = p.breakeven_power();
    if (p.p_max <= c) return std::nullopt;
    double lo = c > 0 ? std::min(c * (1.0 + kEdge), p.p_max) : std::numeric_limits<double>::min();
    const double hi = p.p_max;
    double z = hi;  // q = 0: objective strictly increasing
    if (q > 0) {
        double zbar = p.xi / (q * M_LN2) - (1.0 / p.lambda() - c);
        z = std::min(std::max(zbar, lo), hi);
    }
    return always_active_point(p, q, z);
}

std::optional<BranchSolution> solve_max_power(const SystemParams& p, double q) {
    const double c = p.breakeven_power();
    const double lo = std::max(p.p_max, c) * (1.0 + kEdge);
    const double hi = p.p_max + c;
    if (lo > hi) return std::nullopt;  // p_tc == 0 collapses the interval
    double z = hi;
    if (q > 0) {
        double alpha = 1.0 / p.xi + p.p_sc / p.p_max;
        double zbar = 1.0 / (q * M_LN2 * alpha) - (1.0 / p.lambda() - c);
        z = std::min(std::max(zbar, lo), hi);
    }
    double t = z / p.p_max;
    return BranchSolution{z, t, reduced_rate(p, z) - q * reduced_energy(p, z, t), Branch::MaxPower};
}

Allocation recover_allocation(const SystemParams& p, const BranchSolution& s) {
    Allocation a;
    a.tau_s = 1.0 - 1.0 / s.t;
    a.tau_a = 1.0 - a.tau_s;  // complement, so C2 holds exactly
    // the cap case gets p_max assigned exactly; z/t would round off it
    a.p0 = s.which == Branch::MaxPower ? p.p_max : s.z / s.t;
    double beta = 1.0 + a.tau_s / a.tau_a - p.p_tc / (p.eta * a.p0 * p.h0);
    if (beta <= 0.0) throw std::domain_error("recover_allocation: implied beta <= 0");
    a.beta = std::min(beta, 1.0);
    return a;
}

SolveOutcome dinkelbach_solve_restricted(const SystemParams& p, BranchSet set, SolverOptions opt) {
    if (!p.valid()) throw std::domain_error("invalid system params");
    if (!(opt.eps > 0) || opt.l_max < 1) throw std::domain_error("bad solver options");

    SolveOutcome out;
    double q = 0.0;
    for (int l = 1; l <= opt.l_max; ++l) {
        std::optional<BranchSolution> aa, mp;
        switch (set) {
            case BranchSet::Full:
                aa = solve_always_active(p, q);
                mp = solve_max_power(p, q);
                break;
            case BranchSet::MaxPowerOnly:
                mp = solve_max_power(p, q);
                // p0 = p_max with no sleep is also part of this scheme
                if (p.p_max > p.breakeven_power() * (1.0 + kEdge))
                    aa = always_active_point(p, q, p.p_max);
                break;
            case BranchSet::AlwaysActiveOnly:
                aa = solve_always_active(p, q);
                break;
        }
        if (!aa && !mp) return out;  // Status::Infeasible; candidates do not depend on q

        // ties go to the max-power branch
        const BranchSolution& w = (aa && (!mp || aa->objective > mp->objective)) ? *aa : *mp;
        double ratio = reduced_rate(p, w.z) / reduced_energy(p, w.z, w.t);
        out.trace.push_back({l, ratio, w.objective, reduced_rate(p, w.z) / w.z});
        out.iterations = l;
        out.allocation = recover_allocation(p, w);
        out.ee = ratio;
        out.mode = w.which == Branch::MaxPower ? Mode::MaxPower : Mode::AlwaysActive;
        if (w.objective < opt.eps) {
            out.status = SolveOutcome::Status::Converged;
            return out;
        }
        q = ratio;
    }
    out.status = SolveOutcome::Status::IterationLimit;
    return out;
}

SolveOutcome dinkelbach_solve(const SystemParams& p, SolverOptions opt) {
    return dinkelbach_solve_restricted(p, BranchSet::Full, opt);
}

}  // namespace wpbc
