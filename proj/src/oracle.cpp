#include "wpbc/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace wpbc {

namespace {

// log-spaced values over [lo, hi] with both endpoints exact
std::vector<double> log_axis(double lo, double hi, int n) {
    std::vector<double> v(n);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) v[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

std::vector<double> lin_axis(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    v.back() = hi;
    return v;
}

struct PassResult {
    bool feasible = false;
    double ee = -1.0;
    Allocation alloc;
    int ip = 0, it = 0, ib = 0;
};

// One exhaustive scan. Scan order (p0, tau_s, beta) with strict-improvement
// updates makes ties resolve to the lexicographically smallest index triple.
PassResult scan(const SystemParams& p, const GridSpec& spec,
                const std::vector<double>& p0s, const std::vector<double>& ts_axis_t,
                const std::vector<double>& betas) {
    PassResult r;
    const double lam = p.lambda();
    for (size_t i = 0; i < p0s.size(); ++i) {
        double p0 = p0s[i];
        for (size_t j = 0; j < ts_axis_t.size(); ++j) {
            double t = ts_axis_t[j];
            double tau_s = 1.0 - 1.0 / t;
            double tau_a = 1.0 - tau_s;
            double denom = p0 / p.xi + p.p_sc + p.p_rc * tau_a;
            if (spec.n_beta == 0) {
                auto beta = optimal_beta(p, p0, tau_s, tau_a);
                if (!beta) continue;
                double ee = tau_a * std::log1p(*beta * p0 * lam) / M_LN2 / denom;
                if (ee > r.ee) {
                    r.ee = ee;
                    r.alloc = {p0, tau_s, tau_a, *beta};
                    r.ip = int(i); r.it = int(j); r.ib = 0;
                    r.feasible = true;
                }
            } else {
                double beta_cap = optimal_beta_unclamped(p, p0, tau_s, tau_a);
                for (size_t m = 0; m < betas.size(); ++m) {
                    double beta = betas[m];
                    if (beta <= 0.0 || beta > 1.0 || beta > beta_cap) continue;
                    double ee = tau_a * std::log1p(beta * p0 * lam) / M_LN2 / denom;
                    if (ee > r.ee) {
                        r.ee = ee;
                        r.alloc = {p0, tau_s, tau_a, beta};
                        r.ip = int(i); r.it = int(j); r.ib = int(m);
                        r.feasible = true;
                    }
                }
            }
        }
    }
    return r;
}

double clamped(const std::vector<double>& axis, int idx) {
    if (idx < 0) idx = 0;
    if (idx >= int(axis.size())) idx = int(axis.size()) - 1;
    return axis[size_t(idx)];
}

}  // namespace

OracleResult grid_search(const SystemParams& p, const GridSpec& spec) {
    if (!p.valid()) throw std::domain_error("invalid system params");
    if (spec.n_p0 < 2 || spec.n_tau < 2 || spec.n_beta < 0 || spec.tau_delta <= 0)
        throw std::domain_error("bad grid spec");

    const double p0_min = std::max(1e-6 * p.p_max, std::numeric_limits<double>::min());
    const double t_cap = 1.0 / spec.tau_delta;

    std::vector<double> p0s, taxis, betas;
    if (spec.restriction == GridSpec::Restriction::FixP0ToMax)
        p0s = {p.p_max};
    else
        p0s = log_axis(p0_min, p.p_max, spec.n_p0);
    if (spec.restriction == GridSpec::Restriction::NoSleep)
        taxis = {1.0};
    else
        taxis = log_axis(1.0, t_cap, spec.n_tau);
    if (spec.n_beta > 0) betas = lin_axis(1.0 / spec.n_beta, 1.0, spec.n_beta);

    PassResult best = scan(p, spec, p0s, taxis, betas);
    if (!best.feasible) return {};

    for (int pass = 0; pass < spec.refine_passes; ++pass) {
        std::vector<double> p0w = p0s, tw = taxis, bw = betas;
        if (p0s.size() > 1)
            p0w = log_axis(clamped(p0s, best.ip - 2), clamped(p0s, best.ip + 2), spec.n_p0);
        if (taxis.size() > 1)
            tw = log_axis(clamped(taxis, best.it - 2), clamped(taxis, best.it + 2), spec.n_tau);
        if (!betas.empty())
            bw = lin_axis(clamped(betas, best.ib - 2), clamped(betas, best.ib + 2), spec.n_beta);
        PassResult refined = scan(p, spec, p0w, tw, bw);
        // a zoom that does not improve would just re-center on a worse point
        if (!refined.feasible || refined.ee <= best.ee) break;
        best = refined;
        p0s = std::move(p0w);
        taxis = std::move(tw);
        betas = std::move(bw);
    }

    return {true, best.alloc, best.ee};
}

VerifyReport verify_outcome(const SystemParams& p, const SolveOutcome& outcome,
                            const GridSpec& spec, double threshold) {
    VerifyReport rep;
    rep.solver_ee = outcome.ee;
    rep.alloc_check = check_feasibility(p, outcome.allocation);
    OracleResult oracle = grid_search(p, spec);
    rep.oracle_feasible = oracle.feasible;
    if (oracle.feasible) {
        rep.oracle_ee = oracle.ee;
        rep.rel_gap = (outcome.ee - oracle.ee) / oracle.ee;
        // the oracle is a lower bound on the true optimum, so a solver that
        // lands meaningfully below it is wrong no matter the threshold
        rep.within_threshold = outcome.feasible() && rep.alloc_check.ok &&
                               rep.rel_gap <= threshold && rep.rel_gap >= -1e-9;
    }
    return rep;
}

}  // namespace wpbc
