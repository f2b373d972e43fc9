#pragma once

#include "wpbc/model.hpp"
#include "wpbc/solver.hpp"

namespace wpbc {

// Brute-force grid search over the original variables, independent of the
// solver. p0 runs log-spaced over (p0_min, p_max] with the cap included
// exactly; tau_s is gridded through t = 1/(1 - tau_s) log-spaced over
// [1, 1/tau_delta], which reaches tau_s = 0 exactly and keeps resolution in
// the long-sleep corner where low-power optima live. beta comes either from
// optimal_beta (n_beta = 0) or a linear grid over (0, 1].
//
// refine_passes > 0 re-runs the same-sized grid zoomed onto a +-2-cell
// window around the incumbent argmax; the incumbent is kept, so refined
// results never get worse.
struct GridSpec {
    int n_p0 = 200;
    int n_tau = 200;
    int n_beta = 0;  // 0 = reduce beta via optimal_beta
    int refine_passes = 1;
    double tau_delta = 1e-4;  // tau_s searched in [0, 1 - tau_delta]

    enum class Restriction { Full, FixP0ToMax, NoSleep };
    Restriction restriction = Restriction::Full;
};

struct OracleResult {
    bool feasible = false;  // found at least one feasible grid point
    Allocation best;
    double ee = 0;
};

// Deterministic: ties broken by the lexicographically smallest grid index
// (p0, tau_s, beta), realized by a strict-improvement scan in that order.
OracleResult grid_search(const SystemParams& p, const GridSpec& spec);

struct VerifyReport {
    double solver_ee = 0;
    double oracle_ee = 0;
    double rel_gap = 0;          // (solver - oracle) / oracle, when oracle found a point
    bool oracle_feasible = false;
    bool within_threshold = false;  // oracle found a point, gap <= threshold, and gap >= -1e-9
    FeasibilityReport alloc_check;  // constraint re-check of the solver's allocation
};

VerifyReport verify_outcome(const SystemParams& p, const SolveOutcome& outcome,
                            const GridSpec& spec, double threshold);

}  // namespace wpbc
