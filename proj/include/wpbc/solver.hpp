#pragma once

#include <optional>
#include <vector>

#include "wpbc/model.hpp"

namespace wpbc {

// The EE maximization splits into two convex subproblems in the auxiliary
// variables z = p0*(1 + tau_s/tau_a), t = 1 + tau_s/tau_a:
//   AlwaysActive: t = 1, z in (breakeven, p_max]      (no sleeping, p0 = z)
//   MaxPower:     p0 = p_max, t = z/p_max, z in (max(p_max, breakeven), p_max + breakeven]
enum class Branch { AlwaysActive, MaxPower };

struct BranchSolution {
    double z = 0;
    double t = 1;
    double objective = 0;  // rate(z) - q * energy(z, t), at the q it was solved for
    Branch which = Branch::AlwaysActive;
};

enum class Mode { MaxPower, AlwaysActive };
const char* mode_name(Mode m);  // "max-power" / "always-active"

struct TraceRow {
    int iteration = 0;   // 1-based
    double q = 0;        // ratio update produced by this iteration (non-decreasing)
    double objective = 0;  // subtractive objective at the winning point, under the entering q
    double q_over_z = 0;   // alternative update rate/z, kept for comparison only
};

struct SolverOptions {
    double eps = 1e-6;
    int l_max = 50;
};

struct SolveOutcome {
    enum class Status { Converged, IterationLimit, Infeasible };
    Status status = Status::Infeasible;
    Allocation allocation;
    double ee = 0;  // equals compute_ee(allocation) for non-infeasible outcomes
    Mode mode = Mode::MaxPower;
    std::vector<TraceRow> trace;
    int iterations = 0;

    bool feasible() const { return status != Status::Infeasible; }
};

// rate in bits per slot at the reduced point: log2(k + lambda*z), computed
// via log1p(lambda*(z - breakeven)) to dodge cancellation (k is hugely negative
// whenever lambda*breakeven >> 1).
double reduced_rate(const SystemParams& p, double z);

// Energy per slot of the reduced point.
double reduced_energy(const SystemParams& p, double z, double t);

// Inner subproblem solvers: maximize reduced_rate(z) - q*reduced_energy(z,t(z))
// by projecting the closed-form stationary point onto the feasible interval
// (the objective is strictly concave in z; q = 0 degenerates to the upper
// endpoint). nullopt when the feasible interval is empty:
//   AlwaysActive: p_max <= breakeven (harvest cannot cover the tag circuit)
//   MaxPower:     p_tc == 0 (the interval collapses to a point excluded by
//                 its open lower end)
std::optional<BranchSolution> solve_always_active(const SystemParams& p, double q);
std::optional<BranchSolution> solve_max_power(const SystemParams& p, double q);

// Undo the variable change. MaxPower winners get p0 = p_max assigned exactly.
// Throws std::domain_error if the implied beta is not strictly positive,
// which signals an inconsistent branch solution.
Allocation recover_allocation(const SystemParams& p, const BranchSolution& s);

// Restriction used by the comparison schemes: which candidate set the
// Dinkelbach loop may pick from each iteration.
//   Full:            both branches
//   MaxPowerOnly:    MaxPower branch plus the single always-active point
//                    z = p_max (the schemes pin p0 = p_max, not t)
//   AlwaysActiveOnly: AlwaysActive branch only
enum class BranchSet { Full, MaxPowerOnly, AlwaysActiveOnly };

// Dinkelbach iteration: q starts at 0; each round solves the allowed
// branches under the current q, takes the branch with the larger objective
// (ties go to MaxPower), stops when that objective drops below eps, else
// updates q to the full ratio rate/energy at the winner. The reported ee is
// the ratio at the final winner, so it exactly matches the recovered
// allocation.
SolveOutcome dinkelbach_solve(const SystemParams& p, SolverOptions opt = {});
SolveOutcome dinkelbach_solve_restricted(const SystemParams& p, BranchSet set, SolverOptions opt = {});

}  // namespace wpbc
