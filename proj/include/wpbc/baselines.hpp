#pragma once

#include "wpbc/solver.hpp"

namespace wpbc {

// The four compared schemes: the full EE optimum and three restrictions.
enum class Scheme { OptimalEE, OptimalSE, FixedMaxPower, NoSleep };
const char* scheme_name(Scheme s);

// Throughput maximizer. Rate grows with p0 and beta, so p0 = p_max and beta
// from optimal_beta; the remaining 1-D search over tau_s uses a 1024-point
// grid plus golden-section refinement to |d tau_s| < 1e-9. tau_s is searched
// in [0, 1 - 1e-4]; if no point there supports beta > 0 the scheme reports
// infeasible. The outcome carries the allocation's EE for comparison plots.
SolveOutcome solve_se_optimal(const SystemParams& p);

// EE optimum with p0 pinned to p_max (sleep allowed).
SolveOutcome solve_fixed_maxpower(const SystemParams& p, SolverOptions opt = {});

// EE optimum with tau_s pinned to 0.
SolveOutcome solve_no_sleep(const SystemParams& p, SolverOptions opt = {});

SolveOutcome solve_scheme(const SystemParams& p, Scheme s, SolverOptions opt = {});

}  // namespace wpbc
