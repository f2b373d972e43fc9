#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wpbc {

// Physical constants of one link instance. Strict SI units throughout
// (watts, joules, slot length normalized to 1); dBm conversion happens
// only at the CLI boundary.
struct SystemParams {
    double h0 = 0;      // linear power gain, source -> tag
    double h1 = 0;      // linear power gain, tag -> receiver
    double sigma2 = 0;  // receiver noise power [W]
    double eta = 0;     // energy-harvesting efficiency, (0,1]
    double xi = 0;      // power amplifier efficiency, (0,1]
    double p_sc = 0;    // source circuit power [W]
    double p_rc = 0;    // receiver circuit power [W]
    double p_tc = 0;    // tag circuit power [W]
    double p_max = 0;   // source transmit power cap [W]

    double lambda() const { return h0 * h1 / sigma2; }

    // Equivalent source power whose harvest exactly covers the tag circuit
    // draw: eta * z * h0 == p_tc. Every useful operating point needs z above
    // this floor.
    double breakeven_power() const { return p_tc / (eta * h0); }

    // Constant term of the reduced log argument: k + lambda*z == 1 + lambda*(z - breakeven).
    double k() const { return 1.0 - lambda() * breakeven_power(); }

    bool valid() const;
};

// One candidate decision for a slot: transmit power, sleep/active time split,
// reflection coefficient.
struct Allocation {
    double p0 = 0;
    double tau_s = 0;
    double tau_a = 0;
    double beta = 0;
};

struct ModelQuantities {
    double throughput = 0;  // bits per slot
    double e_sleep = 0;     // harvested while sleeping [J]
    double e_active = 0;    // harvested while backscattering [J]
    double e_total = 0;     // consumed by the whole system [J]
    double ee = 0;          // bits per joule
};

struct HarvestedEnergy {
    double e_sleep = 0;
    double e_active = 0;
};

struct FeasibilityReport {
    bool ok = false;
    std::vector<std::string> violations;  // subset of {"C1",...,"C5"}
};

// Constraint checks:
//   C1: 0 < beta <= 1
//   C2: tau_a + tau_s == 1           (|sum - 1| <= 1e-12)
//   C3: 0 < p0 <= p_max
//   C4: tau_a > 0, tau_s >= 0
//   C5: p_tc * tau_a <= harvested energy (absolute slack 1e-12 J, the
//       optimal reflection choice makes this one tight)
FeasibilityReport check_feasibility(const SystemParams& p, const Allocation& a);

// All compute_* throw std::domain_error when the allocation violates C1-C4
// or params are invalid.
double compute_throughput(const SystemParams& p, const Allocation& a);
HarvestedEnergy compute_harvested_energy(const SystemParams& p, const Allocation& a);
double compute_total_energy(const SystemParams& p, const Allocation& a);
double compute_ee(const SystemParams& p, const Allocation& a);
ModelQuantities compute_all(const SystemParams& p, const Allocation& a);

// Best reflection coefficient for fixed (p0, tau_s, tau_a): the unclamped
// value spends every joule harvested beyond the tag circuit draw on
// reflection, then clamps to [0,1]. A clamp landing at 0 means the slot
// cannot support transmission at all (beta must be strictly positive), so
// that case reports nullopt.
std::optional<double> optimal_beta(const SystemParams& p, double p0, double tau_s, double tau_a);
double optimal_beta_unclamped(const SystemParams& p, double p0, double tau_s, double tau_a);

}  // namespace wpbc
