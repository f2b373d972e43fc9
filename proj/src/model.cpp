#include "wpbc/model.hpp"

#include <cmath>
#include <stdexcept>

namespace wpbc {

namespace {

constexpr double kC2Slack = 1e-12;   // |tau_a + tau_s - 1|
constexpr double kC5Slack = 1e-12;   // joules

void require_valid(const SystemParams& p, const Allocation& a) {
    if (!p.valid()) throw std::domain_error("invalid system params");
    if (!(a.beta > 0.0) || a.beta > 1.0) throw std::domain_error("C1: beta outside (0,1]");
    if (std::fabs(a.tau_a + a.tau_s - 1.0) > kC2Slack) throw std::domain_error("C2: tau_a + tau_s != 1");
    if (!(a.p0 > 0.0) || a.p0 > p.p_max) throw std::domain_error("C3: p0 outside (0,p_max]");
    if (!(a.tau_a > 0.0) || a.tau_s < 0.0) throw std::domain_error("C4: tau_a <= 0 or tau_s < 0");
}

}  // namespace

bool SystemParams::valid() const {
    return h0 > 0 && h1 > 0 && sigma2 > 0 && p_max > 0 && p_tc >= 0 && p_sc >= 0 &&
           p_rc >= 0 && eta > 0 && eta <= 1 && xi > 0 && xi <= 1;
}

double compute_throughput(const SystemParams& p, const Allocation& a) {
    require_valid(p, a);
    return a.tau_a * std::log1p(a.beta * a.p0 * p.lambda()) / M_LN2;
}

HarvestedEnergy compute_harvested_energy(const SystemParams& p, const Allocation& a) {
    require_valid(p, a);
    return {p.eta * a.p0 * p.h0 * a.tau_s, p.eta * (1.0 - a.beta) * a.p0 * p.h0 * a.tau_a};
}

double compute_total_energy(const SystemParams& p, const Allocation& a) {
    require_valid(p, a);
    return (a.p0 / p.xi + p.p_sc) * (a.tau_a + a.tau_s) + p.p_rc * a.tau_a;
}

double compute_ee(const SystemParams& p, const Allocation& a) {
    return compute_throughput(p, a) / compute_total_energy(p, a);
}

ModelQuantities compute_all(const SystemParams& p, const Allocation& a) {
    ModelQuantities m;
    m.throughput = compute_throughput(p, a);
    auto h = compute_harvested_energy(p, a);
    m.e_sleep = h.e_sleep;
    m.e_active = h.e_active;
    m.e_total = compute_total_energy(p, a);
    m.ee = m.throughput / m.e_total;
    return m;
}

double optimal_beta_unclamped(const SystemParams& p, double p0, double tau_s, double tau_a) {
    if (!p.valid()) throw std::domain_error("invalid system params");
    if (!(p0 > 0.0) || !(tau_a > 0.0) || tau_s < 0.0 ||
        std::fabs(tau_a + tau_s - 1.0) > kC2Slack)
        throw std::domain_error("optimal_beta: bad (p0, tau_s, tau_a)");
    return 1.0 + tau_s / tau_a - p.p_tc / (p.eta * p0 * p.h0);
}

std::optional<double> optimal_beta(const SystemParams& p, double p0, double tau_s, double tau_a) {
    double b = optimal_beta_unclamped(p, p0, tau_s, tau_a);
    if (b <= 0.0) return std::nullopt;  // cannot keep the tag circuit powered
    return std::min(b, 1.0);
}

FeasibilityReport check_feasibility(const SystemParams& p, const Allocation& a) {
    FeasibilityReport r;
    if (!(a.beta > 0.0) || a.beta > 1.0) r.violations.push_back("C1");
    if (std::fabs(a.tau_a + a.tau_s - 1.0) > kC2Slack) r.violations.push_back("C2");
    if (!(a.p0 > 0.0) || a.p0 > p.p_max) r.violations.push_back("C3");
    if (!(a.tau_a > 0.0) || a.tau_s < 0.0) r.violations.push_back("C4");
    // C5 evaluated raw rather than through compute_harvested_energy so that a
    // report comes back even when C1-C4 already failed
    double harvested = p.eta * a.p0 * p.h0 * (a.tau_s + (1.0 - a.beta) * a.tau_a);
    if (p.p_tc * a.tau_a > harvested + kC5Slack) r.violations.push_back("C5");
    r.ok = r.violations.empty();
    return r;
}

}  // namespace wpbc
