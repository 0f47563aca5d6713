#include "dipgp/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "dipgp/errors.hpp"
#include "dipgp/spectral.hpp"

namespace dipgp {

void SweepPlan::validate() const {
    pot.validate();
    if (Ns.size() < 2) throw UsageError("SweepPlan: need at least 2 values of N");
    for (std::size_t i = 0; i + 1 < Ns.size(); ++i)
        if (Ns[i + 1] <= Ns[i]) throw UsageError("SweepPlan: Ns must be strictly increasing");
    if (Ns.front() < 2) throw UsageError("SweepPlan: N must be >= 2");
    if (!(t_final > 0.0) || !(dt > 0.0)) throw UsageError("SweepPlan: t_final and dt must be positive");
}

namespace {

struct Trajectory {
    Field psi;
    double mass_drift;
    double energy_drift;
};

Trajectory integrate(const SweepPlan& plan, GPEquation eq, long N) {
    PotentialSpec pot = plan.pot;
    pot.beta = plan.beta;
    if (N > 0) pot.N = N;
    GPSolver solver(plan.grid, pot,
                    plan.use_limit_multiplier_proxy && eq == GPEquation::scaled
                        ? GPEquation::limiting
                        : eq,
                    plan.gp_options);
    GPState st = solver.initial_state(plan.init);
    const double mass0 = l2_norm(st.psi);
    const double e0 = solver.energy(st);
    const long nsteps = static_cast<long>(std::llround(plan.t_final / plan.dt));
    try {
        for (long s = 0; s < nsteps; ++s) solver.step(st, plan.dt);
    } catch (const DivergenceError& e) {
        throw DivergenceError("sweep at N = " + std::to_string(N) + ": " + e.what());
    }
    const double mass1 = l2_norm(st.psi);
    const double e1 = solver.energy(st);
    return {std::move(st.psi), std::abs(mass1 - mass0),
            std::abs(e1 - e0) / std::max(1e-300, std::abs(e0))};
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepPlan& plan) {
    plan.validate();
    const Trajectory limit = integrate(plan, GPEquation::limiting, -1);

    const int workers = std::max(1, plan.threads);
    std::vector<std::future<Trajectory>> futs(plan.Ns.size());
    std::vector<Trajectory> scaled(plan.Ns.size(), Trajectory{Field(plan.grid, Space::position), 0, 0});
    for (std::size_t i = 0; i < plan.Ns.size(); i += workers) {
        const std::size_t hi = std::min(plan.Ns.size(), i + workers);
        for (std::size_t j = i; j < hi; ++j)
            futs[j] = std::async(std::launch::async,
                                 [&plan, N = plan.Ns[j]] { return integrate(plan, GPEquation::scaled, N); });
        for (std::size_t j = i; j < hi; ++j) scaled[j] = futs[j].get();
    }

    const double dx3 = std::pow(plan.grid.dx(), 3);
    std::vector<SweepRow> rows;
    rows.reserve(plan.Ns.size());
    for (std::size_t j = 0; j < plan.Ns.size(); ++j) {
        const Field& uN = scaled[j].psi;
        double l2 = 0.0, dl1 = 0.0;
        for (std::size_t i = 0; i < uN.size(); ++i) {
            l2 += std::norm(uN[i] - limit.psi[i]);
            dl1 += std::abs(std::norm(uN[i]) - std::norm(limit.psi[i]));
        }
        rows.push_back({plan.Ns[j], std::sqrt(l2 * dx3), dl1 * dx3, scaled[j].mass_drift,
                        scaled[j].energy_drift});
    }
    return rows;
}

RateFit fit_rate(const std::vector<SweepRow>& rows) {
    if (rows.size() < 3) throw UsageError("fit_rate: need at least 3 points");
    for (const auto& r : rows)
        if (r.error_l2 <= 1e-12)
            throw AccuracyError("fit_rate: error at N = " + std::to_string(r.N) +
                                " is at the floating-point floor; the fit is inconclusive -- "
                                "increase t_final or coarsen tolerance");
    const std::size_t n = rows.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        const double x = std::log(static_cast<double>(r.N));
        const double y = std::log(r.error_l2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    RateFit fit{};
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy * sxx - sx * sxy) / denom;
    double ss = 0.0;
    for (const auto& r : rows) {
        const double x = std::log(static_cast<double>(r.N));
        const double y = std::log(r.error_l2);
        const double e = y - (fit.slope * x + fit.intercept);
        ss += e * e;
        fit.points.emplace_back(r.N, r.error_l2);
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

} // namespace dipgp
