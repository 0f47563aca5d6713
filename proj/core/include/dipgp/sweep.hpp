#pragma once
#include <vector>

#include "dipgp/gp.hpp"

namespace dipgp {

/// Sweep over particle numbers N comparing the scaled equation against the
/// limiting one at a fixed time, grid, initial datum, and dt.
struct SweepPlan {
    double beta = 0.25;
    std::vector<long> Ns;
    double t_final = 0.5;
    double dt = 2.5e-3;
    Grid3 grid{64, 16.0};
    PotentialSpec pot;
    InitialData init;
    int threads = 1;
    bool use_limit_multiplier_proxy = false; // replace what(k/N^beta) by its N->infinity limit
    GPOptions gp_options;

    void validate() const;
};

struct SweepRow {
    long N;
    double error_l2;         // || u_N(t) - phi(t) ||_{L^2}, both mu-gauged
    double error_density_l1; // || |u_N|^2 - |phi|^2 ||_{L^1}
    double mass_drift;
    double energy_drift;
};

/// Integrates the limiting trajectory once, then each scaled trajectory
/// (independent trajectories run in parallel up to plan.threads workers).
std::vector<SweepRow> run_sweep(const SweepPlan& plan);

struct RateFit {
    double slope;
    double intercept;
    double residual; // rms residual of the log-log least-squares line
    std::vector<std::pair<long, double>> points;
};

/// Least-squares line on (log N, log error). Refuses fewer than 3 points;
/// errors at the floating-point floor make the fit inconclusive.
RateFit fit_rate(const std::vector<SweepRow>& rows);

} // namespace dipgp
