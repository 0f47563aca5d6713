#pragma once
#include <vector>

#include "dipgp/field.hpp"
#include "dipgp/potential.hpp"

namespace dipgp {

enum class GPEquation { limiting, scaled };

struct GPState {
    Field psi;
    double t = 0.0;
    GPEquation equation = GPEquation::limiting;
    long steps = 0;
};

struct GPOptions {
    bool include_mu = true; // integrate the chemical-potential phase
    bool dealias = false;   // 2/3-rule filter on the density transform
};

/// Strang-split time integrator of
///   i dpsi/dt = (-Laplacian + V_eff - mu(t)) psi
/// with V_eff = w_N * |psi|^2 (scaled equation) or a |psi|^2 + b K * |psi|^2
/// (limiting equation), both realized through a precomputed interaction
/// multiplier. Every substep is a pure phase, so the L^2 norm is preserved
/// exactly.
class GPSolver {
public:
    GPSolver(const Grid3& grid, const PotentialSpec& pot, GPEquation eq, GPOptions opt = {});

    /// One step: half potential phase, full kinetic step in Fourier space,
    /// half potential phase with the density re-evaluated.
    void step(GPState& state, double dt) const;

    double chemical_potential(const GPState& state) const;
    double energy(const GPState& state) const;

    /// H^order norm, order in {1, 2, 3, 4}.
    double sobolev_norm(const GPState& state, int order) const;

    GPState initial_state(const InitialData& init) const;

    const std::vector<cplx>& multiplier() const { return mult_; }
    const Grid3& grid() const { return grid_; }

private:
    Grid3 grid_;
    PotentialSpec pot_;
    GPEquation eq_;
    GPOptions opt_;
    std::vector<cplx> mult_;

    // density transform and its mean-field energy 0.5 <rho, w*rho>
    void density_potential(const Field& psi, Field& V, double& mu) const;
};

/// Fixed-order diagnostics row for the trajectory CSV.
struct GPDiag {
    double t, mass, energy, h1, h2, h3, h4, mu;
};

GPDiag gp_diagnostics(const GPSolver& solver, const GPState& state);

} // namespace dipgp
