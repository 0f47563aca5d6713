#include "dipgp/fock/report.hpp"

#include <cmath>

#include "dipgp/errors.hpp"
#include "dipgp/fock/density.hpp"

namespace dipgp::fock {

ModeBasis theorem1_basis(const Theorem1Params& p, long N) {
    const double scale = std::pow(static_cast<double>(N), -p.beta);
    const double g = p.coupling, sw = p.sigma_w;
    return ModeBasis::plane_waves(p.m, p.ell, [g, sw, scale](double k) {
        const double ks = k * scale;
        return g * std::exp(-0.5 * sw * sw * ks * ks);
    });
}

DVec theorem1_initial_mode(const Theorem1Params& p) {
    if (p.u0.size() > 0) {
        if (p.u0.size() != p.m) throw UsageError("theorem1: u0 has wrong dimension");
        return p.u0 / p.u0.norm();
    }
    DVec u = DVec::Zero(p.m);
    u[0] = 0.9;
    if (p.m > 1) u[1] = 0.3;
    if (p.m > 2) u[2] = cplx{0.0, 0.2};
    return u / u.norm();
}

std::vector<Theorem1Row> theorem1_report(const Theorem1Params& p) {
    std::vector<Theorem1Row> rows;
    for (int N : p.N_list) {
        if (N < 2) throw UsageError("theorem1: every N must be >= 2");
        const FockSpace space(p.m, N);
        const ModeBasis basis = theorem1_basis(p, N);
        const DVec u0 = theorem1_initial_mode(p);

        // exact evolution of the pure condensate
        const DVec psi0 = condensate_vector(space, u0, N);
        const OperatorMatrix H = build_hamiltonian(space, basis, N);
        const DVec psiT = evolve_exact(H, psi0, p.t_final);

        // Bogoliubov evolution of Phi(0) = U_N(0) Psi_N(0) = vacuum
        DVec phi0 = DVec::Zero(space.dim());
        phi0[space.sector_begin(0)] = 1.0;
        EvolveOptions opt;
        opt.dt = p.dt;
        opt.t_final = p.t_final;
        opt.N = N;
        opt.hartree_substeps = p.hartree_substeps;
        const auto traj =
            evolve_excitations(space, basis, u0, phi0, GeneratorKind::bogoliubov, opt);
        const TrajectoryPoint& end = traj.back();

        const ExcitationMap U(space, end.u, N);
        const DVec recon = U.apply_inverse(end.phi);

        const DMat g1 = reduced_density(space, psiT, 1);
        const DMat proj = end.u * end.u.adjoint();

        Theorem1Row row;
        row.N = N;
        row.t = p.t_final;
        row.norm_error = (psiT - recon).norm();
        row.trace_error = trace_norm(g1 - proj);
        row.norm_drift = std::abs(end.norm - 1.0);
        row.a_u_residual = end.a_u_residual;
        rows.push_back(row);
    }
    return rows;
}

} // namespace dipgp::fock
