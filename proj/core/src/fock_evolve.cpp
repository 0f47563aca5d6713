#include "dipgp/fock/evolve.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "dipgp/errors.hpp"

namespace dipgp::fock {

void lanczos_expv(const SpMat& A, DVec& phi, double dt, const LanczosOptions& opt) {
    const double nrm0 = phi.norm();
    if (nrm0 == 0.0) return;
    const int dmax = std::min<int>(opt.max_dim, static_cast<int>(phi.size()));

    std::vector<DVec> V;
    V.reserve(dmax + 1);
    V.push_back(phi / nrm0);
    std::vector<double> alpha, beta;

    DVec result;
    bool converged = false;
    for (int j = 0; j < dmax; ++j) {
        DVec w = A * V[j];
        const double a = (V[j].adjoint() * w)(0).real();
        alpha.push_back(a);
        w -= a * V[j];
        if (j > 0) w -= beta[j - 1] * V[j - 1];
        // full reorthogonalization; the spaces are small
        for (const auto& v : V) w -= v * (v.adjoint() * w)(0);
        const double b = w.norm();

        const int k = j + 1;
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) T(i, i) = alpha[i];
        for (int i = 0; i + 1 < k; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(k);
        const Eigen::VectorXd f = es.eigenvectors().row(0);
        for (int i = 0; i < k; ++i) {
            const double th = -dt * es.eigenvalues()[i];
            e1 += f[i] * cplx{std::cos(th), std::sin(th)} * es.eigenvectors().col(i);
        }
        const double err = (k > 1) ? std::abs(b * std::abs(e1[k - 1]) * dt) : 1.0;
        if (b < 1e-14 || err < opt.tol || k == dmax) {
            result = DVec::Zero(phi.size());
            for (int i = 0; i < k; ++i) result += e1[i] * V[i];
            result *= nrm0;
            converged = (b < 1e-14 || err < opt.tol);
            break;
        }
        beta.push_back(b);
        V.push_back(w / b);
    }
    if (!converged)
        throw AccuracyError("lanczos_expv: Krylov space did not converge; reduce the step size");
    phi = result;
}

std::vector<TrajectoryPoint> evolve_excitations(const FockSpace& s, const ModeBasis& basis,
                                                DVec u0, DVec phi0, GeneratorKind kind,
                                                const EvolveOptions& opt) {
    if (kind != GeneratorKind::bogoliubov && opt.N < 2)
        throw UsageError("evolve_excitations: N required for the projected generators");
    if (kind == GeneratorKind::truncated && opt.M < 0)
        throw UsageError("evolve_excitations: M required for the truncated generator");

    const long nsteps = static_cast<long>(std::llround(opt.t_final / opt.dt));
    DVec u = std::move(u0);
    DVec phi = std::move(phi0);

    auto build = [&](const DVec& uc) -> OperatorMatrix {
        switch (kind) {
            case GeneratorKind::bogoliubov: return build_bogoliubov(s, basis, uc).H;
            case GeneratorKind::full: return generator(s, basis, uc, opt.N);
            default: {
                OperatorMatrix G = generator(s, basis, uc, opt.N);
                OperatorMatrix leM = sector_projection(s, opt.M);
                return leM * G * leM;
            }
        }
    };

    auto record = [&](double t) {
        TrajectoryPoint p;
        p.t = t;
        p.phi = phi;
        p.u = u;
        p.norm = phi.norm();
        p.a_u_residual = a_of(s, u).apply(phi).norm();
        p.above_M = 0.0;
        if (opt.M >= 0)
            for (std::size_t i = 0; i < s.dim(); ++i)
                if (s.total(i) > opt.M) p.above_M = std::max(p.above_M, std::abs(phi[i]));
        return p;
    };

    std::vector<TrajectoryPoint> out;
    out.push_back(record(0.0));
    if (kind == GeneratorKind::truncated) {
        // localize the initial data as the truncated dynamics prescribes
        const OperatorMatrix leM = sector_projection(s, opt.M);
        phi = leM.apply(phi);
        out.back().phi = phi;
        out.back().norm = phi.norm();
    }

    for (long step = 0; step < nsteps; ++step) {
        const DVec umid = basis.hartree_advance(u, 0.5 * opt.dt, std::max(1, opt.hartree_substeps / 2));
        const OperatorMatrix G = build(umid);
        lanczos_expv(G.matrix(), phi, opt.dt, opt.lanczos);
        u = basis.hartree_advance(u, opt.dt, opt.hartree_substeps);
        for (Eigen::Index i = 0; i < phi.size(); ++i)
            if (!std::isfinite(phi[i].real()) || !std::isfinite(phi[i].imag()))
                throw DivergenceError("evolve_excitations: non-finite amplitude at step " +
                                      std::to_string(step + 1));
        const double t = (step + 1) * opt.dt;
        if ((opt.record_stride > 0 && (step + 1) % opt.record_stride == 0) || step + 1 == nsteps)
            out.push_back(record(t));
    }
    return out;
}

DVec evolve_exact(const OperatorMatrix& H, DVec psi, double t, const LanczosOptions& opt) {
    // keep ||H|| * chunk modest so a single Krylov space suffices
    double hnorm = 1.0;
    for (int k = 0; k < H.matrix().outerSize(); ++k) {
        double col = 0.0;
        for (SpMat::InnerIterator it(H.matrix(), k); it; ++it) col += std::abs(it.value());
        hnorm = std::max(hnorm, col);
    }
    const double chunk = std::min(t, 10.0 / hnorm);
    const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(t / chunk)));
    const double dt = t / nsteps;
    for (long i = 0; i < nsteps; ++i) lanczos_expv(H.matrix(), psi, dt, opt);
    return psi;
}

} // namespace dipgp::fock
