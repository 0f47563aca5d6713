#pragma once
#include <vector>

#include "dipgp/fock/error_terms.hpp"

namespace dipgp::fock {

struct LanczosOptions {
    int max_dim = 64;
    double tol = 1e-12;
};

/// phi <- exp(-i dt A) phi for Hermitian sparse A (Lanczos with full
/// reorthogonalization; throws AccuracyError if the Krylov space does not
/// converge within max_dim).
void lanczos_expv(const SpMat& A, DVec& phi, double dt, const LanczosOptions& opt = {});

enum class GeneratorKind {
    bogoliubov, // HB(t)
    full,       // G_N(t) = 1^{<=N} (HB + E_N) 1^{<=N}
    truncated   // 1^{<=M} G_N(t) 1^{<=M}
};

struct EvolveOptions {
    double dt = 1e-3;
    double t_final = 0.5;
    long N = -1;  // required for full/truncated
    int M = -1;   // required for truncated
    int hartree_substeps = 4;
    int record_stride = 0; // additionally record every k-th step; 0 = endpoints only
    LanczosOptions lanczos;
};

struct TrajectoryPoint {
    double t;
    DVec phi;
    DVec u;
    double norm;
    double a_u_residual; // || a(u(t)) phi(t) ||
    double above_M;      // max |amplitude| in sectors with more than M particles
};

/// Midpoint-exponential propagation of the excitation vector: per step the
/// generator is rebuilt at u(t + dt/2) (u advanced alongside by the mode-space
/// Hartree equation with the mu gauge) and applied with a Krylov exponential.
std::vector<TrajectoryPoint> evolve_excitations(const FockSpace& s, const ModeBasis& basis,
                                                DVec u0, DVec phi0, GeneratorKind kind,
                                                const EvolveOptions& opt);

/// psi <- exp(-i t H) psi for a time-independent Hamiltonian, stepping so each
/// Krylov call stays well-conditioned.
DVec evolve_exact(const OperatorMatrix& H, DVec psi, double t, const LanczosOptions& opt = {});

} // namespace dipgp::fock
