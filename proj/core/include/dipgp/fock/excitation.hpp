#pragma once
#include "dipgp/fock/operators.hpp"

namespace dipgp::fock {

/// Unitary map between the N-particle sector and the excitation space
/// F^{<=N}(u^perp): Psi = sum_k u^{(N-k)} (x)_s phi_k  <->  (+)_k phi_k.
/// Both sides live in the same truncated Fock space; the excitation side is
/// canonically embedded as the states with no occupation along u.
class ExcitationMap {
public:
    ExcitationMap(const FockSpace& space, DVec u, int N);

    /// U_N psi for psi supported in the N-particle sector.
    DVec apply(const DVec& psi) const;
    /// U_N^* phi for phi supported in the embedded F^{<=N}(u^perp).
    DVec apply_inverse(const DVec& phi) const;

    /// U_N as a big-space matrix (zero outside its domain sector).
    SpMat matrix() const;

    /// Orthogonal projector onto the embedded F^{<=N}(u^perp).
    SpMat subspace_projector() const;

    const DVec& u() const { return u_; }
    int N() const { return N_; }

private:
    const FockSpace* space_;
    DVec u_;
    int N_;
    SpMat rot_;     // Gamma(W), W unitary with first column u
    SpMat shift_;   // rotated coords: (n0, nplus) in the N sector -> (0, nplus)
};

} // namespace dipgp::fock
