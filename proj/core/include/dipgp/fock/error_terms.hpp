#pragma once
#include <array>

#include "dipgp/fock/bogoliubov.hpp"
#include "dipgp/fock/excitation.hpp"

namespace dipgp::fock {

/// The five correction terms of the excitation generator. With the number
/// functions evaluated sectorwise (square roots clamped to zero where the
/// argument would be negative):
///   R0 = dGamma(Q [w_N*|u|^2 + K1tilde - mu] Q) (1 - Nop)/(N - 1)
///   R1 = -2 (Nop sqrt(N - Nop)/(N - 1)) a(Q [w_N*|u|^2] u)
///   R2 = [sum K2_pq adag_p adag_q] (sqrt((N - Nop)(N - Nop - 1))/(N - 1) - 1)
///   R3 = 2 (sqrt(N - Nop)/(N - 1)) sum_{pqrs} [(1 (x) Q) w_N (Q (x) Q)]_{pq,rs}
///            conj(u_p) adag_q a_r a_s
///   R4 = (1/(2(N - 1))) sum [(Q (x) Q) w_N (Q (x) Q)]_{pq,rs} adag_p adag_q a_r a_s
/// R3 carries twice the bare slot term: the two annihilation slots of the
/// quartic contribute equally, and the factor is required for the generator
/// identity below to close.
struct ErrorTerms {
    std::array<OperatorMatrix, 5> R;
    OperatorMatrix calE() const; // (1/2) sum_j (R_j + R_j^*)
};

ErrorTerms build_error_terms(const FockSpace& s, const ModeBasis& basis, const DVec& u, long N);

/// First-leg-contracted cubic of R3 in two leg conventions, for comparing
/// their compressed actions on F(H_+): the kernel as displayed versus all
/// operator legs unprojected.
enum class R3Legs { projected, identity };
OperatorMatrix build_r3(const FockSpace& s, const ModeBasis& basis, const DVec& u, long N,
                        R3Legs legs);

/// G_N = 1^{<=N} (HB + E_N) 1^{<=N}, the generator of the excitation dynamics.
OperatorMatrix generator(const FockSpace& s, const ModeBasis& basis, const DVec& u, long N);

/// U_N H_N U_N^* by explicit conjugation.
OperatorMatrix conjugated_hamiltonian(const FockSpace& s, const ModeBasis& basis, const DVec& u,
                                      long N);

/// The moving-frame correction Lambda = (i dU_N/dt) U_N^* along the Hartree
/// flow, in closed form:
///   Lambda = -lambda (N - Nop) - adag(w) sqrt(N - Nop) - sqrt(N - Nop) a(w)
///            + adag(u) a(w),
/// with h_H = -Laplacian + w_N*|u|^2, w = Q h_H u, lambda = <u, h_H u> - mu.
/// On the excitation subspace the exact identity is
///   Pi G_N Pi = Pi (U_N H_N U_N^* + Lambda) Pi,
/// and Lambda vanishes identically at a stationary Hartree point.
OperatorMatrix frame_term(const FockSpace& s, const ModeBasis& basis, const DVec& u, long N);

} // namespace dipgp::fock
