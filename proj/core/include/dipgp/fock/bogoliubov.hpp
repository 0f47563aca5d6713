#pragma once
#include "dipgp/fock/operators.hpp"

namespace dipgp::fock {

/// Pieces of the Bogoliubov Hamiltonian
///   HB(t) = dGamma(h(t)) + (1/2) sum_pq (K2_pq adag_p adag_q + conj(K2_pq) a_p a_q)
/// with h = -Laplacian + w_N*|u|^2 + Q K1tilde Q - mu and K2 = (Q (x) Q) K2tilde,
/// Q = 1 - |u><u|.
struct BogoliubovParts {
    DMat h;  // one-body operator
    DMat K2; // projected pair function (symmetric)
    OperatorMatrix H;
};

BogoliubovParts build_bogoliubov(const FockSpace& s, const ModeBasis& basis, const DVec& u);

} // namespace dipgp::fock
