#pragma once
#include "dipgp/fock/operators.hpp"

namespace dipgp::fock {

/// k-particle reduced density matrix of a normalized N-sector state, with the
/// trace-one normalization: k = 1 gives the m x m matrix <adag_q a_p>/N;
/// k = 2 gives the m^2 x m^2 matrix <adag_r adag_s a_q a_p>/(N(N-1)) indexed
/// by flattened pairs (p*m + q).
DMat reduced_density(const FockSpace& s, const DVec& psi, int k);

/// Trace norm (sum of singular values).
double trace_norm(const DMat& A);

} // namespace dipgp::fock
