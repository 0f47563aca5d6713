#include "dipgp/fock/bogoliubov.hpp"

#include "dipgp/errors.hpp"

namespace dipgp::fock {

BogoliubovParts build_bogoliubov(const FockSpace& s, const ModeBasis& basis, const DVec& u) {
    const int m = basis.m;
    if (std::abs(u.norm() - 1.0) > 1e-10)
        throw UsageError("build_bogoliubov: condensate vector must be normalized");
    const DMat P = u * u.adjoint();
    const DMat Q = DMat::Identity(m, m) - P;

    DMat h = basis.hartree_matrix(u) + Q * basis.exchange_matrix(u) * Q;
    for (int p = 0; p < m; ++p) h(p, p) += basis.eps[p] - basis.mu(u);

    const DMat K2 = Q * basis.pair_function(u) * Q.transpose();

    OperatorMatrix pair = pair_creation(s, K2);
    OperatorMatrix H = dgamma(s, h) + cplx{0.5, 0.0} * (pair + pair.adjoint());
    return {std::move(h), K2, std::move(H)};
}

} // namespace dipgp::fock
