#include "dipgp/fock/excitation.hpp"

#include <cmath>

#include "dipgp/errors.hpp"

namespace dipgp::fock {

namespace {

// Unitary completion of u: first column u, remaining columns Gram-Schmidt of
// the standard basis.
DMat complete_basis(const DVec& u) {
    const int m = static_cast<int>(u.size());
    DMat W = DMat::Zero(m, m);
    W.col(0) = u;
    int col = 1;
    for (int j = 0; j < m && col < m; ++j) {
        DVec v = DVec::Zero(m);
        v[j] = 1.0;
        for (int k = 0; k < col; ++k) v -= W.col(k) * (W.col(k).adjoint() * v)(0);
        const double nv = v.norm();
        if (nv > 1e-8) W.col(col++) = v / nv;
    }
    if (col != m) throw Error("ExcitationMap: basis completion failed");
    return W;
}

// Gamma(W): columns are the rotated-mode occupation states expressed in the
// original occupation basis, built by applying rotated creations to vacuum.
SpMat fock_rotation(const FockSpace& s, const DMat& W) {
    const int m = s.modes();
    std::vector<OperatorMatrix> rot_cr;
    rot_cr.reserve(m);
    for (int j = 0; j < m; ++j) rot_cr.push_back(adag_of(s, W.col(j)));

    std::vector<Eigen::Triplet<cplx>> trip;
    DVec vac = DVec::Zero(s.dim());
    vac[s.sector_begin(0)] = 1.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto& occ = s.occ(i);
        DVec v = vac;
        double fact = 1.0;
        for (int j = 0; j < m; ++j)
            for (int c = 0; c < occ[j]; ++c) {
                v = rot_cr[j].apply(v);
                fact *= (c + 1);
            }
        v /= std::sqrt(fact);
        for (Eigen::Index r = 0; r < v.size(); ++r)
            if (std::abs(v[r]) > 1e-300)
                trip.emplace_back(static_cast<int>(r), static_cast<int>(i), v[r]);
    }
    SpMat out(s.dim(), s.dim());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

} // namespace

ExcitationMap::ExcitationMap(const FockSpace& space, DVec u, int N)
    : space_(&space), u_(std::move(u)), N_(N) {
    if (u_.size() != space.modes()) throw UsageError("ExcitationMap: u has wrong dimension");
    if (std::abs(u_.norm() - 1.0) > 1e-10)
        throw UsageError("ExcitationMap: condensate vector must be normalized");
    if (N < 0 || N > space.cap()) throw UsageError("ExcitationMap: N must be within the cap");

    rot_ = fock_rotation(space, complete_basis(u_));

    std::vector<Eigen::Triplet<cplx>> trip;
    std::vector<int> occ;
    for (std::size_t i = space.sector_begin(N_); i < space.sector_end(N_); ++i) {
        occ = space.occ(i);
        occ[0] = 0; // drop the condensate occupation; the rest are excitations
        trip.emplace_back(static_cast<int>(space.index(occ)), static_cast<int>(i), 1.0);
    }
    shift_ = SpMat(space.dim(), space.dim());
    shift_.setFromTriplets(trip.begin(), trip.end());
}

DVec ExcitationMap::apply(const DVec& psi) const {
    for (std::size_t i = 0; i < space_->dim(); ++i)
        if (space_->total(i) != N_ && std::abs(psi[i]) > 1e-12)
            throw UsageError("ExcitationMap::apply: state not supported in the N sector");
    return rot_ * (shift_ * (rot_.adjoint() * psi));
}

DVec ExcitationMap::apply_inverse(const DVec& phi) const {
    return rot_ * (shift_.transpose() * (rot_.adjoint() * phi));
}

SpMat ExcitationMap::matrix() const { return rot_ * shift_ * rot_.adjoint(); }

SpMat ExcitationMap::subspace_projector() const {
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::size_t i = 0; i < space_->dim(); ++i)
        if (space_->occ(i)[0] == 0 && space_->total(i) <= N_)
            trip.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
    SpMat diag(space_->dim(), space_->dim());
    diag.setFromTriplets(trip.begin(), trip.end());
    return rot_ * diag * rot_.adjoint();
}

} // namespace dipgp::fock
