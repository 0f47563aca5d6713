#include "dipgp/fock/mode_basis.hpp"

#include <cmath>

#include "dipgp/errors.hpp"

namespace dipgp::fock {

ModeBasis ModeBasis::plane_waves(int m, double ell, const std::function<double(double)>& what) {
    if (m < 1) throw UsageError("ModeBasis: need at least one mode");
    if (!(ell > 0.0)) throw UsageError("ModeBasis: ell must be positive");
    ModeBasis b;
    b.m = m;
    b.ell = ell;
    b.nu.push_back(0);
    for (int j = 1; static_cast<int>(b.nu.size()) < m; ++j) {
        b.nu.push_back(j);
        if (static_cast<int>(b.nu.size()) < m) b.nu.push_back(-j);
    }
    const double k0 = 2.0 * std::acos(-1.0) / ell;
    b.eps.resize(m);
    for (int p = 0; p < m; ++p) b.eps[p] = (k0 * b.nu[p]) * (k0 * b.nu[p]);
    b.V.assign(static_cast<std::size_t>(m) * m * m * m, cplx{0.0, 0.0});
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) {
                    if (b.nu[p] + b.nu[q] != b.nu[r] + b.nu[s]) continue;
                    b.V[((static_cast<std::size_t>(p) * m + q) * m + r) * m + s] =
                        what(k0 * (b.nu[p] - b.nu[r])) / ell;
                }
    b.validate();
    return b;
}

double ModeBasis::mode_k(int p) const { return 2.0 * std::acos(-1.0) * nu[p] / ell; }

void ModeBasis::validate() const {
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) {
                    if (std::abs(v(p, q, r, s) - std::conj(v(r, s, p, q))) > 1e-12)
                        throw UsageError("ModeBasis: V is not Hermitian-symmetric");
                    if (std::abs(v(p, q, r, s) - v(q, p, s, r)) > 1e-12)
                        throw UsageError("ModeBasis: V is not boson-symmetric");
                }
}

DMat ModeBasis::hartree_matrix(const DVec& c) const {
    DMat h = DMat::Zero(m, m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            cplx acc{0.0, 0.0};
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) acc += v(p, r, q, s) * std::conj(c[r]) * c[s];
            h(p, q) = acc;
        }
    return h;
}

DMat ModeBasis::exchange_matrix(const DVec& c) const {
    DMat k1 = DMat::Zero(m, m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            cplx acc{0.0, 0.0};
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) acc += v(p, s, r, q) * c[r] * std::conj(c[s]);
            k1(p, q) = acc;
        }
    return k1;
}

DMat ModeBasis::pair_function(const DVec& c) const {
    DMat k2 = DMat::Zero(m, m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            cplx acc{0.0, 0.0};
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) acc += v(p, q, r, s) * c[r] * c[s];
            k2(p, q) = acc;
        }
    return k2;
}

double ModeBasis::mu(const DVec& c) const {
    cplx acc{0.0, 0.0};
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s)
                    acc += v(p, q, r, s) * std::conj(c[p]) * std::conj(c[q]) * c[r] * c[s];
    return 0.5 * acc.real();
}

DVec ModeBasis::hartree_rhs(const DVec& c) const {
    DVec out = eps.asDiagonal() * c + hartree_matrix(c) * c - mu(c) * c;
    return cplx{0.0, -1.0} * out;
}

DVec ModeBasis::hartree_advance(DVec c, double dt, int substeps) const {
    const double h = dt / substeps;
    for (int s = 0; s < substeps; ++s) {
        const DVec k1 = hartree_rhs(c);
        const DVec k2 = hartree_rhs(c + 0.5 * h * k1);
        const DVec k3 = hartree_rhs(c + 0.5 * h * k2);
        const DVec k4 = hartree_rhs(c + h * k3);
        c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return c;
}

} // namespace dipgp::fock
