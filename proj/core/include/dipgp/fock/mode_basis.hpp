#pragma once
#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace dipgp::fock {

using cplx = std::complex<double>;
using DMat = Eigen::MatrixXcd;
using DVec = Eigen::VectorXcd;

/// One-body mode set and pair-interaction coefficients. Modes are plane waves
/// e^{i k_p x}/sqrt(ell) on a 1D torus of length ell (integer momenta ordered
/// 0, +1, -1, +2, ...), with kinetic energies eps_p = k_p^2 and
///   V_{pq,rs} = delta_{nu_p + nu_q, nu_r + nu_s} * what(k_p - k_r) / ell.
/// The algebra built on top never references the spatial dimension.
struct ModeBasis {
    int m = 0;
    double ell = 0.0;
    std::vector<int> nu;
    Eigen::VectorXd eps;
    std::vector<cplx> V; // m^4 coefficients, index ((p*m + q)*m + r)*m + s

    static ModeBasis plane_waves(int m, double ell, const std::function<double(double)>& what);

    cplx v(int p, int q, int r, int s) const { return V[((static_cast<std::size_t>(p) * m + q) * m + r) * m + s]; }
    double mode_k(int p) const;

    /// Hermitian symmetry V_{pq,rs} = conj(V_{rs,pq}) and boson symmetry
    /// V_{pq,rs} = V_{qp,sr}; throws on violation.
    void validate() const;

    // One-body blocks at condensate vector c (all m x m):
    DMat hartree_matrix(const DVec& c) const;  // matrix of w_N * |u|^2
    DMat exchange_matrix(const DVec& c) const; // kernel u(x) w_N(x-y) conj(u(y))
    DMat pair_function(const DVec& c) const;   // coefficients of u(x) w_N(x-y) u(y)
    double mu(const DVec& c) const;            // 0.5 <|u|^2, w_N * |u|^2>

    /// Right-hand side of the mode-space Hartree equation
    /// i dc/dt = (eps + hartree(c) - mu(c)) c.
    DVec hartree_rhs(const DVec& c) const;

    /// RK4 advance over dt split into substeps.
    DVec hartree_advance(DVec c, double dt, int substeps) const;
};

} // namespace dipgp::fock
