#pragma once
#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <functional>

#include "dipgp/fock/mode_basis.hpp"
#include "dipgp/fock/space.hpp"

namespace dipgp::fock {

using SpMat = Eigen::SparseMatrix<cplx>;

/// Sparse matrix of a second-quantized operator on a FockSpace.
class OperatorMatrix {
public:
    explicit OperatorMatrix(const FockSpace& s) : space_(&s), mat_(s.dim(), s.dim()) {}
    OperatorMatrix(const FockSpace& s, SpMat m) : space_(&s), mat_(std::move(m)) {}

    const FockSpace& space() const { return *space_; }
    const SpMat& matrix() const { return mat_; }
    SpMat& matrix() { return mat_; }

    DVec apply(const DVec& v) const { return mat_ * v; }
    OperatorMatrix adjoint() const { return {*space_, SpMat(mat_.adjoint())}; }

    double max_abs() const;
    double hermiticity_defect() const; // max |A - A^*|
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

    OperatorMatrix operator+(const OperatorMatrix& o) const { return {*space_, SpMat(mat_ + o.mat_)}; }
    OperatorMatrix operator-(const OperatorMatrix& o) const { return {*space_, SpMat(mat_ - o.mat_)}; }
    OperatorMatrix operator*(const OperatorMatrix& o) const { return {*space_, SpMat(mat_ * o.mat_)}; }
    friend OperatorMatrix operator*(cplx s, const OperatorMatrix& a) { return {*a.space_, SpMat(s * a.mat_)}; }

    /// Coordinate-list text dump: "# dipgp coo <rows> <cols>" then one
    /// "row col re im" line per entry, row-major sorted.
    void write_coo(const std::string& path) const;

private:
    const FockSpace* space_;
    SpMat mat_;
};

// Elementary operators. Raising out of the truncated space maps to zero.
OperatorMatrix build_creation(const FockSpace& s, int mode);
OperatorMatrix build_annihilation(const FockSpace& s, int mode);

OperatorMatrix number_operator(const FockSpace& s);
/// Diagonal function of the total particle number.
OperatorMatrix number_function(const FockSpace& s, const std::function<double(int)>& f);
/// Spectral projection 1(N <= max_total).
OperatorMatrix sector_projection(const FockSpace& s, int max_total);

/// dGamma(h) = sum_pq h_pq adag_p a_q.
OperatorMatrix dgamma(const FockSpace& s, const DMat& h);
/// sum_pq K_pq adag_p adag_q.
OperatorMatrix pair_creation(const FockSpace& s, const DMat& K);
/// sum_qrs C(q, r*m+s) adag_q a_r a_s (one creator, two annihilators).
OperatorMatrix cubic_one_two(const FockSpace& s, const DMat& C);
/// sum_pqrs T[pqrs] adag_p adag_q a_r a_s.
OperatorMatrix quartic(const FockSpace& s, const std::vector<cplx>& T, int m);

/// a(f) = sum_p conj(f_p) a_p and its adjoint.
OperatorMatrix a_of(const FockSpace& s, const DVec& f);
OperatorMatrix adag_of(const FockSpace& s, const DVec& f);

/// H_N = sum_p eps_p adag_p a_p + (1/(2(N-1))) sum V_pqrs adag_p adag_q a_r a_s.
/// Number-conserving; its restriction to the N-particle sector is the
/// many-body Hamiltonian. Throws on a non-Hermitian interaction tensor.
OperatorMatrix build_hamiltonian(const FockSpace& s, const ModeBasis& basis, long N);

/// Condensate vector u^{tensor N} / sqrt(N!) as a Fock-space vector.
DVec condensate_vector(const FockSpace& s, const DVec& u, int N);

} // namespace dipgp::fock
