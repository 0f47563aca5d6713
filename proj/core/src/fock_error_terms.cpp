#include "dipgp/fock/error_terms.hpp"

#include <cmath>

#include "dipgp/errors.hpp"

namespace dipgp::fock {

namespace {

double clamped_sqrt(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

// (A (x) B) V (C (x) D), all one-body matrices m x m.
std::vector<cplx> sandwich(const ModeBasis& basis, const DMat& A, const DMat& B, const DMat& C,
                           const DMat& D) {
    const int m = basis.m;
    std::vector<cplx> out(static_cast<std::size_t>(m) * m * m * m, cplx{0.0, 0.0});
    // contract legs one at a time
    std::vector<cplx> t1(out.size()), t2(out.size()), t3(out.size());
    auto idx = [m](int p, int q, int r, int s) {
        return ((static_cast<std::size_t>(p) * m + q) * m + r) * m + s;
    };
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) {
                    cplx acc{0.0, 0.0};
                    for (int a = 0; a < m; ++a) acc += A(p, a) * basis.v(a, q, r, s);
                    t1[idx(p, q, r, s)] = acc;
                }
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) {
                    cplx acc{0.0, 0.0};
                    for (int b = 0; b < m; ++b) acc += B(q, b) * t1[idx(p, b, r, s)];
                    t2[idx(p, q, r, s)] = acc;
                }
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) {
                    cplx acc{0.0, 0.0};
                    for (int c = 0; c < m; ++c) acc += t2[idx(p, q, c, s)] * C(c, r);
                    t3[idx(p, q, r, s)] = acc;
                }
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) {
                    cplx acc{0.0, 0.0};
                    for (int d = 0; d < m; ++d) acc += t3[idx(p, q, r, d)] * D(d, s);
                    out[idx(p, q, r, s)] = acc;
                }
    return out;
}

// contract the first slot with conj(u): C(q, r*m+s) = sum_p conj(u_p) T_{pq,rs}
DMat contract_first(const std::vector<cplx>& T, const DVec& u, int m) {
    DMat C = DMat::Zero(m, m * m);
    for (int q = 0; q < m; ++q)
        for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) {
                cplx acc{0.0, 0.0};
                for (int p = 0; p < m; ++p)
                    acc += std::conj(u[p]) *
                           T[((static_cast<std::size_t>(p) * m + q) * m + r) * m + s];
                C(q, r * m + s) = acc;
            }
    return C;
}

} // namespace

OperatorMatrix ErrorTerms::calE() const {
    OperatorMatrix e = cplx{0.5, 0.0} * (R[0] + R[0].adjoint());
    for (int j = 1; j < 5; ++j) e = e + cplx{0.5, 0.0} * (R[j] + R[j].adjoint());
    return e;
}

OperatorMatrix build_r3(const FockSpace& s, const ModeBasis& basis, const DVec& u, long N,
                        R3Legs legs) {
    const int m = basis.m;
    const DMat P = u * u.adjoint();
    const DMat Q = DMat::Identity(m, m) - P;
    const DMat I = DMat::Identity(m, m);
    const std::vector<cplx> T = (legs == R3Legs::projected)
                                    ? sandwich(basis, I, Q, Q, Q)
                                    : std::vector<cplx>(basis.V);
    const OperatorMatrix core = cubic_one_two(s, contract_first(T, u, m));
    const double dN = static_cast<double>(N);
    const OperatorMatrix pref =
        number_function(s, [dN](int n) { return clamped_sqrt(dN - n) / (dN - 1.0); });
    return pref * core;
}

ErrorTerms build_error_terms(const FockSpace& s, const ModeBasis& basis, const DVec& u, long N) {
    if (N < 2) throw UsageError("build_error_terms: N must be >= 2");
    const int m = basis.m;
    if (std::abs(u.norm() - 1.0) > 1e-10)
        throw UsageError("build_error_terms: condensate vector must be normalized");
    const DMat P = u * u.adjoint();
    const DMat Q = DMat::Identity(m, m) - P;
    const double dN = static_cast<double>(N);
    const double mu = basis.mu(u);
    const DMat hart = basis.hartree_matrix(u);

    // R0
    const DMat A0 = Q * (hart + basis.exchange_matrix(u) - mu * DMat::Identity(m, m)) * Q;
    OperatorMatrix R0 =
        dgamma(s, A0) * number_function(s, [dN](int n) { return (1.0 - n) / (dN - 1.0); });

    // R1
    const DVec f1 = Q * (hart * u);
    OperatorMatrix R1 =
        cplx{-2.0, 0.0} *
        (number_function(s, [dN](int n) { return n * clamped_sqrt(dN - n) / (dN - 1.0); }) *
         a_of(s, f1));

    // R2
    const DMat K2 = Q * basis.pair_function(u) * Q.transpose();
    OperatorMatrix R2 =
        pair_creation(s, K2) * number_function(s, [dN](int n) {
            return clamped_sqrt((dN - n) * (dN - n - 1.0)) / (dN - 1.0) - 1.0;
        });

    // R3 (slot multiplicity 2)
    OperatorMatrix R3 = cplx{2.0, 0.0} * build_r3(s, basis, u, N, R3Legs::projected);

    // R4
    std::vector<cplx> T4 = sandwich(basis, Q, Q, Q, Q);
    for (auto& t : T4) t /= 2.0 * (dN - 1.0);
    OperatorMatrix R4 = quartic(s, T4, m);

    return ErrorTerms{{std::move(R0), std::move(R1), std::move(R2), std::move(R3), std::move(R4)}};
}

OperatorMatrix generator(const FockSpace& s, const ModeBasis& basis, const DVec& u, long N) {
    const OperatorMatrix HB = build_bogoliubov(s, basis, u).H;
    const OperatorMatrix E = build_error_terms(s, basis, u, N).calE();
    const OperatorMatrix leN = sector_projection(s, static_cast<int>(N));
    return leN * (HB + E) * leN;
}

OperatorMatrix conjugated_hamiltonian(const FockSpace& s, const ModeBasis& basis, const DVec& u,
                                      long N) {
    const ExcitationMap U(s, u, static_cast<int>(N));
    const OperatorMatrix H = build_hamiltonian(s, basis, N);
    const SpMat Um = U.matrix();
    return {s, SpMat(Um * H.matrix() * Um.adjoint())};
}

OperatorMatrix frame_term(const FockSpace& s, const ModeBasis& basis, const DVec& u, long N) {
    const int m = basis.m;
    const DMat P = u * u.adjoint();
    const DMat Q = DMat::Identity(m, m) - P;
    DMat hH = basis.hartree_matrix(u);
    for (int p = 0; p < m; ++p) hH(p, p) += basis.eps[p];
    const double lambda = (u.adjoint() * (hH * u))(0).real() - basis.mu(u);
    const DVec w = Q * (hH * u);

    const double dN = static_cast<double>(N);
    const OperatorMatrix sqN =
        number_function(s, [dN](int n) { return clamped_sqrt(dN - n); });
    const OperatorMatrix nminus =
        number_function(s, [dN](int n) { return dN - n; });

    OperatorMatrix out = cplx{-lambda, 0.0} * nminus;
    out = out - adag_of(s, w) * sqN;
    out = out - sqN * a_of(s, w);
    out = out + adag_of(s, u) * a_of(s, w);
    return out;
}

} // namespace dipgp::fock
