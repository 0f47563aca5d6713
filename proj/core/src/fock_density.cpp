#include "dipgp/fock/density.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "dipgp/errors.hpp"

namespace dipgp::fock {

namespace {

int infer_sector(const FockSpace& s, const DVec& psi) {
    int N = -1;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (std::abs(psi[i]) < 1e-12) continue;
        if (N < 0) N = s.total(i);
        else if (s.total(i) != N)
            throw UsageError("reduced_density: state is not supported in a single sector");
    }
    if (N < 0) throw UsageError("reduced_density: zero state");
    return N;
}

} // namespace

DMat reduced_density(const FockSpace& s, const DVec& psi, int k) {
    if (k != 1 && k != 2) throw UsageError("reduced_density: k must be 1 or 2");
    const int m = s.modes();
    const int N = infer_sector(s, psi);
    if (k == 2 && N < 2) throw UsageError("reduced_density: k = 2 needs N >= 2");

    if (k == 1) {
        DMat g = DMat::Zero(m, m);
        std::vector<int> occ;
        for (std::size_t i = 0; i < s.dim(); ++i) {
            if (psi[i] == cplx{0.0, 0.0}) continue;
            const auto& n = s.occ(i);
            for (int p = 0; p < m; ++p) {
                if (n[p] == 0) continue;
                for (int q = 0; q < m; ++q) {
                    // <psi| adag_q a_p |psi>: a_p then adag_q
                    occ = n;
                    double amp = std::sqrt(static_cast<double>(occ[p]));
                    occ[p] -= 1;
                    amp *= std::sqrt(static_cast<double>(occ[q] + 1));
                    occ[q] += 1;
                    g(p, q) += std::conj(psi[s.index(occ)]) * psi[i] * amp;
                }
            }
        }
        return g / static_cast<double>(N);
    }

    DMat g = DMat::Zero(m * m, m * m);
    std::vector<int> occ;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (psi[i] == cplx{0.0, 0.0}) continue;
        const auto& n = s.occ(i);
        for (int q = 0; q < m; ++q) {
            if (n[q] == 0) continue;
            for (int p = 0; p < m; ++p) {
                occ = n;
                double amp = std::sqrt(static_cast<double>(occ[q]));
                occ[q] -= 1;
                if (occ[p] == 0) continue;
                amp *= std::sqrt(static_cast<double>(occ[p]));
                occ[p] -= 1;
                for (int sidx = 0; sidx < m; ++sidx)
                    for (int r = 0; r < m; ++r) {
                        std::vector<int> occ2 = occ;
                        double amp2 = amp * std::sqrt(static_cast<double>(occ2[sidx] + 1));
                        occ2[sidx] += 1;
                        amp2 *= std::sqrt(static_cast<double>(occ2[r] + 1));
                        occ2[r] += 1;
                        // row (p,q), column (r,s): <adag_r adag_s a_q a_p>
                        g(p * m + q, r * m + sidx) +=
                            std::conj(psi[s.index(occ2)]) * psi[i] * amp2;
                    }
            }
        }
    }
    return g / (static_cast<double>(N) * (N - 1.0));
}

double trace_norm(const DMat& A) {
    Eigen::JacobiSVD<DMat> svd(A);
    return svd.singularValues().sum();
}

} // namespace dipgp::fock
