#include "dipgp/fock/operators.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include "dipgp/errors.hpp"

namespace dipgp::fock {

using Triplet = Eigen::Triplet<cplx>;

double OperatorMatrix::max_abs() const {
    double m = 0.0;
    for (int k = 0; k < mat_.outerSize(); ++k)
        for (SpMat::InnerIterator it(mat_, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

double OperatorMatrix::hermiticity_defect() const {
    SpMat d = mat_ - SpMat(mat_.adjoint());
    double m = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SpMat::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

void OperatorMatrix::write_coo(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw UsageError("cannot open for writing: " + path);
    os << "# dipgp coo " << mat_.rows() << " " << mat_.cols() << "\n";
    os.precision(17);
    for (int k = 0; k < mat_.outerSize(); ++k)
        for (SpMat::InnerIterator it(mat_, k); it; ++it)
            os << it.row() << " " << it.col() << " " << it.value().real() << " "
               << it.value().imag() << "\n";
}

OperatorMatrix build_creation(const FockSpace& s, int mode) {
    if (mode < 0 || mode >= s.modes()) throw UsageError("build_creation: mode out of range");
    std::vector<Triplet> trip;
    std::vector<int> occ;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (s.total(i) + 1 > s.cap()) continue;
        occ = s.occ(i);
        occ[mode] += 1;
        trip.emplace_back(static_cast<int>(s.index(occ)), static_cast<int>(i),
                          std::sqrt(static_cast<double>(occ[mode])));
    }
    SpMat m(s.dim(), s.dim());
    m.setFromTriplets(trip.begin(), trip.end());
    return {s, std::move(m)};
}

OperatorMatrix build_annihilation(const FockSpace& s, int mode) {
    return build_creation(s, mode).adjoint();
}

OperatorMatrix number_operator(const FockSpace& s) {
    return number_function(s, [](int n) { return static_cast<double>(n); });
}

OperatorMatrix number_function(const FockSpace& s, const std::function<double(int)>& f) {
    std::vector<Triplet> trip;
    trip.reserve(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const double v = f(s.total(i));
        if (v != 0.0) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), v);
    }
    SpMat m(s.dim(), s.dim());
    m.setFromTriplets(trip.begin(), trip.end());
    return {s, std::move(m)};
}

OperatorMatrix sector_projection(const FockSpace& s, int max_total) {
    return number_function(s, [max_total](int n) { return n <= max_total ? 1.0 : 0.0; });
}

OperatorMatrix dgamma(const FockSpace& s, const DMat& h) {
    const int m = s.modes();
    if (h.rows() != m || h.cols() != m) throw UsageError("dgamma: one-body matrix size mismatch");
    std::vector<Triplet> trip;
    std::vector<int> occ;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto& n = s.occ(i);
        for (int q = 0; q < m; ++q) {
            if (n[q] == 0) continue;
            for (int p = 0; p < m; ++p) {
                const cplx hpq = h(p, q);
                if (hpq == cplx{0.0, 0.0}) continue;
                if (p == q) {
                    trip.emplace_back(static_cast<int>(i), static_cast<int>(i),
                                      hpq * static_cast<double>(n[q]));
                } else {
                    occ = n;
                    occ[q] -= 1;
                    occ[p] += 1;
                    const double amp = std::sqrt(static_cast<double>(n[q]) * occ[p]);
                    trip.emplace_back(static_cast<int>(s.index(occ)), static_cast<int>(i),
                                      hpq * amp);
                }
            }
        }
    }
    SpMat out(s.dim(), s.dim());
    out.setFromTriplets(trip.begin(), trip.end());
    return {s, std::move(out)};
}

OperatorMatrix pair_creation(const FockSpace& s, const DMat& K) {
    const int m = s.modes();
    if (K.rows() != m || K.cols() != m) throw UsageError("pair_creation: size mismatch");
    std::vector<Triplet> trip;
    std::vector<int> occ;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (s.total(i) + 2 > s.cap()) continue;
        const auto& n = s.occ(i);
        for (int q = 0; q < m; ++q)
            for (int p = 0; p < m; ++p) {
                const cplx kpq = K(p, q);
                if (kpq == cplx{0.0, 0.0}) continue;
                occ = n;
                double amp = std::sqrt(static_cast<double>(occ[q] + 1));
                occ[q] += 1;
                amp *= std::sqrt(static_cast<double>(occ[p] + 1));
                occ[p] += 1;
                trip.emplace_back(static_cast<int>(s.index(occ)), static_cast<int>(i), kpq * amp);
            }
    }
    SpMat out(s.dim(), s.dim());
    out.setFromTriplets(trip.begin(), trip.end());
    return {s, std::move(out)};
}

OperatorMatrix cubic_one_two(const FockSpace& s, const DMat& C) {
    const int m = s.modes();
    if (C.rows() != m || C.cols() != m * m) throw UsageError("cubic_one_two: size mismatch");
    std::vector<Triplet> trip;
    std::vector<int> occ;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto& n = s.occ(i);
        for (int r = 0; r < m; ++r) {
            for (int sidx = 0; sidx < m; ++sidx) {
                if (n[sidx] == 0) continue;
                occ = n;
                double amp = std::sqrt(static_cast<double>(occ[sidx]));
                occ[sidx] -= 1;
                if (occ[r] == 0) continue;
                amp *= std::sqrt(static_cast<double>(occ[r]));
                occ[r] -= 1;
                for (int q = 0; q < m; ++q) {
                    const cplx c = C(q, r * m + sidx);
                    if (c == cplx{0.0, 0.0}) continue;
                    std::vector<int> occ2 = occ;
                    const double amp2 = amp * std::sqrt(static_cast<double>(occ2[q] + 1));
                    occ2[q] += 1;
                    trip.emplace_back(static_cast<int>(s.index(occ2)), static_cast<int>(i),
                                      c * amp2);
                }
            }
        }
    }
    SpMat out(s.dim(), s.dim());
    out.setFromTriplets(trip.begin(), trip.end());
    return {s, std::move(out)};
}

OperatorMatrix quartic(const FockSpace& s, const std::vector<cplx>& T, int m) {
    if (T.size() != static_cast<std::size_t>(m) * m * m * m)
        throw UsageError("quartic: tensor size mismatch");
    std::vector<Triplet> trip;
    std::vector<int> occ;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto& n = s.occ(i);
        for (int sidx = 0; sidx < m; ++sidx) {
            if (n[sidx] == 0) continue;
            for (int r = 0; r < m; ++r) {
                occ = n;
                double amp = std::sqrt(static_cast<double>(occ[sidx]));
                occ[sidx] -= 1;
                if (occ[r] == 0) continue;
                amp *= std::sqrt(static_cast<double>(occ[r]));
                occ[r] -= 1;
                for (int q = 0; q < m; ++q) {
                    std::vector<int> occ2 = occ;
                    double amp2 = amp * std::sqrt(static_cast<double>(occ2[q] + 1));
                    occ2[q] += 1;
                    for (int p = 0; p < m; ++p) {
                        const cplx t = T[((static_cast<std::size_t>(p) * m + q) * m + r) * m + sidx];
                        if (t == cplx{0.0, 0.0}) continue;
                        std::vector<int> occ3 = occ2;
                        const double amp3 = amp2 * std::sqrt(static_cast<double>(occ3[p] + 1));
                        occ3[p] += 1;
                        trip.emplace_back(static_cast<int>(s.index(occ3)), static_cast<int>(i),
                                          t * amp3);
                    }
                }
            }
        }
    }
    SpMat out(s.dim(), s.dim());
    out.setFromTriplets(trip.begin(), trip.end());
    return {s, std::move(out)};
}

OperatorMatrix a_of(const FockSpace& s, const DVec& f) {
    const int m = s.modes();
    std::vector<Triplet> trip;
    std::vector<int> occ;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto& n = s.occ(i);
        for (int p = 0; p < m; ++p) {
            if (n[p] == 0 || f[p] == cplx{0.0, 0.0}) continue;
            occ = n;
            const double amp = std::sqrt(static_cast<double>(occ[p]));
            occ[p] -= 1;
            trip.emplace_back(static_cast<int>(s.index(occ)), static_cast<int>(i),
                              std::conj(f[p]) * amp);
        }
    }
    SpMat out(s.dim(), s.dim());
    out.setFromTriplets(trip.begin(), trip.end());
    return {s, std::move(out)};
}

OperatorMatrix adag_of(const FockSpace& s, const DVec& f) {
    DVec fc = f.conjugate();
    return a_of(s, fc).adjoint();
}

OperatorMatrix build_hamiltonian(const FockSpace& s, const ModeBasis& basis, long N) {
    if (N < 2) throw UsageError("build_hamiltonian: N must be >= 2");
    if (basis.m != s.modes()) throw UsageError("build_hamiltonian: mode count mismatch");
    basis.validate();
    DMat kin = DMat::Zero(basis.m, basis.m);
    for (int p = 0; p < basis.m; ++p) kin(p, p) = basis.eps[p];
    OperatorMatrix H = dgamma(s, kin);
    std::vector<cplx> T(basis.V);
    const double pref = 1.0 / (2.0 * (static_cast<double>(N) - 1.0));
    for (auto& t : T) t *= pref;
    return H + quartic(s, T, basis.m);
}

DVec condensate_vector(const FockSpace& s, const DVec& u, int N) {
    if (N > s.cap()) throw UsageError("condensate_vector: N exceeds the space cap");
    DVec v = DVec::Zero(s.dim());
    v[s.sector_begin(0)] = 1.0; // vacuum
    OperatorMatrix cu = adag_of(s, u);
    for (int j = 0; j < N; ++j) v = cu.apply(v);
    double fact = 1.0;
    for (int j = 2; j <= N; ++j) fact *= j;
    return v / std::sqrt(fact);
}

} // namespace dipgp::fock
