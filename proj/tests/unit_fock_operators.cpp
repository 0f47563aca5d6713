#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "dipgp/fock/operators.hpp"

using namespace dipgp::fock;

namespace {

ModeBasis gaussian_basis(int m, double g = 0.7, double sw = 0.55) {
    return ModeBasis::plane_waves(m, 2.0 * 3.14159265358979323846, [g, sw](double k) {
        return g * std::exp(-0.5 * sw * sw * k * k);
    });
}

DVec random_vec(std::size_t n, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    DVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cplx{nd(gen), nd(gen)};
    return v / v.norm();
}

} // namespace

TEST_CASE("annihilation kills the vacuum; creation obeys sqrt(n+1)") {
    FockSpace s(3, 4);
    const OperatorMatrix a0 = build_annihilation(s, 0);
    DVec vac = DVec::Zero(s.dim());
    vac[s.sector_begin(0)] = 1.0;
    CHECK(a0.apply(vac).norm() == 0.0);

    const OperatorMatrix c1 = build_creation(s, 1);
    DVec one = c1.apply(vac);
    DVec two = c1.apply(one);
    CHECK(two.norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("canonical commutation below the truncation edge") {
    FockSpace s(3, 4);
    const int m = s.modes();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const OperatorMatrix ai = build_annihilation(s, i);
            const OperatorMatrix cj = build_creation(s, j);
            const OperatorMatrix comm = ai * cj - cj * ai;
            // exact on the subspace with total < cap
            for (std::size_t col = 0; col < s.dim(); ++col) {
                if (s.total(col) >= s.cap()) continue;
                DVec e = DVec::Zero(s.dim());
                e[col] = 1.0;
                DVec r = comm.apply(e);
                r[col] -= (i == j) ? 1.0 : 0.0;
                CHECK(r.norm() < 1e-12);
            }
        }
}

TEST_CASE("a*(f) a(f) is bounded by ||f||^2 times the number operator") {
    FockSpace s(3, 4);
    const OperatorMatrix Nop = number_operator(s);
    std::mt19937_64 gen(42);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 100; ++trial) {
        DVec f(3);
        for (int p = 0; p < 3; ++p) f[p] = cplx{nd(gen), nd(gen)};
        const OperatorMatrix af = a_of(s, f);
        DVec v = random_vec(s.dim(), 1000 + trial);
        const double lhs = af.apply(v).squaredNorm();
        const double rhs = f.squaredNorm() * (v.adjoint() * Nop.apply(v))(0).real();
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("adjoint pairs and dGamma(1) = N") {
    FockSpace s(3, 3);
    for (int p = 0; p < 3; ++p) {
        const OperatorMatrix diff = build_creation(s, p).adjoint() - build_annihilation(s, p);
        CHECK(diff.max_abs() < 1e-14);
    }
    const OperatorMatrix dg1 = dgamma(s, DMat::Identity(3, 3));
    CHECK((dg1 - number_operator(s)).max_abs() < 1e-14);
}

TEST_CASE("free hamiltonian spectrum is the occupation sum of mode energies") {
    FockSpace s(3, 3);
    ModeBasis basis = gaussian_basis(3);
    std::fill(basis.V.begin(), basis.V.end(), cplx{0.0, 0.0});
    const OperatorMatrix H = build_hamiltonian(s, basis, 3);
    // H is diagonal in the occupation basis for V = 0
    for (std::size_t i = 0; i < s.dim(); ++i) {
        double expect = 0.0;
        for (int p = 0; p < 3; ++p) expect += basis.eps[p] * s.occ(i)[p];
        DVec e = DVec::Zero(s.dim());
        e[i] = 1.0;
        DVec r = H.apply(e);
        CHECK(std::abs(r[i].real() - expect) < 1e-12);
        r[i] = 0.0;
        CHECK(r.norm() < 1e-12);
    }
}

TEST_CASE("single mode, two bosons: level 2 eps0 + V0") {
    FockSpace s(1, 2);
    ModeBasis basis;
    basis.m = 1;
    basis.ell = 1.0;
    basis.nu = {0};
    basis.eps = Eigen::VectorXd::Zero(1);
    basis.eps[0] = 0.37;
    basis.V = {cplx{0.82, 0.0}};
    const OperatorMatrix H = build_hamiltonian(s, basis, 2);
    // the 1/(N-1) = 1 prefactor: <2| H |2> = 2 eps0 + V0
    const std::size_t idx2 = s.sector_begin(2);
    DVec e = DVec::Zero(s.dim());
    e[idx2] = 1.0;
    CHECK(std::abs(H.apply(e)[idx2].real() - (2.0 * 0.37 + 0.82)) < 1e-13);
}

TEST_CASE("ground energy against a dense eigensolver oracle") {
    const int m = 4, N = 4;
    FockSpace s(m, N);
    const ModeBasis basis = gaussian_basis(m);
    const OperatorMatrix H = build_hamiltonian(s, basis, N);

    const std::size_t lo = s.sector_begin(N), hi = s.sector_end(N);
    DMat dense = DMat::Zero(hi - lo, hi - lo);
    for (std::size_t j = lo; j < hi; ++j) {
        DVec e = DVec::Zero(s.dim());
        e[j] = 1.0;
        const DVec col = H.apply(e);
        for (std::size_t i = lo; i < hi; ++i) dense(i - lo, j - lo) = col[i];
    }
    Eigen::SelfAdjointEigenSolver<DMat> es(dense);
    const double e_ground = es.eigenvalues().minCoeff();

    // power-iteration-free cross-check: Rayleigh quotient of the eigensolver's
    // own ground vector under the sparse operator
    DVec ground = DVec::Zero(s.dim());
    for (std::size_t i = lo; i < hi; ++i) ground[i] = es.eigenvectors().col(0)[i - lo];
    const double rq = (ground.adjoint() * H.apply(ground))(0).real();
    CHECK(std::abs(rq - e_ground) < 1e-10);
    CHECK(std::isfinite(e_ground));
}

TEST_CASE("non-Hermitian interaction tensors are rejected") {
    FockSpace s(2, 2);
    ModeBasis basis = gaussian_basis(2);
    basis.V[1] += cplx{0.1, 0.2}; // break the symmetry
    CHECK_THROWS_AS(build_hamiltonian(s, basis, 2), dipgp::UsageError);
}

TEST_CASE("condensate vector is normalized and sits in the N sector") {
    FockSpace s(3, 4);
    const DVec u = random_vec(3, 5);
    const DVec v = condensate_vector(s, u, 4);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (s.total(i) != 4) CHECK(std::abs(v[i]) == 0.0);
}

TEST_CASE("coo dump round-trips through a text parse") {
    FockSpace s(2, 2);
    const OperatorMatrix Nop = number_operator(s);
    Nop.write_coo("test_coo.txt");
    std::ifstream is("test_coo.txt");
    std::string header;
    std::getline(is, header);
    CHECK(header.find("dipgp coo") != std::string::npos);
    int r, c;
    double re, im;
    int count = 0;
    while (is >> r >> c >> re >> im) {
        CHECK(r == c);
        CHECK(re == doctest::Approx(static_cast<double>(s.total(r))));
        ++count;
    }
    CHECK(count == static_cast<int>(s.dim()) - 1); // vacuum row is zero
    std::remove("test_coo.txt");
}
