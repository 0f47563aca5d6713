#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "dipgp/kernel.hpp"
#include "oracles.hpp"

using namespace dipgp;

namespace {
constexpr double kPi = 3.14159265358979323846;
const Vec3 zhat{0.0, 0.0, 1.0};

// Test-side spherical integrator for F(k) = int Omega(w) f(|k.w|) dsigma(w),
// independent of the library's quadrature layout: k-aligned frame, geometric
// mu panels toward the equator, Gauss-Legendre inside each panel.
double sphere_oracle(const Vec3& k, const Vec3& axis,
                     const std::function<double(double)>& radial) {
    const Vec3 e3 = normalized(k);
    const Vec3 e1 = any_orthogonal(e3);
    const Vec3 e2 = cross(e3, e1);
    const double kn = norm(k);
    const auto& gl = GaussLegendre::get(40);
    const int nphi = 48;
    double total = 0.0;
    auto panel = [&](double lo, double hi) {
        double acc = 0.0;
        for (int i = 0; i < 40; ++i) {
            const double mu = 0.5 * (hi - lo) * gl.x[i] + 0.5 * (hi + lo);
            const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            double om = 0.0;
            for (int j = 0; j < nphi; ++j) {
                const double phi = 2.0 * kPi * (j + 0.5) / nphi;
                for (double sgn : {1.0, -1.0}) {
                    const Vec3 w = {st * std::cos(phi) * e1[0] + st * std::sin(phi) * e2[0] +
                                        sgn * mu * e3[0],
                                    st * std::cos(phi) * e1[1] + st * std::sin(phi) * e2[1] +
                                        sgn * mu * e3[1],
                                    st * std::cos(phi) * e1[2] + st * std::sin(phi) * e2[2] +
                                        sgn * mu * e3[2]};
                    const double c = dot(axis, w);
                    om += 1.0 - 3.0 * c * c;
                }
            }
            acc += gl.w[i] * om * (2.0 * kPi / nphi) * radial(kn * mu);
        }
        return 0.5 * (hi - lo) * acc;
    };
    double hi = 1.0;
    for (int j = 0; j < 40 && hi > 1e-9; ++j) {
        total += panel(0.5 * hi, hi);
        hi *= 0.5;
    }
    total += panel(0.0, hi);
    return total;
}
} // namespace

TEST_CASE("product sphere rule integrates even monomials exactly") {
    SphereRule rule;
    const Vec3 e = normalized({0.3, -0.5, 0.81});
    for (int j = 0; j <= 11; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * std::pow(dot(e, rule.nodes[i]), 2 * j);
        CHECK(std::abs(acc - 4.0 * kPi / (2.0 * j + 1.0)) < 1e-12); // degree 22 monomial
    }
}

TEST_CASE("dipolar cancellation") {
    const KernelSpec spec = KernelSpec::dipolar({0.2, -0.4, 0.89}, 1.0);
    CHECK(spec.cancellation_residual() < 1e-10);
}

TEST_CASE("omega = 1 violates cancellation and reports 4 pi") {
    std::vector<double> ones(12 * 24, 1.0);
    try {
        KernelSpec::tabulated(12, 24, std::move(ones), 1.0);
        FAIL("expected rejection");
    } catch (const UsageError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("12.56") != std::string::npos); // residual = 4 pi
    }
}

TEST_CASE("uneven table rejected") {
    std::vector<double> vals(12 * 24, 0.0);
    vals[5] = 1.0; // breaks the w -> -w pairing
    CHECK_THROWS_AS(KernelSpec::tabulated(12, 24, std::move(vals), 1.0), UsageError);
    CHECK_THROWS_AS(KernelSpec::dipolar(zhat, -0.5), UsageError);
}

TEST_CASE("truncated transform vanishes at k = 0") {
    const KernelSpec spec = KernelSpec::dipolar(zhat, 1.0);
    CHECK(inner_truncated_transform(spec, {0.0, 0.0, 0.0}, 2.0) == 0.0);
}

TEST_CASE("truncated transform matches an independent radial/spherical oracle") {
    const KernelSpec spec = KernelSpec::dipolar(zhat, 1.0);
    const Vec3 ks[] = {{0.0, 0.0, 3.1}, {1.2, -0.7, 2.0}, {4.0, 1.0, 0.3}};
    for (const Vec3& k : ks) {
        const double R = 1.7;
        const double mine = inner_truncated_transform(spec, k, R);
        const double oracle =
            sphere_oracle(k, zhat, [R](double kap) { return test::cin_oracle(std::abs(kap) * R); });
        CHECK(std::abs(mine - oracle) < 1e-8);
        // closed-form factorization for the dipolar kernel
        const double closed = dipolar_full_closed(k, zhat) * inner_profile(norm(k) * R);
        CHECK(std::abs(mine - closed) < 1e-8);
    }
}

TEST_CASE("small |k|R bound with the observed constant") {
    const KernelSpec spec = KernelSpec::dipolar(zhat, 1.0);
    const auto dirs = fibonacci_directions(100);
    double cmax = 0.0;
    const double R = 1.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const double s = 0.001 + (0.1 - 0.001) * static_cast<double>(i) / (dirs.size() - 1);
        const double val = inner_truncated_transform(spec, scaled(dirs[i], s / R), R);
        cmax = std::max(cmax, std::abs(val) / (s * s));
    }
    MESSAGE("observed truncated-kernel bound constant: ", cmax);
    CHECK(cmax <= 4.0);
    CHECK(cmax > 0.5); // the bound is saturated near the dipole axis at ~4 pi/15
}

TEST_CASE("large R|k| limit along the dipole axis is 8 pi/3") {
    const KernelSpec spec = KernelSpec::dipolar(zhat, 20.0);
    const double val = inner_truncated_transform(spec, {0.0, 0.0, 50.0}, 20.0);
    CHECK(std::abs(val - 8.0 * kPi / 3.0) < 1e-3);
}

TEST_CASE("full multiplier via quadrature: perpendicular and magic-angle values") {
    const KernelSpec spec = KernelSpec::dipolar(zhat, 1.0);
    const double perp = full_multiplier_at(spec, {2.0, 0.0, 0.0});
    CHECK(std::abs(perp + 4.0 * kPi / 3.0) < 1e-5);

    const double c = 1.0 / std::sqrt(3.0);
    const double st = std::sqrt(1.0 - c * c);
    const double magic = full_multiplier_at(spec, scaled({st, 0.0, c}, 2.0));
    CHECK(std::abs(magic) < 1e-5);
}

TEST_CASE("zero omega table gives the zero multiplier") {
    std::vector<double> zeros(12 * 24, 0.0);
    const KernelSpec spec = KernelSpec::tabulated(12, 24, std::move(zeros), 1.0);
    const Grid3 g(8, 4.0);
    const MultiplierTable m = full_multiplier(spec, g);
    CHECK(m.max_abs() == 0.0);
}

TEST_CASE("exterior multiplier: k = 0, small-R recovery, large-s decay") {
    const double R = 0.25;
    const KernelSpec spec = KernelSpec::dipolar(zhat, R);
    CHECK(exterior_multiplier_at(spec, {0.0, 0.0, 0.0}) == 0.0);

    // R -> 0 recovers the full multiplier within the truncated-kernel bound
    const Vec3 k{1.5, 0.7, 2.2};
    const KernelSpec tiny = KernelSpec::dipolar(zhat, 1e-3);
    const double diff =
        std::abs(exterior_multiplier_at(tiny, k) - dipolar_full_closed(k, zhat));
    CHECK(diff <= 1.0 * std::pow(1e-3 * norm(k), 2));

    // oscillatory decay at |k|R = 100, checked against a Ci-based oracle
    const Vec3 kbig = scaled(normalized({0.3, 0.1, 0.95}), 100.0 / R);
    const double mine = exterior_multiplier_at(spec, kbig);
    const double oracle = sphere_oracle(kbig, zhat, [R](double kap) {
        return test::exterior_radial_oracle(std::abs(kap) * R);
    });
    CHECK(std::abs(mine - oracle) < 1e-4);
    CHECK(std::abs(mine) < 0.2);
}

TEST_CASE("multiplier table invariants: parity, bound, zero at k = 0") {
    const KernelSpec spec = KernelSpec::dipolar(normalized({0.1, 0.25, 0.96}), 0.5);
    const Grid3 g(8, 4.0);
    const MultiplierTable m = full_multiplier(spec, g);
    CHECK(m[0] == 0.0);
    CHECK(m.max_abs() <= 8.0 * kPi / 3.0 + 1e-6);
    // -k is on the grid only away from the Nyquist rows
    const int n = g.n();
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                if (ix == n / 2 || iy == n / 2 || iz == n / 2) continue;
                const int jx = (n - ix) % n, jy = (n - iy) % n, jz = (n - iz) % n;
                CHECK(std::abs(m[g.idx(ix, iy, iz)] - m[g.idx(jx, jy, jz)]) < 1e-12);
            }
}

TEST_CASE("homogeneity degree zero") {
    const KernelSpec spec = KernelSpec::dipolar(zhat, 1.0);
    const Grid3 g(8, 4.0);
    const MultiplierTable m = full_multiplier(spec, g);
    for (const Vec3& k : fibonacci_directions(20)) {
        const double v1 = dipolar_full_closed(k, zhat);
        const double v2 = dipolar_full_closed(scaled(k, 2.0), zhat);
        CHECK(std::abs(v1 - v2) < 1e-10);
    }
    (void)m;
}

TEST_CASE("spherical average of the full multiplier vanishes") {
    SphereRule rule;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * dipolar_full_closed(rule.nodes[i], zhat);
    CHECK(std::abs(acc) < 1e-8);
}

TEST_CASE("tabulated dipolar omega reproduces the built-in at moderate scales") {
    const SphereRule rule;
    std::vector<double> vals(rule.nodes.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double c = rule.nodes[i][2];
        vals[i] = 1.0 - 3.0 * c * c;
    }
    const KernelSpec tab = KernelSpec::tabulated(12, 24, std::move(vals), 1.0);
    const KernelSpec dip = KernelSpec::dipolar(zhat, 1.0);
    const Vec3 k{0.8, -0.4, 1.1};
    CHECK(std::abs(inner_truncated_transform(tab, k, 1.5) -
                   inner_truncated_transform(dip, k, 1.5)) < 1e-7);
}
