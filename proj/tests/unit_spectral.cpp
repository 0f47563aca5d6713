#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "dipgp/spectral.hpp"
#include "testutil.hpp"

using namespace dipgp;

namespace {
constexpr double kPi = 3.14159265358979323846;

double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}
} // namespace

TEST_CASE("grid invariants") {
    Grid3 g(8, 4.0);
    CHECK(g.dx() == doctest::Approx(0.5));
    // standard FFT ordering, recentered; k = 0 exactly once, Nyquist at n/2
    CHECK(g.k(0) == 0.0);
    CHECK(g.k(1) == doctest::Approx(2.0 * kPi / 4.0));
    CHECK(g.k(4) == doctest::Approx(-8.0 * kPi / 4.0));
    CHECK(g.k(7) == doctest::Approx(-2.0 * kPi / 4.0));
    int zeros = 0;
    for (int i = 0; i < g.n(); ++i)
        if (g.k(i) == 0.0) ++zeros;
    CHECK(zeros == 1);
    CHECK_THROWS_AS(Grid3(7, 1.0), UsageError);
    CHECK_THROWS_AS(Grid3(2, 1.0), UsageError);
    CHECK_THROWS_AS(Grid3(8, -1.0), UsageError);
}

TEST_CASE("constant field transforms to c L^3 at k = 0") {
    Grid3 g(8, 5.0);
    Field f(g, Space::position);
    const cplx c{0.7, -0.3};
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = c;
    Field hat = fft_forward(f);
    CHECK(std::abs(hat[0] - c * g.L() * g.L() * g.L()) < 1e-10);
    for (std::size_t i = 1; i < hat.size(); ++i) CHECK(std::abs(hat[i]) < 1e-10);
}

TEST_CASE("plane wave hits a single coefficient") {
    Grid3 g(8, 3.0);
    Field f(g, Space::position);
    const double k1 = 2.0 * kPi / g.L();
    for (int iz = 0; iz < g.n(); ++iz)
        for (int iy = 0; iy < g.n(); ++iy)
            for (int ix = 0; ix < g.n(); ++ix)
                f.at(ix, iy, iz) = std::exp(cplx{0.0, k1 * g.x(ix)});
    Field hat = fft_forward(f);
    const std::size_t target = g.idx(1, 0, 0); // k = (2 pi/L, 0, 0)
    CHECK(std::abs(hat[target] - cplx{g.L() * g.L() * g.L(), 0.0}) < 1e-9);
    for (std::size_t i = 0; i < hat.size(); ++i)
        if (i != target) CHECK(std::abs(hat[i]) < 1e-9);
}

TEST_CASE("round trip is the identity to 1e-12") {
    Grid3 g(16, 7.0);
    Field f = test::random_field(g);
    Field back = fft_inverse(fft_forward(f));
    double scale = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) scale = std::max(scale, std::abs(f[i]));
    CHECK(max_diff(f, back) / scale < 1e-12);
}

TEST_CASE("discrete Parseval across grid sizes") {
    for (int n : {8, 16, 32}) {
        Grid3 g(n, 6.0);
        Field f = test::random_field(g, 99 + n);
        const double npos = l2_norm(f);
        const double nfreq = l2_norm(fft_forward(f));
        CHECK(std::abs(npos - nfreq) / npos < 1e-12);
    }
}

TEST_CASE("laplacian eigenfunctions") {
    Grid3 g(16, 4.0);
    const double k1 = 2.0 * kPi / g.L();

    Field pw(g, Space::position);
    for (int iz = 0; iz < g.n(); ++iz)
        for (int iy = 0; iy < g.n(); ++iy)
            for (int ix = 0; ix < g.n(); ++ix)
                pw.at(ix, iy, iz) = std::exp(cplx{0.0, k1 * g.x(ix)});
    Field lap = laplacian(pw);
    double worst = 0.0;
    for (std::size_t i = 0; i < pw.size(); ++i)
        worst = std::max(worst, std::abs(lap[i] + k1 * k1 * pw[i]));
    CHECK(worst < 1e-10);

    Field c(g, Space::position);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 2.5;
    Field lc = laplacian(c);
    for (std::size_t i = 0; i < lc.size(); ++i) CHECK(std::abs(lc[i]) < 1e-12);

    Field sn(g, Space::position);
    for (int iz = 0; iz < g.n(); ++iz)
        for (int iy = 0; iy < g.n(); ++iy)
            for (int ix = 0; ix < g.n(); ++ix) sn.at(ix, iy, iz) = std::sin(k1 * g.x(iy));
    Field ls = laplacian(sn);
    worst = 0.0;
    for (std::size_t i = 0; i < sn.size(); ++i)
        worst = std::max(worst, std::abs(ls[i] + k1 * k1 * sn[i]));
    CHECK(worst < 1e-10);
}

TEST_CASE("laplacian of a real field stays real") {
    Grid3 g(16, 5.0);
    Field f = test::random_field(g, 7);
    for (auto& v : f.values()) v = v.real();
    Field lap = laplacian(f);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < lap.size(); ++i) {
        worst = std::max(worst, std::abs(lap[i].imag()));
        scale = std::max(scale, std::abs(lap[i].real()));
    }
    CHECK(worst / scale < 1e-12);
}

TEST_CASE("unit multiplier is the identity") {
    Grid3 g(8, 3.0);
    MultiplierTable m(g);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = 1.0;
    Field f = test::random_field(g, 3);
    Field conv = convolve_multiplier(f, m);
    double scale = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) scale = std::max(scale, std::abs(f[i]));
    CHECK(max_diff(f, conv) / scale < 1e-12);
}

TEST_CASE("gaussian convolved with gaussian matches the closed form") {
    // w = unit-mass gaussian of width sw, f = gaussian of width sf; the
    // convolution is the gaussian of width sqrt(sw^2 + sf^2). dx resolves both
    // widths and the box keeps periodic images below 1e-8.
    Grid3 g(32, 8.0);
    const double sw = 0.4, sf = 0.5;
    MultiplierTable m(g);
    std::size_t i = 0;
    for (int iz = 0; iz < g.n(); ++iz)
        for (int iy = 0; iy < g.n(); ++iy)
            for (int ix = 0; ix < g.n(); ++ix, ++i)
                m[i] = std::exp(-0.5 * sw * sw * g.k2(ix, iy, iz));
    Field f(g, Space::position);
    i = 0;
    for (int iz = 0; iz < g.n(); ++iz)
        for (int iy = 0; iy < g.n(); ++iy)
            for (int ix = 0; ix < g.n(); ++ix, ++i) {
                const double r2 = g.x(ix) * g.x(ix) + g.x(iy) * g.x(iy) + g.x(iz) * g.x(iz);
                f[i] = std::exp(-r2 / (2.0 * sf * sf));
            }
    Field conv = convolve_multiplier(f, m);
    const double s2 = sw * sw + sf * sf;
    // (2 pi sf^2)^{3/2}/(2 pi s2)^{3/2} * sf... closed form of (gauss_w * f):
    // amplitude sf^3/s2^{3/2}, width sqrt(s2)
    const double amp = std::pow(sf * sf / s2, 1.5);
    i = 0;
    double worst = 0.0;
    for (int iz = 0; iz < g.n(); ++iz)
        for (int iy = 0; iy < g.n(); ++iy)
            for (int ix = 0; ix < g.n(); ++ix, ++i) {
                const double r2 = g.x(ix) * g.x(ix) + g.x(iy) * g.x(iy) + g.x(iz) * g.x(iz);
                const double expect = amp * std::exp(-r2 / (2.0 * s2));
                worst = std::max(worst, std::abs(conv[i].real() - expect));
            }
    CHECK(worst < 1e-8);
}

TEST_CASE("convolution is linear") {
    Grid3 g(8, 3.0);
    MultiplierTable m(g);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::sin(0.1 * i) * 0.5;
    Field f = test::random_field(g, 11), h = test::random_field(g, 13);
    const cplx al{0.3, -0.7}, be{-1.1, 0.2};
    Field lin(g, Space::position);
    for (std::size_t i = 0; i < f.size(); ++i) lin[i] = al * f[i] + be * h[i];
    Field lhs = convolve_multiplier(lin, m);
    Field cf = convolve_multiplier(f, m), ch = convolve_multiplier(h, m);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(lhs[i] - (al * cf[i] + be * ch[i])));
    CHECK(worst < 1e-12);
}

TEST_CASE("wrong-space inputs are rejected") {
    Grid3 g(8, 3.0);
    Field f(g, Space::frequency);
    CHECK_THROWS_AS(fft_forward(f), UsageError);
    Field p(g, Space::position);
    CHECK_THROWS_AS(fft_inverse(p), UsageError);
    Grid3 g2(16, 3.0);
    MultiplierTable m(g2);
    CHECK_THROWS_AS(convolve_multiplier(p, m), UsageError);
}

TEST_CASE("binary field serialization round-trips") {
    Grid3 g(8, 2.5);
    Field f = test::random_field(g, 21);
    const std::string path = "test_field_io.bin";
    write_field(path, f);
    Field back = read_field(path);
    CHECK(back.grid().n() == g.n());
    CHECK(back.grid().L() == doctest::Approx(g.L()));
    CHECK(max_diff(f, back) == 0.0); // bit-exact
    std::remove(path.c_str());

    MultiplierTable m(g);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.25 * static_cast<double>(i);
    write_multiplier(path, m);
    MultiplierTable mb = read_multiplier(path);
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(m[i] == mb[i]);
    // kind mismatch is caught
    CHECK_THROWS_AS(read_field(path), UsageError);
    std::remove(path.c_str());
}
