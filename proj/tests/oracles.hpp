#pragma once
// Test-only oracles, kept independent of the implementation paths they check.
#include <cmath>
#include <complex>

namespace dipgp::test {

/// Cosine integral Ci(t): power series for small t, Lentz continued fraction
/// for E1(i t) otherwise.
inline double cosine_integral(double t) {
    constexpr double euler = 0.57721566490153286;
    if (t <= 0.0) return -1e300;
    if (t <= 4.0) {
        double sum = 0.0, term;
        const double t2 = t * t;
        double pow = 1.0;
        for (int m = 1; m <= 60; ++m) {
            pow *= -t2 / ((2.0 * m) * (2.0 * m - 1.0));
            term = pow / (2.0 * m);
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return euler + std::log(t) + sum;
    }
    // E1(z) continued fraction (modified Lentz), z = i t; Ci(t) = -Re E1(it)
    const std::complex<double> z{0.0, t};
    std::complex<double> b = z + 1.0;
    std::complex<double> c = 1e300;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    const std::complex<double> e1 = h * std::exp(-z);
    return -e1.real();
}

/// int_0^s (cos u - 1)/u du = Ci(s) - log(s) - gamma
inline double cin_oracle(double s) {
    constexpr double euler = 0.57721566490153286;
    if (s == 0.0) return 0.0;
    return cosine_integral(s) - std::log(s) - euler;
}

/// int_s^infinity cos(u)/u du = -Ci(s)
inline double exterior_radial_oracle(double s) { return -cosine_integral(s); }

} // namespace dipgp::test
