#include "dipgp/potential.hpp"

#include <cmath>

#include "dipgp/errors.hpp"
#include "dipgp/quadrature.hpp"
#include "dipgp/spectral.hpp"

namespace dipgp {

void PotentialSpec::validate() const {
    if (!(sigma > 0.0)) throw UsageError("PotentialSpec: sigma must be positive");
    if (!(r0 > 0.0)) throw UsageError("PotentialSpec: r0 must be positive");
    if (b < 0.0) throw UsageError("PotentialSpec: b must be >= 0");
    if (!(R > 0.0)) throw UsageError("PotentialSpec: R must be positive");
    if (!(beta > 0.0)) throw UsageError("PotentialSpec: beta must be positive");
    if (N < 2) throw UsageError("PotentialSpec: N must be >= 2");
}

namespace {

double bump_shape(double t) { return (t < 1.0) ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; }

// radial transform of the unit-mass bump of radius r0:
//   (4 pi / kappa) int_0^{r0} w(r) sin(kappa r) r dr, normalized so value(0) = 1
double bump_hat_radial(double kappa, double r0) {
    const int order = 64;
    auto mass_integrand = [&](double r) {
        return bump_shape(r / r0) * r * r;
    };
    const double mass = 4.0 * std::acos(-1.0) * gl_integrate(mass_integrand, 0.0, r0, order);
    if (kappa < 1e-12) return 1.0;
    auto integrand = [&](double r) { return bump_shape(r / r0) * std::sin(kappa * r) * r; };
    const double val =
        4.0 * std::acos(-1.0) / kappa * gl_integrate(integrand, 0.0, r0, order);
    return val / mass;
}

} // namespace

cplx PotentialSpec::w0_hat(const Vec3& k) const {
    const double k2 = dot(k, k);
    double radial;
    if (w0_kind == W0Kind::gaussian) {
        radial = std::exp(-0.5 * sigma * sigma * k2);
    } else {
        radial = bump_hat_radial(std::sqrt(k2), r0);
    }
    const double phase = dot(k, center);
    return a * radial * cplx{std::cos(phase), -std::sin(phase)};
}

cplx PotentialSpec::w_hat(const Vec3& k) const {
    double ext = 0.0;
    if (b != 0.0 && norm(k) > 0.0)
        ext = dipolar_full_closed(k, axis) * exterior_profile(R * norm(k));
    return w0_hat(k) + b * ext;
}

std::vector<cplx> PotentialSpec::scaled_multiplier(const Grid3& g) const {
    std::vector<cplx> out(g.size());
    const int n = g.n();
    const double s = std::pow(static_cast<double>(N), -beta);
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix, ++i) out[i] = w_hat(scaled(g.k_vec(ix, iy, iz), s));
    return out;
}

std::vector<cplx> PotentialSpec::limiting_multiplier(const Grid3& g) const {
    std::vector<cplx> out(g.size());
    const int n = g.n();
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix, ++i)
                out[i] = a + b * dipolar_full_closed(g.k_vec(ix, iy, iz), axis);
    return out;
}

StabilityReport stability_predicate(const PotentialSpec& pot, const Grid3& grid) {
    StabilityReport rep{};
    rep.min_w_hat = 1e300;
    rep.min_K_hat = 1e300;
    const int n = grid.n();
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const Vec3 k = grid.k_vec(ix, iy, iz);
                rep.min_w_hat = std::min(rep.min_w_hat, pot.w_hat(k).real());
                rep.min_K_hat = std::min(rep.min_K_hat, dipolar_full_closed(k, pot.axis));
            }
    rep.margin_a_vs_K = pot.a + pot.b * rep.min_K_hat;
    if (rep.min_w_hat >= 0.0)
        rep.classification = Stability::stable_hat_positive;
    else if (rep.margin_a_vs_K >= 0.0)
        rep.classification = Stability::stable_a_vs_K;
    else
        rep.classification = Stability::conditional;
    return rep;
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::stable_hat_positive: return "stable_hat_positive";
        case Stability::stable_a_vs_K: return "stable_a_vs_K";
        default: return "conditional";
    }
}

Field make_initial(const Grid3& grid, const InitialData& init) {
    Field f(grid, Space::position);
    const int n = grid.n();
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix, ++i) {
                const double dxv = grid.x(ix) - init.center[0];
                const double dyv = grid.x(iy) - init.center[1];
                const double dzv = grid.x(iz) - init.center[2];
                const double r2 = dxv * dxv + dyv * dyv + dzv * dzv;
                if (init.kind == InitialData::Kind::gaussian) {
                    f[i] = std::exp(-r2 / (4.0 * init.sigma * init.sigma));
                } else {
                    const double t2 = r2 / (init.sigma * init.sigma);
                    f[i] = (t2 < 1.0) ? std::exp(-1.0 / (1.0 - t2)) : 0.0;
                }
            }
    const double nrm = l2_norm(f);
    const cplx phase{std::cos(init.global_phase), std::sin(init.global_phase)};
    for (auto& v : f.values()) v *= phase / nrm;
    return f;
}

} // namespace dipgp
