#include "dipgp/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "dipgp/errors.hpp"

namespace dipgp {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kConvergeTol = 1e-8;
} // namespace

KernelSpec KernelSpec::dipolar(const Vec3& axis, double R) {
    KernelSpec s;
    s.kind_ = OmegaKind::dipolar;
    s.axis_ = normalized(axis);
    s.R_ = R;
    s.validate();
    return s;
}

KernelSpec KernelSpec::tabulated(int ntheta, int nphi, std::vector<double> values, double R) {
    KernelSpec s;
    s.kind_ = OmegaKind::table;
    s.ntheta_ = ntheta;
    s.nphi_ = nphi;
    s.table_ = std::move(values);
    s.R_ = R;
    s.validate();
    return s;
}

double KernelSpec::omega(const Vec3& w) const {
    const double c = dot(axis_, w);
    return 1.0 - 3.0 * c * c;
}

double KernelSpec::cancellation_residual() const {
    const SphereRule rule(ntheta_, nphi_);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double om = (kind_ == OmegaKind::dipolar) ? omega(rule.nodes[i]) : table_[i];
        s += rule.weights[i] * om;
    }
    return std::abs(s);
}

void KernelSpec::validate() const {
    if (!(R_ > 0.0)) throw UsageError("KernelSpec: R must be positive");
    if (kind_ == OmegaKind::table) {
        if (nphi_ % 2 != 0) throw UsageError("KernelSpec: table nphi must be even");
        if (table_.size() != static_cast<std::size_t>(ntheta_) * nphi_)
            throw UsageError("KernelSpec: table size does not match the quadrature rule");
        // Omega must be a pair function: the rule maps (i, j) -> (ntheta-1-i, j + nphi/2)
        // under w -> -w.
        for (int i = 0; i < ntheta_; ++i)
            for (int j = 0; j < nphi_; ++j) {
                const double a = table_[static_cast<std::size_t>(i) * nphi_ + j];
                const double b = table_[static_cast<std::size_t>(ntheta_ - 1 - i) * nphi_ +
                                        (j + nphi_ / 2) % nphi_];
                if (std::abs(a - b) > 1e-10)
                    throw UsageError("KernelSpec: Omega is not even at the quadrature nodes");
            }
    }
    const double resid = cancellation_residual();
    if (resid > 1e-10)
        throw UsageError("KernelSpec: spherical average of Omega does not vanish (residual " +
                         std::to_string(resid) + ")");
}

double dipolar_full_closed(const Vec3& k, const Vec3& axis) {
    const double kn = norm(k);
    if (kn == 0.0) return 0.0;
    const double c = dot(k, axis) / kn;
    return (4.0 * kPi / 3.0) * (3.0 * c * c - 1.0);
}

double inner_profile(double x) {
    if (x < 1e-3) {
        const double x2 = x * x;
        return x2 / 10.0 - x2 * x2 / 280.0; // series of 1 + 3cos(x)/x^2 - 3sin(x)/x^3
    }
    return 1.0 + 3.0 * std::cos(x) / (x * x) - 3.0 * std::sin(x) / (x * x * x);
}

double exterior_profile(double x) { return (x == 0.0) ? 1.0 : 1.0 - inner_profile(x); }

namespace {

// int_0^s (cos u - 1)/u du by composite Gauss-Legendre over dyadic
// subintervals of [0, s]; panel counts scale with the oscillation number so
// 64-point panels stay deeply converged. subdiv doubles the panel density.
double radial_cin(double s, int subdiv) {
    if (s == 0.0) return 0.0;
    const auto& gl = GaussLegendre::get(64);
    auto piece = [&](double a, double b) {
        const int oscillations = static_cast<int>(std::ceil((b - a) / (2.0 * kPi)));
        const int panels = std::max(1, ((oscillations + 7) / 8) * subdiv);
        const double h = (b - a) / panels;
        double sum = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double lo = a + p * h, mid = lo + 0.5 * h;
            for (int i = 0; i < 64; ++i) {
                const double u = mid + 0.5 * h * gl.x[i];
                const double f = (u < 1e-6) ? -0.5 * u : (std::cos(u) - 1.0) / u;
                sum += gl.w[i] * f;
            }
        }
        return 0.5 * h * sum;
    };
    double total = 0.0;
    double hi = s;
    while (hi > 2.0) {
        total += piece(0.5 * hi, hi);
        hi *= 0.5;
    }
    total += piece(0.0, hi);
    return total;
}

// One evaluation of the spherical integral for the built-in dipolar Omega in a
// k-aligned frame. mu = khat.w is integrated over geometrically refined panels
// toward mu = 0 (the integrand behaves like log|mu| there once s|mu| >> 1),
// each panel carrying composite 16-point Gauss-Legendre with sub-panels scaled
// to the local oscillation count of the radial value q(s|mu|).
double sphere_integral_dipolar(const KernelSpec& spec, const Vec3& khat, double s, int depth) {
    const Vec3 e3 = khat;
    const Vec3 e1 = any_orthogonal(e3);
    const Vec3 e2 = cross(e3, e1);

    const int nphi = 24 << std::min(depth, 2);
    const double wphi = 2.0 * kPi / nphi;
    const auto& gl = GaussLegendre::get(16);

    const int jmax = std::max(4, static_cast<int>(std::ceil(std::log2(std::max(s, 2.0)))) + 2);
    const int subdiv = 1 << depth;

    // phi-average of Omega at fixed mu; dipolar Omega is a degree-2 polynomial
    // in w so nphi = 24 is already exact.
    auto omega_phi_avg = [&](double mu) {
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        double sum = 0.0;
        for (int j = 0; j < nphi; ++j) {
            const double phi = wphi * (j + 0.5);
            const Vec3 w = {st * std::cos(phi) * e1[0] + st * std::sin(phi) * e2[0] + mu * e3[0],
                            st * std::cos(phi) * e1[1] + st * std::sin(phi) * e2[1] + mu * e3[1],
                            st * std::cos(phi) * e1[2] + st * std::sin(phi) * e2[2] + mu * e3[2]};
            sum += spec.omega(w);
        }
        return sum * wphi;
    };

    auto mu_panel = [&](double a, double b) {
        const int oscillations = static_cast<int>(std::ceil((b - a) * s / (2.0 * kPi)));
        const int panels = std::max(1, ((oscillations + 5) / 6) * subdiv);
        const double h = (b - a) / panels;
        double sum = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double lo = a + p * h, mid = lo + 0.5 * h;
            for (int i = 0; i < 16; ++i) {
                const double mu = mid + 0.5 * h * gl.x[i];
                const double q = radial_cin(s * mu, subdiv);
                sum += gl.w[i] * q * (omega_phi_avg(mu) + omega_phi_avg(-mu));
            }
        }
        return 0.5 * h * sum;
    };

    double total = mu_panel(0.0, std::pow(2.0, -jmax));
    for (int j = jmax - 1; j >= 0; --j)
        total += mu_panel(std::pow(2.0, -(j + 1)), std::pow(2.0, -j));
    return total;
}

double sphere_integral_table(const KernelSpec& spec, const Vec3& k, double R, int depth) {
    const SphereRule rule(spec.table_ntheta(), spec.table_nphi());
    const int subdiv = 1 << depth;
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double om = spec.table()[i];
        if (om == 0.0) continue;
        const double kappa = std::abs(dot(k, rule.nodes[i]));
        total += rule.weights[i] * om * radial_cin(kappa * R, subdiv);
    }
    return total;
}

} // namespace

double inner_truncated_transform(const KernelSpec& spec, const Vec3& k, double R) {
    if (!(R > 0.0)) throw UsageError("inner_truncated_transform: R must be positive");
    const double kn = norm(k);
    if (kn == 0.0) return 0.0;

    double prev = 0.0;
    for (int depth = 0; depth <= 5; ++depth) {
        double val;
        if (spec.kind() == KernelSpec::OmegaKind::dipolar) {
            const Vec3 khat = scaled(k, 1.0 / kn);
            val = sphere_integral_dipolar(spec, khat, kn * R, depth);
        } else {
            val = sphere_integral_table(spec, k, R, depth);
        }
        if (depth > 0 && std::abs(val - prev) < kConvergeTol) return val;
        prev = val;
    }
    throw AccuracyError("inner_truncated_transform: quadrature did not converge to 1e-8");
}

double full_multiplier_at(const KernelSpec& spec, const Vec3& k) {
    const double kn = norm(k);
    if (kn == 0.0) return 0.0;
    const double r1 = 4e3 / kn, r2 = 8e3 / kn;
    const double a1 = inner_truncated_transform(spec, k, r1);
    const double a2 = inner_truncated_transform(spec, k, r2);
    if (std::abs(a2 - a1) > 1e-5)
        throw AccuracyError("full_multiplier_at: truncated transforms at the two largest R "
                            "disagree by more than 1e-5");
    return 2.0 * a2 - a1; // Richardson in 1/R
}

double exterior_multiplier_at(const KernelSpec& spec, const Vec3& k) {
    if (norm(k) == 0.0) return 0.0;
    if (spec.kind() == KernelSpec::OmegaKind::dipolar)
        return dipolar_full_closed(k, spec.axis()) * exterior_profile(spec.R() * norm(k));
    return full_multiplier_at(spec, k) - inner_truncated_transform(spec, k, spec.R());
}

namespace {

void validate_dipolar_closed_form(const KernelSpec& spec) {
    // the fast path must agree with the Remark-2.2 quadrature route
    const Vec3 n = spec.axis();
    const Vec3 p = any_orthogonal(n);
    const Vec3 diag = normalized({n[0] + p[0], n[1] + p[1], n[2] + p[2]});
    for (const Vec3& dir : {n, p, diag}) {
        const Vec3 k = scaled(dir, 2.0);
        const double closed = dipolar_full_closed(k, n);
        const double quad = full_multiplier_at(spec, k);
        if (std::abs(closed - quad) > 1e-5)
            throw AccuracyError("full_multiplier: dipolar closed form disagrees with quadrature");
    }
}

} // namespace

MultiplierTable full_multiplier(const KernelSpec& spec, const Grid3& grid) {
    MultiplierTable out(grid);
    const int n = grid.n();
    if (spec.kind() == KernelSpec::OmegaKind::dipolar) {
        validate_dipolar_closed_form(spec);
        std::size_t i = 0;
        for (int iz = 0; iz < n; ++iz)
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix, ++i)
                    out[i] = dipolar_full_closed(grid.k_vec(ix, iy, iz), spec.axis());
    } else {
        bool all_zero = true;
        for (double v : spec.table())
            if (v != 0.0) all_zero = false;
        if (all_zero) return out;
        std::size_t i = 0;
        for (int iz = 0; iz < n; ++iz)
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix, ++i)
                    out[i] = full_multiplier_at(spec, grid.k_vec(ix, iy, iz));
    }
    return out;
}

MultiplierTable exterior_multiplier(const KernelSpec& spec, const Grid3& grid) {
    MultiplierTable out(grid);
    const int n = grid.n();
    if (spec.kind() == KernelSpec::OmegaKind::dipolar) {
        std::size_t i = 0;
        for (int iz = 0; iz < n; ++iz)
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix, ++i) {
                    const Vec3 k = grid.k_vec(ix, iy, iz);
                    out[i] = dipolar_full_closed(k, spec.axis()) *
                             exterior_profile(spec.R() * norm(k));
                }
        out[0] = 0.0;
    } else {
        std::size_t i = 0;
        for (int iz = 0; iz < n; ++iz)
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix, ++i)
                    out[i] = exterior_multiplier_at(spec, grid.k_vec(ix, iy, iz));
    }
    return out;
}

std::vector<Vec3> fibonacci_directions(int count) {
    std::vector<Vec3> dirs;
    dirs.reserve(count);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * i;
        dirs.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return dirs;
}

} // namespace dipgp
