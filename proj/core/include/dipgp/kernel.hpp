#pragma once
#include <vector>

#include "dipgp/field.hpp"
#include "dipgp/grid.hpp"
#include "dipgp/quadrature.hpp"
#include "dipgp/vec3.hpp"

namespace dipgp {

/// Angular part Omega of the kernel K(x) = Omega(x/|x|)/|x|^3 together with
/// the inner truncation radius R. Omega must be even with vanishing spherical
/// average (the cancellation property); both are checked by validate().
class KernelSpec {
public:
    enum class OmegaKind { dipolar, table };

    /// Built-in dipolar choice Omega(w) = 1 - 3 (n.w)^2 with unit dipole axis n.
    static KernelSpec dipolar(const Vec3& axis, double R);

    /// Omega given by values at the nodes of SphereRule(ntheta, nphi), in node
    /// order. nphi must be even so the rule is closed under w -> -w.
    static KernelSpec tabulated(int ntheta, int nphi, std::vector<double> values, double R);

    OmegaKind kind() const { return kind_; }
    const Vec3& axis() const { return axis_; }
    double R() const { return R_; }
    int table_ntheta() const { return ntheta_; }
    int table_nphi() const { return nphi_; }
    const std::vector<double>& table() const { return table_; }

    double omega(const Vec3& unit_dir) const; // dipolar closed form only

    /// Spherical average of Omega under the spec's quadrature rule.
    double cancellation_residual() const;

    /// Throws UsageError on violated invariants (evenness, cancellation, R > 0).
    void validate() const;

private:
    KernelSpec() = default;
    OmegaKind kind_{OmegaKind::dipolar};
    Vec3 axis_{0.0, 0.0, 1.0};
    double R_{1.0};
    int ntheta_{12}, nphi_{24};
    std::vector<double> table_;
};

// Closed forms for the built-in dipolar kernel.
// The full multiplier is Khat(k) = (4pi/3)(3 cos^2(theta_k) - 1); the
// spherically truncated pieces factorize into the same angular profile times
// a radial profile of x = R|k|:
//   FT(1_{|x|<=R} K)(k) = Khat(k) * inner_profile(R|k|)
//   FT(1_{|x|> R} K)(k) = Khat(k) * exterior_profile(R|k|)
double dipolar_full_closed(const Vec3& k, const Vec3& axis);
double inner_profile(double x);    // 1 + 3 cos(x)/x^2 - 3 sin(x)/x^3, -> x^2/10 at 0
double exterior_profile(double x); // 3 (sin x - x cos x)/x^3, -> 1 at 0

/// FT(1_{|x|<=R} K)(k) evaluated as the double integral
///   int_{S^2} int_0^R (cos(r k.w) - 1)/r Omega(w) dr dsigma(w)
/// by composite Gauss-Legendre quadrature in r and a spherical rule of degree
/// >= 20, with orders doubled until successive values differ by < 1e-8.
/// Throws AccuracyError on non-convergence. The spec's own R is ignored in
/// favor of the explicit argument.
double inner_truncated_transform(const KernelSpec& spec, const Vec3& k, double R);

/// Large-R limit of the truncated transform (R chosen so R|k| >= 1e3,
/// Richardson-extrapolated in 1/R). Khat(0) := 0 by the cancellation property.
double full_multiplier_at(const KernelSpec& spec, const Vec3& k);

/// FT(1_{|x|>R} K)(k) = full - inner at the spec's R; 0 at k = 0.
double exterior_multiplier_at(const KernelSpec& spec, const Vec3& k);

/// Tabulate Khat on a grid. For the built-in dipolar Omega the closed form is
/// used after being validated against the quadrature route at sampled
/// wavevectors; for tabulated Omega every grid point goes through quadrature.
MultiplierTable full_multiplier(const KernelSpec& spec, const Grid3& grid);

/// Tabulate FT(1_{|x|>R} K) on a grid (value at k = 0 is 0).
MultiplierTable exterior_multiplier(const KernelSpec& spec, const Grid3& grid);

/// Deterministic well-spread unit directions (spherical Fibonacci lattice).
std::vector<Vec3> fibonacci_directions(int count);

} // namespace dipgp
