#pragma once
#include <vector>

#include "dipgp/field.hpp"
#include "dipgp/grid.hpp"
#include "dipgp/kernel.hpp"

namespace dipgp {

/// Interaction w = w0 + b 1_{|x|>R} K_dip and its N-scaling
/// w_N(x) = N^{3 beta} w(N^beta x), realized throughout by the Fourier-side
/// identity what_N(k) = what(k N^{-beta}).
///
/// Built-in short-range choices:
///   gaussian: w0(x) = a (2 pi sigma^2)^{-3/2} exp(-|x - center|^2 / (2 sigma^2))
///   bump:     w0(x) = a c0 exp(-1/(1 - |x - center|^2/r0^2)) on |x - center| < r0
/// A nonzero center gives what0 a genuine first-order defect |what0(k) - a| ~ |k|,
/// the sharp case of the linear bound; a centered (even) w0 has a second-order
/// defect instead.
struct PotentialSpec {
    enum class W0Kind { gaussian, bump };

    W0Kind w0_kind = W0Kind::gaussian;
    double sigma = 0.5; // gaussian width
    double r0 = 1.0;    // bump support radius
    Vec3 center = {0.0, 0.0, 0.0};
    double a = 1.0;    // integral of w0
    double b = 0.0;    // dipolar coupling, >= 0
    double R = 0.25;   // inner truncation radius of the dipolar part
    double beta = 0.25;
    long N = 64;
    Vec3 axis = {0.0, 0.0, 1.0}; // dipole axis

    void validate() const;

    /// Continuum transform of w0 (closed form for the gaussian, cached radial
    /// quadrature for the bump), including the center phase.
    cplx w0_hat(const Vec3& k) const;

    /// what(k) = what0(k) + b FT(1_{|x|>R} K)(k).
    cplx w_hat(const Vec3& k) const;

    /// Effective interaction multiplier of the scaled equation: what(k N^-beta).
    std::vector<cplx> scaled_multiplier(const Grid3& g) const;

    /// Effective interaction multiplier of the limiting equation: a + b Khat(k).
    std::vector<cplx> limiting_multiplier(const Grid3& g) const;
};

enum class Stability { stable_hat_positive, stable_a_vs_K, conditional };

struct StabilityReport {
    Stability classification;
    double min_w_hat;     // min over the grid of Re what
    double min_K_hat;     // min over the grid of the full dipolar multiplier
    double margin_a_vs_K; // a + b min_K_hat
};

/// Global-existence classification following the regularity proposition:
/// what >= 0 on the grid, else a >= b |min Khat|, else conditional.
StabilityReport stability_predicate(const PotentialSpec& pot, const Grid3& grid);

const char* to_string(Stability s);

/// Smooth normalized initial data (all comfortably in H^4 of the box).
struct InitialData {
    enum class Kind { gaussian, bump };
    Kind kind = Kind::gaussian;
    double sigma = 0.8;
    Vec3 center = {0.0, 0.0, 0.0};
    double global_phase = 0.0;
};

Field make_initial(const Grid3& grid, const InitialData& init);

} // namespace dipgp
