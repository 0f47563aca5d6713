#pragma once
#include <cmath>
#include <cstddef>
#include <vector>

#include "dipgp/errors.hpp"
#include "dipgp/vec3.hpp"

namespace dipgp {

/// Periodic cubic box [-L/2, L/2)^3 sampled on n points per axis, together
/// with its Fourier dual. Wavenumbers are stored in standard FFT order with
/// values from the centered set (2*pi/L) * {-n/2, ..., n/2 - 1}; k = 0 sits at
/// index 0 and the Nyquist row -n*pi/L at index n/2.
class Grid3 {
public:
    Grid3(int n, double L) : n_(n), L_(L) {
        if (n < 4 || n % 2 != 0) throw UsageError("Grid3: n must be even and >= 4");
        if (!(L > 0.0)) throw UsageError("Grid3: L must be positive");
        k_.resize(n);
        const double dk = 2.0 * std::acos(-1.0) / L;
        for (int i = 0; i < n; ++i) k_[i] = dk * (i < n / 2 ? i : i - n);
    }

    int n() const { return n_; }
    double L() const { return L_; }
    double dx() const { return L_ / n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

    /// Per-axis wavenumber at FFT index i.
    double k(int i) const { return k_[i]; }
    const std::vector<double>& k_axis() const { return k_; }

    /// Position coordinate at index i (box centered at the origin).
    double x(int i) const { return (i - n_ / 2) * dx(); }

    // Linear index, x fastest.
    std::size_t idx(int ix, int iy, int iz) const {
        return static_cast<std::size_t>(ix) +
               static_cast<std::size_t>(n_) * (static_cast<std::size_t>(iy) +
                                               static_cast<std::size_t>(n_) * iz);
    }

    Vec3 k_vec(int ix, int iy, int iz) const { return {k_[ix], k_[iy], k_[iz]}; }
    double k2(int ix, int iy, int iz) const {
        return k_[ix] * k_[ix] + k_[iy] * k_[iy] + k_[iz] * k_[iz];
    }

    bool operator==(const Grid3& o) const { return n_ == o.n_ && L_ == o.L_; }
    bool operator!=(const Grid3& o) const { return !(*this == o); }

private:
    int n_;
    double L_;
    std::vector<double> k_;
};

} // namespace dipgp
