#pragma once
#include "dipgp/field.hpp"

namespace dipgp {

// Transform normalization is fixed so that discrete objects match their
// continuum counterparts sampled on the grid:
//   forward:  fhat(k) = dx^3 * sum_x f(x) e^{-i k.x}   ~ integral over the box
//   inverse:  f(x)    = (1/L^3) * sum_k fhat(k) e^{+i k.x}
// With this choice multiplier tables equal continuum Fourier transforms, and
// convolve_multiplier(f, what) computes w * f without conversion factors.

/// Discrete Fourier transform; input must be in position space.
Field fft_forward(const Field& f);

/// Inverse transform; input must be in frequency space.
Field fft_inverse(const Field& f);

/// Spectral Laplacian (multiplier -|k|^2). Output space matches input space.
Field laplacian(const Field& f);

/// Inverse transform of (m . fhat): the convolution of f with the kernel whose
/// continuum transform is tabulated in m. Output space matches input space.
Field convolve_multiplier(const Field& f, const MultiplierTable& m);

/// L^2(box) norm with the correct quadrature weights in either space.
double l2_norm(const Field& f);

/// <f, g> with the same weights; conjugation on f.
cplx inner_product(const Field& f, const Field& g);

/// Zero every mode with any axis wavenumber above 2/3 of the Nyquist value
/// (the standard dealiasing rule for cubic nonlinearities). Frequency space.
void dealias_23(Field& f);

/// True if every value is finite.
bool all_finite(const Field& f);

} // namespace dipgp
