#ifndef LONGWAVE_SPECTRAL_HPP
#define LONGWAVE_SPECTRAL_HPP

#include <vector>

#include "longwave/field.hpp"

namespace longwave {

// Spectral (trigonometric-interpolant) spatial derivatives on periodic grids.
// Exact for grid-resolved Fourier modes. First derivatives zero the Nyquist
// mode; the Laplacian keeps it with k = -pi/dx.
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
// Rank-3 grids only.
VectorField curl(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

// Unnormalized forward DFT of the samples (FFT layout, row-major).
std::vector<cplx> fft_forward(const ScalarField& f);
// Inverse DFT including the 1/N normalization.
ScalarField fft_inverse(const Grid& grid, const std::vector<cplx>& modes);

// Mean |f|^2 from mode space: sum_k |f_hat_k|^2 / N^2. Equals the sample-space
// mean |f|^2 (Parseval).
double mode_power(const std::vector<cplx>& modes);

}  // namespace longwave

#endif
