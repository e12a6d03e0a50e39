#ifndef WLAB_FFT_HPP
#define WLAB_FFT_HPP

#include <Eigen/Dense>
#include <complex>

#include "wlab/grid.hpp"

namespace wlab {

using Complex = std::complex<double>;
using ArrayXcd = Eigen::ArrayXcd;
using ArrayXd = Eigen::ArrayXd;
using ArrayXXd = Eigen::ArrayXXd;

/// Unnormalized forward DFT with kernel exp(-2*pi*i*j*k/n). Length must be a
/// power of two.
ArrayXcd fft_forward(const ArrayXcd& field);

/// Inverse of fft_forward: kernel exp(+2*pi*i*j*k/n) scaled by 1/n, so
/// fft_inverse(fft_forward(v)) == v up to roundoff.
ArrayXcd fft_inverse(const ArrayXcd& field);

/// In-place unnormalized transform; sign = -1 forward, +1 backward.
void fft_inplace(ArrayXcd& field, int sign);

/// Signed frequency index j' of DFT bin j: j for j < n/2, j - n otherwise.
inline int signed_bin(int j, int n) { return j < n / 2 ? j : j - n; }

/// k-th derivative on a periodic grid: multiply the spectrum by (i*k_j)^order
/// with k_j = 2*pi*j'/(n*dx). The Nyquist bin is zeroed for odd orders.
ArrayXcd spectral_derivative(const ArrayXcd& field, const Grid1D& grid, int order);

/// Real-field convenience wrapper; returns the real part of the result.
ArrayXd spectral_derivative(const ArrayXd& field, const Grid1D& grid, int order);

/// Doubles the sampling rate by zero-padding the spectrum: output m satisfies
/// out[2*i] == in[i] and odd samples carry the trigonometric interpolant.
ArrayXcd spectral_refine2(const ArrayXcd& field);

/// Translates a periodic field by delta (in grid units of length) through a
/// spectral phase ramp: out(x) = in(x - delta).
ArrayXcd spectral_shift(const ArrayXcd& field, const Grid1D& grid, double delta);
ArrayXd spectral_shift(const ArrayXd& field, const Grid1D& grid, double delta);

/// Evaluates the trigonometric interpolant of a real periodic field at
/// arbitrary points (O(n) per point).
ArrayXd trig_interp(const ArrayXd& field, const Grid1D& grid, const ArrayXd& points);

}  // namespace wlab

#endif  // WLAB_FFT_HPP
