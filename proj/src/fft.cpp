#include "wlab/fft.hpp"

#include <cmath>
#include <vector>

#include "wlab/errors.hpp"

namespace wlab {

namespace {

void check_pow2(Eigen::Index n) {
  if (n <= 0 || (n & (n - 1)) != 0)
    throw SizeError("fft: length must be a positive power of two, got " +
                    std::to_string(n));
}

// Bit-reversal permutation, in place.
void bit_reverse(ArrayXcd& a) {
  const Eigen::Index n = a.size();
  for (Eigen::Index i = 1, j = 0; i < n; ++i) {
    Eigen::Index bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

}  // namespace

void fft_inplace(ArrayXcd& field, int sign) {
  const Eigen::Index n = field.size();
  check_pow2(n);
  bit_reverse(field);
  for (Eigen::Index len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / static_cast<double>(len);
    const Eigen::Index half = len >> 1;
    // Twiddles from direct trig per index; error stays at one ulp.
    std::vector<Complex> w(half);
    for (Eigen::Index k = 0; k < half; ++k)
      w[k] = Complex(std::cos(ang * k), std::sin(ang * k));
    for (Eigen::Index i = 0; i < n; i += len) {
      for (Eigen::Index k = 0; k < half; ++k) {
        const Complex u = field[i + k];
        const Complex v = field[i + k + half] * w[k];
        field[i + k] = u + v;
        field[i + k + half] = u - v;
      }
    }
  }
}

ArrayXcd fft_forward(const ArrayXcd& field) {
  ArrayXcd out = field;
  fft_inplace(out, -1);
  return out;
}

ArrayXcd fft_inverse(const ArrayXcd& field) {
  ArrayXcd out = field;
  fft_inplace(out, +1);
  out /= static_cast<double>(out.size());
  return out;
}

ArrayXcd spectral_derivative(const ArrayXcd& field, const Grid1D& grid, int order) {
  if (field.size() != grid.n())
    throw SizeError("spectral_derivative: field length does not match grid");
  if (order < 1) throw DomainError("spectral_derivative: order must be >= 1");
  const int n = grid.n();
  ArrayXcd spec = fft_forward(field);
  const double base = 2.0 * kPi / (n * grid.spacing());
  for (int j = 0; j < n; ++j) {
    const int js = signed_bin(j, n);
    if ((order & 1) && js == -n / 2) {
      spec[j] = 0.0;  // unpaired Nyquist mode has no well-defined odd derivative
      continue;
    }
    spec[j] *= std::pow(Complex(0.0, base * js), order);
  }
  return fft_inverse(spec);
}

ArrayXd spectral_derivative(const ArrayXd& field, const Grid1D& grid, int order) {
  return spectral_derivative(field.cast<Complex>().eval(), grid, order).real();
}

ArrayXcd spectral_refine2(const ArrayXcd& field) {
  const Eigen::Index n = field.size();
  check_pow2(n);
  ArrayXcd spec = fft_forward(field);
  ArrayXcd padded = ArrayXcd::Zero(2 * n);
  // Positive frequencies stay, negative frequencies (incl. Nyquist) move up.
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index js = signed_bin(static_cast<int>(j), static_cast<int>(n));
    padded[(js + 2 * n) % (2 * n)] = spec[j];
  }
  padded *= 2.0;  // compensates the 1/(2n) of the longer inverse
  return fft_inverse(padded);
}

ArrayXcd spectral_shift(const ArrayXcd& field, const Grid1D& grid, double delta) {
  if (field.size() != grid.n()) throw SizeError("spectral_shift: length mismatch");
  const int n = grid.n();
  ArrayXcd spec = fft_forward(field);
  const double base = 2.0 * kPi / (n * grid.spacing());
  for (int j = 0; j < n; ++j) {
    const double k = base * signed_bin(j, n);
    spec[j] *= Complex(std::cos(k * delta), -std::sin(k * delta));
  }
  return fft_inverse(spec);
}

ArrayXd spectral_shift(const ArrayXd& field, const Grid1D& grid, double delta) {
  return spectral_shift(field.cast<Complex>().eval(), grid, delta).real();
}

ArrayXd trig_interp(const ArrayXd& field, const Grid1D& grid, const ArrayXd& points) {
  if (field.size() != grid.n()) throw SizeError("trig_interp: length mismatch");
  const int n = grid.n();
  const ArrayXcd spec = fft_forward(field.cast<Complex>().eval());
  const double base = 2.0 * kPi / grid.length();
  ArrayXd out(points.size());
  for (Eigen::Index m = 0; m < points.size(); ++m) {
    const double u = points[m] - grid.min();
    Complex acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      const double k = base * signed_bin(j, n);
      acc += spec[j] * Complex(std::cos(k * u), std::sin(k * u));
    }
    out[m] = acc.real() / n;
  }
  return out;
}

}  // namespace wlab
