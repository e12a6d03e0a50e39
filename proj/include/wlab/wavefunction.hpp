#ifndef WLAB_WAVEFUNCTION_HPP
#define WLAB_WAVEFUNCTION_HPP

#include <functional>

#include "wlab/fft.hpp"
#include "wlab/grid.hpp"

namespace wlab {

enum class Representation { position, momentum };

/// Complex field over a Grid1D with a time stamp. Values are immutable by
/// convention: operations return new instances.
struct WaveFunction {
  Grid1D grid;
  ArrayXcd values;
  double t = 0.0;
  Constants consts;
  Representation rep = Representation::position;
};

/// Mean position, mean momentum, and width of a Gaussian packet.
struct GaussianParams {
  double x_bar = 0.0;
  double p_bar = 0.0;
  double sigma = 1.0;
};

/// L2 norm integral of |psi|^2 over the grid axis.
double norm_squared(const WaveFunction& psi);

/// Throws NumericError/DomainError when psi is non-finite or the norm strays
/// from 1 by more than tol.
void require_normalized(const WaveFunction& psi, double tol = 1e-8);

/// Throws DomainError when the boundary amplitude exceeds ratio * peak,
/// naming the offending boundary.
void require_supported(const WaveFunction& psi, double ratio = 1e-10);

/// Free Gaussian wave packet at time t, sampled from its closed form. The
/// packet must fit the grid (boundary amplitude < 1e-10 of peak).
WaveFunction gaussian_packet(const Grid1D& grid, const GaussianParams& params,
                             double t, const Constants& consts);

/// Harmonic-oscillator eigenstate (Hermite-Gaussian) for quantum number n and
/// frequency omega, at time stamp 0.
WaveFunction ho_eigenstate(const Grid1D& grid, int n, double omega,
                           const Constants& consts);

/// Momentum representation on the centered Fourier-conjugate grid, scaled so
/// the momentum density integrates to one.
WaveFunction to_momentum(const WaveFunction& psi);

/// Inverse of to_momentum; the original position grid supplies the axis
/// offset that the centered momentum grid does not carry.
WaveFunction to_position(const WaveFunction& psi_tilde, const Grid1D& xgrid);

/// Expectation value of a position-only observable f(x) over |psi(x)|^2.
double expect_position_observable(const WaveFunction& psi,
                                  const std::function<double(double)>& f);

/// Expectation value of a momentum-only observable f(p) over |psi~(p)|^2.
/// Position-representation input is transformed internally.
double expect_momentum_observable(const WaveFunction& psi,
                                  const std::function<double(double)>& f);

}  // namespace wlab

#endif  // WLAB_WAVEFUNCTION_HPP
