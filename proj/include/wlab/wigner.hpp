#ifndef WLAB_WIGNER_HPP
#define WLAB_WIGNER_HPP

#include "wlab/grid.hpp"
#include "wlab/fft.hpp"
#include "wlab/wavefunction.hpp"

namespace wlab {

/// Real phase-space field w(x, p, t). Rows index momentum, columns position.
struct WignerGrid {
  PhaseGrid pgrid;
  ArrayXXd values;
  double t = 0.0;
  Constants consts;
};

/// Wigner transform of a position-space wave function, computed from the
/// half-offset correlation c(s) = psi*(x + s/2) psi(x - s/2) with the
/// half-grid points supplied by doubled-resolution spectral interpolation and
/// zero outside the domain. The momentum axis is the centered conjugate
/// lattice with spacing pi*hbar/(n*dx).
WignerGrid wigner_transform(const WaveFunction& psi);

/// Same distribution from the momentum representation (correlation over p,
/// Fourier transform back to x). Requires a centered position grid; agrees
/// with wigner_transform on the same lattice.
WignerGrid wigner_from_momentum(const WaveFunction& psi_tilde, const Grid1D& xgrid);

/// Position density: integral of w over p. Equals |psi(x)|^2 for transform
/// outputs.
ArrayXd marginal_x(const WignerGrid& w);

/// Momentum density: integral of w over x.
ArrayXd marginal_p(const WignerGrid& w);

/// 2*pi*hbar * integral of w^2; equals 1 exactly for pure states.
double purity(const WignerGrid& w);

/// 2*pi*hbar * integral of w1*w2 = |<psi1|psi2>|^2 for pure states.
double overlap(const WignerGrid& w1, const WignerGrid& w2);

/// Integral of the negative part, max(0, -w); a non-classicality measure.
double negativity_volume(const WignerGrid& w);

/// Closed-form Wigner function of the free Gaussian packet at time t.
WignerGrid analytic_gaussian_wigner(const PhaseGrid& pgrid, const GaussianParams& params,
                                    double t, const Constants& consts);

/// Closed-form Wigner function of the n-th harmonic-oscillator eigenstate:
/// (-1)^n/(pi hbar) exp(-(x kappa)^2 - (p/(hbar kappa))^2) L_n(2r^2),
/// kappa = sqrt(m omega / hbar).
WignerGrid analytic_ho_wigner(const PhaseGrid& pgrid, int n, double omega,
                              const Constants& consts);

}  // namespace wlab

#endif  // WLAB_WIGNER_HPP
