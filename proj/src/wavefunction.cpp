#include "wlab/wavefunction.hpp"

#include <cmath>

#include "wlab/errors.hpp"
#include "wlab/special.hpp"

namespace wlab {

double norm_squared(const WaveFunction& psi) {
  return psi.values.abs2().sum() * psi.grid.spacing();
}

void require_normalized(const WaveFunction& psi, double tol) {
  if (!psi.values.isFinite().all())
    throw NumericError("wave function contains non-finite values");
  const double n2 = norm_squared(psi);
  if (std::abs(n2 - 1.0) > tol)
    throw DomainError("wave function norm " + std::to_string(n2) +
                      " deviates from 1 beyond tolerance");
}

void require_supported(const WaveFunction& psi, double ratio) {
  const double peak = psi.values.abs().maxCoeff();
  if (peak == 0.0) throw DomainError("wave function is identically zero");
  const double lo = std::abs(psi.values[0]);
  const double hi = std::abs(psi.values[psi.grid.n() - 1]);
  if (lo > ratio * peak)
    throw DomainError("support guard violated at lower boundary x_min = " +
                      std::to_string(psi.grid.min()));
  if (hi > ratio * peak)
    throw DomainError("support guard violated at upper boundary x_max = " +
                      std::to_string(psi.grid.max()));
}

WaveFunction gaussian_packet(const Grid1D& grid, const GaussianParams& params,
                             double t, const Constants& consts) {
  consts.validate();
  if (!(params.sigma > 0.0)) throw DomainError("gaussian_packet: sigma must be > 0");
  const double s2 = params.sigma * params.sigma;
  const Complex spread(1.0, consts.hbar * t / (2.0 * consts.mass * s2));
  const Complex prefactor =
      std::pow(Complex(2.0 * kPi * s2) * spread * spread, Complex(-0.25));
  WaveFunction psi{grid, ArrayXcd(grid.n()), t, consts};
  for (int i = 0; i < grid.n(); ++i) {
    const double dxb = grid.coord(i) - params.x_bar;
    const Complex arg(-dxb * dxb / (4.0 * s2),
                      params.p_bar * dxb / consts.hbar -
                          params.p_bar * params.p_bar * t /
                              (2.0 * consts.mass * consts.hbar));
    psi.values[i] = prefactor * std::exp(arg / spread);
  }
  require_supported(psi);
  require_normalized(psi);
  return psi;
}

WaveFunction ho_eigenstate(const Grid1D& grid, int n, double omega,
                           const Constants& consts) {
  consts.validate();
  if (n < 0) throw DomainError("ho_eigenstate: n must be non-negative");
  if (!(omega > 0.0)) throw DomainError("ho_eigenstate: omega must be > 0");
  const double kappa = std::sqrt(consts.mass * omega / consts.hbar);
  double log_norm = 0.0;  // log of 2^n n!
  for (int k = 1; k <= n; ++k) log_norm += std::log(2.0 * k);
  const double amp =
      std::pow(kappa * kappa / kPi, 0.25) * std::exp(-0.5 * log_norm);
  WaveFunction psi{grid, ArrayXcd(grid.n()), 0.0, consts};
  for (int i = 0; i < grid.n(); ++i) {
    const double u = kappa * grid.coord(i);
    psi.values[i] = amp * hermite(n, u) * std::exp(-0.5 * u * u);
  }
  require_supported(psi);
  require_normalized(psi);
  return psi;
}

WaveFunction to_momentum(const WaveFunction& psi) {
  if (psi.rep != Representation::position)
    throw DomainError("to_momentum: input is already in momentum representation");
  const int n = psi.grid.n();
  const Grid1D pgrid = PhaseGrid::fourier_conjugate(psi.grid, psi.consts.hbar);
  ArrayXcd twisted(n);
  for (int j = 0; j < n; ++j)
    twisted[j] = (j % 2 == 0) ? psi.values[j] : -psi.values[j];
  ArrayXcd spec = fft_forward(twisted);
  const double scale = psi.grid.spacing() / std::sqrt(2.0 * kPi * psi.consts.hbar);
  ArrayXcd out(n);
  for (int k = 0; k < n; ++k) {
    const double phase = -psi.grid.min() * pgrid.coord(k) / psi.consts.hbar;
    out[k] = scale * spec[k] * Complex(std::cos(phase), std::sin(phase));
  }
  // The conjugate grid remembers where the position axis started so the
  // round trip can restore it.
  WaveFunction tilde{pgrid, out, psi.t, psi.consts, Representation::momentum};
  return tilde;
}

WaveFunction to_position(const WaveFunction& psi_tilde, const Grid1D& xgrid) {
  if (psi_tilde.rep != Representation::momentum)
    throw DomainError("to_position: input is not in momentum representation");
  const int n = psi_tilde.grid.n();
  if (xgrid.n() != n) throw SizeError("to_position: grid size mismatch");
  ArrayXcd g(n);
  for (int k = 0; k < n; ++k) {
    const double phase = xgrid.min() * psi_tilde.grid.coord(k) / psi_tilde.consts.hbar;
    g[k] = psi_tilde.values[k] * Complex(std::cos(phase), std::sin(phase));
  }
  ArrayXcd inv = fft_inverse(g);
  const double scale =
      psi_tilde.grid.spacing() * n / std::sqrt(2.0 * kPi * psi_tilde.consts.hbar);
  ArrayXcd out(n);
  for (int j = 0; j < n; ++j)
    out[j] = scale * ((j % 2 == 0) ? inv[j] : -inv[j]);
  return WaveFunction{xgrid, out, psi_tilde.t, psi_tilde.consts,
                      Representation::position};
}

double expect_position_observable(const WaveFunction& psi,
                                  const std::function<double(double)>& f) {
  if (psi.rep != Representation::position)
    throw DomainError("expect_position_observable: needs position representation");
  double acc = 0.0;
  for (int i = 0; i < psi.grid.n(); ++i) {
    const double fx = f(psi.grid.coord(i));
    if (!std::isfinite(fx))
      throw NumericError("expect_position_observable: observable not finite on grid");
    acc += fx * std::norm(psi.values[i]);
  }
  return acc * psi.grid.spacing();
}

double expect_momentum_observable(const WaveFunction& psi,
                                  const std::function<double(double)>& f) {
  const WaveFunction tilde =
      psi.rep == Representation::momentum ? psi : to_momentum(psi);
  double acc = 0.0;
  for (int k = 0; k < tilde.grid.n(); ++k) {
    const double fp = f(tilde.grid.coord(k));
    if (!std::isfinite(fp))
      throw NumericError("expect_momentum_observable: observable not finite on grid");
    acc += fp * std::norm(tilde.values[k]);
  }
  return acc * tilde.grid.spacing();
}

}  // namespace wlab
