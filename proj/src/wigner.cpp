#include "wlab/wigner.hpp"

#include <cmath>

#include "wlab/errors.hpp"
#include "wlab/quadrature.hpp"
#include "wlab/special.hpp"

namespace wlab {

namespace {

// Pure-state output checks: unit mass and the 1/(pi hbar) amplitude bound.
void check_pure_state_invariants(const WignerGrid& w) {
  const double mass = trapezoid_2d(w.values, w.pgrid);
  if (std::abs(mass - 1.0) > 1e-6)
    throw NumericError("wigner transform: total mass " + std::to_string(mass) +
                       " deviates from 1");
  const double bound = 1.0 / (kPi * w.consts.hbar) + 1e-9;
  if (w.values.maxCoeff() > bound || w.values.minCoeff() < -bound)
    throw NumericError("wigner transform: values exceed the 1/(pi hbar) bound");
}

}  // namespace

WignerGrid wigner_transform(const WaveFunction& psi) {
  if (psi.rep != Representation::position)
    throw DomainError("wigner_transform: needs position representation");
  require_normalized(psi);
  require_supported(psi);

  const int n = psi.grid.n();
  const int m = 2 * n;
  const double hbar = psi.consts.hbar;
  const ArrayXcd fine = spectral_refine2(psi.values);

  WignerGrid w{PhaseGrid::wigner_conjugate(psi.grid, hbar),
               ArrayXXd(n, n), psi.t, psi.consts};
  const double scale = psi.grid.spacing() / (2.0 * kPi * hbar);
  double max_imag = 0.0;

  ArrayXcd corr(m);
  for (int i = 0; i < n; ++i) {
    corr.setZero();
    for (int k = -n; k < n; ++k) {
      const int plus = 2 * i + k;
      const int minus = 2 * i - k;
      if (plus < 0 || plus >= m || minus < 0 || minus >= m) continue;
      corr[(k + m) % m] = std::conj(fine[plus]) * fine[minus];
    }
    fft_inplace(corr, +1);  // kernel exp(+i s p / hbar)
    for (int j = 0; j < n; ++j) {
      const Complex val = scale * corr[(j - n / 2 + m) % m];
      w.values(j, i) = val.real();
      max_imag = std::max(max_imag, std::abs(val.imag()));
    }
  }

  const double w_scale = std::max(w.values.abs().maxCoeff(), 1.0);
  if (max_imag > 1e-12 * w_scale)
    throw NumericError("wigner_transform: imaginary residue " +
                       std::to_string(max_imag) + " above tolerance");
  check_pure_state_invariants(w);
  return w;
}

WignerGrid wigner_from_momentum(const WaveFunction& psi_tilde, const Grid1D& xgrid) {
  if (psi_tilde.rep != Representation::momentum)
    throw DomainError("wigner_from_momentum: needs momentum representation");
  if (!xgrid.centered())
    throw DomainError("wigner_from_momentum: position grid must be centered");
  const int n = psi_tilde.grid.n();
  if (xgrid.n() != n) throw SizeError("wigner_from_momentum: grid size mismatch");
  const double hbar = psi_tilde.consts.hbar;
  const double dx_conj = 2.0 * kPi * hbar / (n * psi_tilde.grid.spacing());
  if (std::abs(xgrid.spacing() - dx_conj) > 1e-12 * dx_conj)
    throw DomainError("wigner_from_momentum: position grid is not conjugate to "
                      "the momentum grid");
  const int m = 2 * n;

  // Refine twice: quarter-spacing samples of psi~ supply the half offsets of
  // the Wigner momentum lattice (spacing pi*hbar/(n*dx) = dp_full/2).
  const ArrayXcd fine = spectral_refine2(spectral_refine2(psi_tilde.values).eval());

  const PhaseGrid pg = PhaseGrid::wigner_conjugate(xgrid, hbar);
  WignerGrid w{pg, ArrayXXd(n, n), psi_tilde.t, psi_tilde.consts};
  const double scale = pg.p.spacing() / (2.0 * kPi * hbar);
  double max_imag = 0.0;

  ArrayXcd corr(m);
  for (int j = 0; j < n; ++j) {
    corr.setZero();
    for (int k = -n; k < n; ++k) {
      const int plus = 2 * j + n + k;   // fine index of p_j + k*dp_fine
      const int minus = 2 * j + n - k;
      if (plus < 0 || plus >= 2 * m || minus < 0 || minus >= 2 * m) continue;
      corr[(k + m) % m] = std::conj(fine[plus]) * fine[minus];
    }
    fft_inplace(corr, -1);  // kernel exp(-i s x / hbar)
    for (int i = 0; i < n; ++i) {
      const Complex val = scale * corr[(i - n / 2 + m) % m];
      w.values(j, i) = val.real();
      max_imag = std::max(max_imag, std::abs(val.imag()));
    }
  }

  const double w_scale = std::max(w.values.abs().maxCoeff(), 1.0);
  if (max_imag > 1e-12 * w_scale)
    throw NumericError("wigner_from_momentum: imaginary residue above tolerance");
  check_pure_state_invariants(w);
  return w;
}

ArrayXd marginal_x(const WignerGrid& w) {
  return w.values.colwise().sum().transpose() * w.pgrid.p.spacing();
}

ArrayXd marginal_p(const WignerGrid& w) {
  return w.values.rowwise().sum() * w.pgrid.x.spacing();
}

double purity(const WignerGrid& w) {
  return 2.0 * kPi * w.consts.hbar * trapezoid_2d(w.values.square(), w.pgrid);
}

double overlap(const WignerGrid& w1, const WignerGrid& w2) {
  if (!(w1.pgrid == w2.pgrid))
    throw SizeError("overlap: Wigner grids do not match");
  return 2.0 * kPi * w1.consts.hbar *
         trapezoid_2d((w1.values * w2.values).eval(), w1.pgrid);
}

double negativity_volume(const WignerGrid& w) {
  return trapezoid_2d(w.values.min(0.0).eval(), w.pgrid) * -1.0;
}

WignerGrid analytic_gaussian_wigner(const PhaseGrid& pgrid, const GaussianParams& params,
                                    double t, const Constants& consts) {
  consts.validate();
  if (!(params.sigma > 0.0))
    throw DomainError("analytic_gaussian_wigner: sigma must be > 0");
  const double s2 = params.sigma * params.sigma;
  const double h2 = consts.hbar * consts.hbar;
  WignerGrid w{pgrid, ArrayXXd(pgrid.p.n(), pgrid.x.n()), t, consts};
  for (int j = 0; j < pgrid.p.n(); ++j) {
    const double p = pgrid.p.coord(j);
    const double dp = p - params.p_bar;
    const double shift = p * t / consts.mass;
    for (int i = 0; i < pgrid.x.n(); ++i) {
      const double dx = pgrid.x.coord(i) - shift - params.x_bar;
      w.values(j, i) = std::exp(-dx * dx / (2.0 * s2) - 2.0 * s2 * dp * dp / h2) /
                       (kPi * consts.hbar);
    }
  }
  return w;
}

WignerGrid analytic_ho_wigner(const PhaseGrid& pgrid, int n, double omega,
                              const Constants& consts) {
  consts.validate();
  if (n < 0) throw DomainError("analytic_ho_wigner: n must be non-negative");
  if (!(omega > 0.0)) throw DomainError("analytic_ho_wigner: omega must be > 0");
  const double kappa = std::sqrt(consts.mass * omega / consts.hbar);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  WignerGrid w{pgrid, ArrayXXd(pgrid.p.n(), pgrid.x.n()), 0.0, consts};
  for (int j = 0; j < pgrid.p.n(); ++j) {
    const double pk = pgrid.p.coord(j) / (consts.hbar * kappa);
    for (int i = 0; i < pgrid.x.n(); ++i) {
      const double xk = pgrid.x.coord(i) * kappa;
      const double r2 = pk * pk + xk * xk;
      w.values(j, i) =
          sign / (kPi * consts.hbar) * std::exp(-r2) * laguerre(n, 2.0 * r2);
    }
  }
  return w;
}

}  // namespace wlab
