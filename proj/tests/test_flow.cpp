#include <doctest.h>

#include <cmath>

#include "wlab/flow.hpp"
#include "wlab/quadrature.hpp"

using namespace wlab;

namespace {
const Constants kUnits{1.0, 1.0};

ArrayXXd p_derivative(const WignerGrid& w, int order) {
  ArrayXXd out(w.values.rows(), w.values.cols());
  for (Eigen::Index c = 0; c < w.values.cols(); ++c) {
    const ArrayXcd col = w.values.col(c).cast<Complex>();
    out.col(c) = spectral_derivative(col, w.pgrid.p, order).real();
  }
  return out;
}

ArrayXXd x_derivative(const WignerGrid& w, int order) {
  ArrayXXd out(w.values.rows(), w.values.cols());
  for (Eigen::Index r = 0; r < w.values.rows(); ++r) {
    const ArrayXcd row = w.values.row(r).transpose().cast<Complex>();
    out.row(r) = spectral_derivative(row, w.pgrid.x, order).real().transpose();
  }
  return out;
}

WignerGrid gaussian_state(double x_bar, double p_bar, double sigma,
                          const Constants& c = kUnits) {
  const PhaseGrid pg{Grid1D(256, -10.0, 10.0), Grid1D(256, -10.0, 10.0)};
  return analytic_gaussian_wigner(pg, GaussianParams{x_bar, p_bar, sigma}, 0.0, c);
}
}  // namespace

TEST_CASE("flow position component is (p/m) w by construction") {
  const WignerGrid w = gaussian_state(1.0, 2.0, 0.6);
  const FlowField j = wigner_flow(w, Potential::quartic(0.5, 0.25));
  for (int r = 0; r < w.pgrid.p.n(); r += 17) {
    const double p = w.pgrid.p.coord(r);
    for (int c = 0; c < w.pgrid.x.n(); c += 17)
      CHECK(j.jx(r, c) == p * w.values(r, c));
  }
}

TEST_CASE("harmonic flow momentum component is -m w^2 x w with one term") {
  const double omega = 1.3;
  const WignerGrid w = gaussian_state(0.5, -1.0, 0.7);
  const FlowField j = wigner_flow(w, Potential::harmonic(omega));
  CHECK(j.truncation_l_max == -1);
  for (int r = 0; r < w.pgrid.p.n(); r += 13) {
    for (int c = 0; c < w.pgrid.x.n(); c += 13) {
      const double x = w.pgrid.x.coord(c);
      CHECK(j.jp(r, c) == -(omega * omega * x * w.values(r, c)));
    }
  }
}

TEST_CASE("free flow has no momentum component") {
  const WignerGrid w = gaussian_state(0.0, 1.5, 0.5);
  const FlowField j = wigner_flow(w, Potential::free_space());
  CHECK((j.jp == 0.0).all());
}

TEST_CASE("eigenstate flow circulates: radial component is negligible") {
  const PhaseGrid pg{Grid1D(512, -8.0, 8.0), Grid1D(512, -8.0, 8.0)};
  const WignerGrid w = analytic_ho_wigner(pg, 3, 1.0, kUnits);
  const FlowField j = wigner_flow(w, Potential::harmonic(1.0));
  const TangencyResult tangency = tangency_divergence(w, j);
  CHECK(tangency.summary < 1e-8);
}

TEST_CASE("polynomial potentials terminate: higher l_max is a no-op") {
  const WignerGrid w = gaussian_state(0.8, 0.3, 0.6);
  SUBCASE("harmonic beyond l = 0") {
    const FlowField base =
        wigner_flow(w, Potential::harmonic(1.0), SeriesPolicy::truncated(0));
    for (int l : {1, 2, 3}) {
      const FlowField more =
          wigner_flow(w, Potential::harmonic(1.0), SeriesPolicy::truncated(l));
      CHECK((more.jp == base.jp).all());
    }
  }
  SUBCASE("quartic beyond l = 1") {
    const FlowField base =
        wigner_flow(w, Potential::quartic(0.5, 0.25), SeriesPolicy::truncated(1));
    for (int l : {2, 3}) {
      const FlowField more =
          wigner_flow(w, Potential::quartic(0.5, 0.25), SeriesPolicy::truncated(l));
      CHECK((more.jp == base.jp).all());
    }
  }
}

TEST_CASE("classical flow is the l = 0 truncation") {
  const WignerGrid w = gaussian_state(-0.5, 1.0, 0.8);
  const Potential v = Potential::quartic(0.5, 0.75);
  const FlowField classical = classical_flow(w, v);
  const FlowField truncated = wigner_flow(w, v, SeriesPolicy::truncated(0));
  CHECK((classical.jp == truncated.jp).all());
  CHECK(classical.truncation_l_max == 0);
  // Harmonic classical flow is exact.
  CHECK(classical_flow(w, Potential::harmonic(1.0)).truncation_l_max == -1);

  // The quartic quantum flow differs from the classical one by exactly the
  // l = 1 series term.
  const FlowField quantum = wigner_flow(w, v);
  CHECK(quantum.truncation_l_max == -1);
  const ArrayXXd d2w = p_derivative(w, 2);
  ArrayXXd term1(w.values.rows(), w.values.cols());
  for (int c = 0; c < w.pgrid.x.n(); ++c)
    term1.col(c) = -(-1.0 / 24.0) * v.derivative(w.pgrid.x.coord(c), 3, kUnits) *
                   d2w.col(c);
  CHECK((quantum.jp - classical.jp - term1).abs().maxCoeff() <
        1e-12 * quantum.jp.abs().maxCoeff());
}

TEST_CASE("halving hbar scales the l = 1 flow term by one quarter") {
  const Potential v = Potential::quartic(0.5, 0.75);
  WignerGrid w = gaussian_state(0.4, 0.9, 0.7);
  const ArrayXXd term_full = (wigner_flow(w, v).jp - classical_flow(w, v).jp).eval();
  w.consts.hbar = 0.5;  // same field values, scaled operator
  const ArrayXXd term_half = (wigner_flow(w, v).jp - classical_flow(w, v).jp).eval();
  CHECK((term_half * 4.0 - term_full).abs().maxCoeff() <
        1e-12 * term_full.abs().maxCoeff());
}

TEST_CASE("quantum rhs of a stationary eigenstate vanishes") {
  const PhaseGrid pg{Grid1D(512, -8.0, 8.0), Grid1D(512, -8.0, 8.0)};
  const WignerGrid w = analytic_ho_wigner(pg, 3, 1.0, kUnits);
  CHECK(quantum_liouville_rhs(w, Potential::harmonic(1.0)).abs().maxCoeff() <
        1e-6);
}

TEST_CASE("harmonic quantum rhs equals the classical rhs through one code path") {
  const WignerGrid w = gaussian_state(1.0, -0.5, 0.6);
  const Potential v = Potential::harmonic(1.0);
  const ArrayXXd quantum = quantum_liouville_rhs(w, v);
  const ArrayXXd classical = classical_liouville_rhs(w, v);
  CHECK((quantum == classical).all());
}

TEST_CASE("free transport rhs is -(p/m) dw/dx") {
  const WignerGrid w = gaussian_state(0.0, 2.0, 0.5);
  const ArrayXXd rhs = classical_liouville_rhs(w, Potential::free_space());
  const ArrayXXd dwdx = x_derivative(w, 1);
  for (int r = 0; r < w.pgrid.p.n(); r += 11) {
    const double p = w.pgrid.p.coord(r);
    CHECK((rhs.row(r) + p * dwdx.row(r)).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("classical rhs of a function of H vanishes") {
  const PhaseGrid pg{Grid1D(256, -10.0, 10.0), Grid1D(256, -10.0, 10.0)};
  WignerGrid w{pg, ArrayXXd(256, 256), 0.0, kUnits};
  for (int r = 0; r < 256; ++r)
    for (int c = 0; c < 256; ++c) {
      const double x = pg.x.coord(c), p = pg.p.coord(r);
      w.values(r, c) = std::exp(-(0.5 * p * p + 0.5 * x * x));
    }
  CHECK(classical_liouville_rhs(w, Potential::harmonic(1.0)).abs().maxCoeff() <
        1e-8);
}

TEST_CASE("quartic quantum rhs minus classical rhs is exactly the l = 1 term") {
  const WignerGrid w = gaussian_state(0.2, 0.7, 0.8);
  const Potential v = Potential::quartic(0.5, 0.25);
  const ArrayXXd diff =
      quantum_liouville_rhs(w, v) - classical_liouville_rhs(w, v);
  const ArrayXXd d3w = p_derivative(w, 3);
  ArrayXXd term1(w.values.rows(), w.values.cols());
  for (int c = 0; c < w.pgrid.x.n(); ++c)
    term1.col(c) =
        (-1.0 / 24.0) * v.derivative(w.pgrid.x.coord(c), 3, kUnits) * d3w.col(c);
  CHECK((diff - term1).abs().maxCoeff() < 1e-12 * term1.abs().maxCoeff());
}

TEST_CASE("continuity: the rhs equals minus the flow divergence") {
  SUBCASE("quartic potential") {
    const WignerGrid w = gaussian_state(0.5, 1.0, 0.6);
    const Potential v = Potential::quartic(0.5, 0.75);
    const ArrayXXd rhs = quantum_liouville_rhs(w, v);
    const ArrayXXd div = flow_divergence(wigner_flow(w, v));
    CHECK((rhs + div).abs().maxCoeff() < 1e-8 * rhs.abs().maxCoeff());
  }
  SUBCASE("tanh barrier with the default truncation") {
    const PhaseGrid pg{Grid1D(256, -8.0, 8.0), Grid1D(256, -24.0, 24.0)};
    const WignerGrid w =
        analytic_gaussian_wigner(pg, GaussianParams{-2.0, 8.0, 0.5}, 0.0, kUnits);
    const Potential v = Potential::tanh_barrier(64.0, 0.125);
    const ArrayXXd rhs = quantum_liouville_rhs(w, v);
    const ArrayXXd div = flow_divergence(wigner_flow(w, v));
    CHECK((rhs + div).abs().maxCoeff() < 1e-8 * rhs.abs().maxCoeff());
  }
}

TEST_CASE("stationarity residual vanishes on analytic eigenstates") {
  const PhaseGrid pg{Grid1D(512, -8.0, 8.0), Grid1D(512, -8.0, 8.0)};
  for (int n = 0; n <= 4; ++n) {
    const WignerGrid w = analytic_ho_wigner(pg, n, 1.0, kUnits);
    CHECK(stationarity_residual(w, Potential::harmonic(1.0)).abs().maxCoeff() <
          1e-6);
  }
}

TEST_CASE("a moving packet in a trap is far from stationary") {
  const WignerGrid w = gaussian_state(0.0, 1.0, std::sqrt(0.5));
  CHECK(stationarity_residual(w, Potential::harmonic(1.0)).abs().maxCoeff() >
        1e-2);
}

TEST_CASE("free stationarity residual reduces to (p/m) dw/dx") {
  const WignerGrid w = gaussian_state(0.3, -0.8, 0.7);
  const ArrayXXd res = stationarity_residual(w, Potential::free_space());
  const ArrayXXd dwdx = x_derivative(w, 1);
  for (int r = 0; r < w.pgrid.p.n(); r += 11) {
    const double p = w.pgrid.p.coord(r);
    CHECK((res.row(r) - p * dwdx.row(r)).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("energy residual vanishes at the eigenenergy and shifts linearly") {
  const PhaseGrid pg{Grid1D(512, -8.0, 8.0), Grid1D(512, -8.0, 8.0)};
  const Potential v = Potential::harmonic(1.0);
  const WignerGrid w3 = analytic_ho_wigner(pg, 3, 1.0, kUnits);
  CHECK(energy_residual(w3, v, 3.5).abs().maxCoeff() < 1e-6);
  // Lowering E by 0.5 adds exactly 0.5 w.
  const ArrayXXd shifted = energy_residual(w3, v, 3.0);
  CHECK((shifted - 0.5 * w3.values).abs().maxCoeff() < 1e-6);
  const WignerGrid w0 = analytic_ho_wigner(pg, 0, 1.0, kUnits);
  CHECK(energy_residual(w0, v, 0.5).abs().maxCoeff() < 1e-6);
}

TEST_CASE("classical stationary densities have tangential classical flow") {
  const PhaseGrid pg{Grid1D(256, -10.0, 10.0), Grid1D(256, -10.0, 10.0)};
  const Potential v = Potential::quartic(0.5, 0.25);
  WignerGrid w{pg, ArrayXXd(256, 256), 0.0, kUnits};
  for (int r = 0; r < 256; ++r)
    for (int c = 0; c < 256; ++c) {
      const double x = pg.x.coord(c), p = pg.p.coord(r);
      w.values(r, c) = std::exp(-(0.5 * p * p + v.value(x, kUnits)));
    }
  const FlowField j = classical_flow(w, v);
  CHECK(tangency_divergence(w, j).summary < 1e-6);
}

TEST_CASE("flow of non-finite grids is rejected") {
  WignerGrid w = gaussian_state(0.0, 0.0, 0.5);
  w.values(10, 10) = std::nan("");
  CHECK_THROWS_AS(wigner_flow(w, Potential::free_space()), NumericError);
}
