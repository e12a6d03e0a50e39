#include <doctest.h>

#include <cmath>
#include <random>

#include "wlab/propagation.hpp"
#include "wlab/quadrature.hpp"
#include "wlab/tomography.hpp"

using namespace wlab;

namespace {
const Constants kUnits{1.0, 1.0};

PhaseGrid square_grid(int n, double half) {
  return PhaseGrid{Grid1D(n, -half, half), Grid1D(n, -half, half)};
}

double rel_l2(const ArrayXXd& got, const ArrayXXd& want) {
  return std::sqrt((got - want).square().sum() / want.square().sum());
}

// Continuous 2-D Fourier transform of the grid function at one wave vector.
Complex fourier_slice_sample(const WignerGrid& w, double kx, double kp) {
  Complex acc(0.0, 0.0);
  for (int r = 0; r < w.pgrid.p.n(); ++r) {
    const double p = w.pgrid.p.coord(r);
    for (int c = 0; c < w.pgrid.x.n(); ++c) {
      const double x = w.pgrid.x.coord(c);
      const double phase = -(kx * x + kp * p);
      acc += w.values(r, c) * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return acc * w.pgrid.x.spacing() * w.pgrid.p.spacing();
}
}  // namespace

TEST_CASE("free shear at t = 0 is the identity") {
  const WignerGrid w0 = analytic_gaussian_wigner(
      square_grid(256, 12.0), GaussianParams{1.0, 3.0, 0.5}, 0.0, kUnits);
  const WignerGrid sheared = free_shear_check(w0, 0.0, kUnits);
  CHECK((sheared.values == w0.values).all());
}

TEST_CASE("shearing the t = 0 Gaussian gives the t = 1 closed form") {
  const PhaseGrid pg = square_grid(256, 12.0);
  const GaussianParams params{1.0, 3.0, 0.5};
  const WignerGrid w0 = analytic_gaussian_wigner(pg, params, 0.0, kUnits);
  const WignerGrid sheared = free_shear_check(w0, 1.0, kUnits);
  const WignerGrid ref = analytic_gaussian_wigner(pg, params, 1.0, kUnits);
  CHECK((sheared.values - ref.values).abs().maxCoeff() < 1e-6);
  CHECK(sheared.t == doctest::Approx(1.0));
}

TEST_CASE("shear agrees with split-operator free evolution end to end") {
  const Grid1D grid(512, -16.0, 16.0);
  const GaussianParams params{1.0, 3.0, 0.5};
  const WaveFunction psi0 = gaussian_packet(grid, params, 0.0, kUnits);
  const WignerGrid w0 = wigner_transform(psi0);
  PropagationConfig cfg;
  cfg.dt = 1.0 / 512.0;
  cfg.steps = 512;
  cfg.snapshot_stride = 512;
  const WaveFunction psi1 = evolve(psi0, Potential::free_space(), cfg).back();
  const WignerGrid w1 = wigner_transform(psi1);
  const WignerGrid sheared = free_shear_check(w0, 1.0, kUnits);
  CHECK((w1.values - sheared.values).abs().maxCoeff() < 1e-6);
}

TEST_CASE("projection at angle zero is the position marginal") {
  const WignerGrid w = analytic_ho_wigner(square_grid(256, 10.0), 2, 1.0, kUnits);
  const ArrayXd proj = project(w, 0.0);
  CHECK((proj - marginal_x(w)).abs().maxCoeff() < 1e-8);
}

TEST_CASE("projection at ninety degrees is the momentum marginal") {
  const WignerGrid w = analytic_gaussian_wigner(
      square_grid(256, 10.0), GaussianParams{1.5, -0.5, 0.7}, 0.0, kUnits);
  const ArrayXd proj = project(w, kPi / 2.0);
  CHECK((proj - marginal_p(w)).abs().maxCoeff() < 1e-8);
}

TEST_CASE("rotationally symmetric states project identically at every angle") {
  const WignerGrid w = analytic_ho_wigner(square_grid(256, 10.0), 0, 1.0, kUnits);
  const ArrayXd base = project(w, 0.0);
  for (double theta : {0.2, 0.7, kPi / 3.0, 1.9, 2.8})
    CHECK((project(w, theta) - base).abs().maxCoeff() < 1e-6);
}

TEST_CASE("projections preserve total mass at any angle") {
  const WignerGrid w = analytic_gaussian_wigner(
      square_grid(256, 12.0), GaussianParams{2.0, 1.0, 0.6}, 0.0, kUnits);
  const double mass = trapezoid_2d(w.values, w.pgrid);
  for (double theta : {0.0, 0.4, 1.1, 2.2}) {
    const ArrayXd proj = project(w, theta);
    CHECK(proj.sum() * w.pgrid.x.spacing() ==
          doctest::Approx(mass).epsilon(1e-10));
  }
}

TEST_CASE("projection rejects non-square phase grids") {
  const PhaseGrid pg{Grid1D(256, -10.0, 10.0), Grid1D(256, -12.0, 12.0)};
  const WignerGrid w =
      analytic_gaussian_wigner(pg, GaussianParams{0.0, 0.0, 0.7}, 0.0, kUnits);
  CHECK_THROWS_AS(project(w, 0.3), DomainError);
}

TEST_CASE("projection-slice theorem holds at random angles") {
  const WignerGrid w = analytic_gaussian_wigner(
      square_grid(256, 12.0), GaussianParams{1.0, 0.5, 0.8}, 0.0, kUnits);
  const double ds = w.pgrid.x.spacing();
  std::mt19937 rng(20260810);
  std::uniform_real_distribution<double> uni(0.0, kPi);
  for (int trial = 0; trial < 8; ++trial) {
    const double theta = uni(rng);
    const ArrayXd proj = project(w, theta);
    // 1-D continuous transform of the projection row vs the central slice.
    double worst = 0.0;
    for (int m : {-20, -11, -3, 0, 2, 7, 15, 23}) {
      const double k = 2.0 * kPi * m / w.pgrid.x.length();
      Complex line(0.0, 0.0);
      for (int i = 0; i < w.pgrid.x.n(); ++i) {
        const double s = w.pgrid.x.coord(i);
        line += proj[i] * Complex(std::cos(k * s), -std::sin(k * s));
      }
      line *= ds;
      const Complex slice =
          fourier_slice_sample(w, k * std::cos(theta), k * std::sin(theta));
      worst = std::max(worst, std::abs(line - slice));
    }
    CHECK(worst < 1e-6);  // slices are O(1): F2(0) = total mass = 1
  }
}

TEST_CASE("a measurement set records shear marginals at the arctan angles") {
  // Domain wide enough that the t = 2 shear keeps ~8 sigma of clearance.
  const WignerGrid w0 = analytic_gaussian_wigner(
      square_grid(256, 20.0), GaussianParams{1.0, 1.5, 0.5}, 0.0, kUnits);
  const std::vector<double> times = {0.0, 0.5, 1.0, 2.0, -1.0};
  const Sinogram sino = simulate_measurement_set(w0, times, kUnits);
  sino.validate();
  REQUIRE(sino.angles.size() == 5);
  for (int r = 0; r < 5; ++r)
    CHECK(sino.angles[r] == doctest::Approx(-std::atan(times[r])).epsilon(1e-14));

  SUBCASE("the t = 0 row is the position marginal") {
    CHECK((sino.values.row(0).transpose() - marginal_x(w0)).abs().maxCoeff() <
          1e-8);
  }

  SUBCASE("rows match the closed-form broadened packet density") {
    for (int r = 0; r < 5; ++r) {
      const double t = times[r];
      const double c = std::cos(sino.angles[r]);
      // sigma_t^2 = sigma^2 (1 + (hbar t / 2 m sigma^2)^2) with sigma = 1/2,
      // so the broadening factor is 1 + 4 t^2.
      const double sigma_t2 = 0.25 * (1.0 + 4.0 * t * t);
      for (int i = 0; i < sino.offsets.n(); ++i) {
        const double x = sino.offsets.coord(i) / c;
        const double rho = std::exp(-(x - 1.0 - 1.5 * t) * (x - 1.0 - 1.5 * t) /
                                    (2.0 * sigma_t2)) /
                           std::sqrt(2.0 * kPi * sigma_t2);
        CHECK(std::abs(sino.values(r, i) - rho / c) < 1e-6);
      }
    }
  }

  SUBCASE("rows equal direct projections at the same angles") {
    for (int r = 0; r < 5; ++r) {
      const ArrayXd direct = project(w0, sino.angles[r]);
      CHECK((sino.values.row(r).transpose() - direct).abs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("filtered back-projection reconstructs a Gaussian phantom") {
  const PhaseGrid pg = square_grid(256, 12.0);
  const WignerGrid phantom =
      analytic_gaussian_wigner(pg, GaussianParams{1.0, 0.5, 0.8}, 0.0, kUnits);
  Eigen::ArrayXd angles(180);
  for (int i = 0; i < 180; ++i) angles[i] = i * kPi / 180.0;
  const Sinogram sino = project_sinogram(phantom, angles);
  const WignerGrid rec = reconstruct(sino, pg, kUnits);
  CHECK(rel_l2(rec.values, phantom.values) < 0.02);
}

TEST_CASE("reconstruction recovers the negative dip of the n = 1 state") {
  const PhaseGrid pg = square_grid(256, 10.0);
  const WignerGrid phantom = analytic_ho_wigner(pg, 1, 1.0, kUnits);
  Eigen::ArrayXd angles(180);
  for (int i = 0; i < 180; ++i) angles[i] = i * kPi / 180.0;
  const Sinogram sino = project_sinogram(phantom, angles);
  const WignerGrid rec = reconstruct(sino, pg, kUnits);
  const double dip = rec.values(128, 128);
  CHECK(dip < 0.0);
  CHECK(std::abs(dip - (-1.0 / kPi)) < 0.1 / kPi);
}

TEST_CASE("reconstruction error shrinks as the angle count doubles") {
  const PhaseGrid pg = square_grid(128, 12.0);
  const WignerGrid phantom =
      analytic_gaussian_wigner(pg, GaussianParams{1.0, 0.5, 0.8}, 0.0, kUnits);
  double previous = 1e300;
  for (int count : {32, 64, 128, 256}) {
    Eigen::ArrayXd angles(count);
    for (int i = 0; i < count; ++i) angles[i] = i * kPi / count;
    const WignerGrid rec =
        reconstruct(project_sinogram(phantom, angles), pg, kUnits);
    const double err = rel_l2(rec.values, phantom.values);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("insufficient angular coverage is rejected") {
  const PhaseGrid pg = square_grid(128, 10.0);
  const WignerGrid phantom =
      analytic_gaussian_wigner(pg, GaussianParams{0.0, 0.0, 0.7}, 0.0, kUnits);
  SUBCASE("single angle") {
    Eigen::ArrayXd angles(1);
    angles[0] = 0.0;
    CHECK_THROWS_AS(reconstruct(project_sinogram(phantom, angles), pg, kUnits),
                    CoverageError);
  }
  SUBCASE("many angles over a narrow fan") {
    Eigen::ArrayXd angles(40);
    for (int i = 0; i < 40; ++i) angles[i] = i * (kPi / 4.0) / 40.0;
    CHECK_THROWS_AS(reconstruct(project_sinogram(phantom, angles), pg, kUnits),
                    CoverageError);
  }
}

TEST_CASE("sinogram validation flags unnormalized rows") {
  const PhaseGrid pg = square_grid(128, 10.0);
  const WignerGrid phantom =
      analytic_gaussian_wigner(pg, GaussianParams{0.0, 0.0, 0.7}, 0.0, kUnits);
  Eigen::ArrayXd angles(4);
  for (int i = 0; i < 4; ++i) angles[i] = i * kPi / 4;
  Sinogram sino = project_sinogram(phantom, angles);
  sino.validate();
  sino.values.row(2) *= 2.0;
  CHECK_THROWS_AS(sino.validate(), DomainError);
}
