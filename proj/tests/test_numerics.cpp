#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wlab/fft.hpp"
#include "wlab/grid.hpp"
#include "wlab/quadrature.hpp"
#include "wlab/special.hpp"

using namespace wlab;

TEST_CASE("grid rejects non-power-of-two sample counts") {
  CHECK_THROWS_AS(Grid1D(100, 0.0, 1.0), SizeError);
  CHECK_THROWS_AS(Grid1D(0, 0.0, 1.0), SizeError);
  CHECK_THROWS_AS(Grid1D(64, 1.0, 1.0), DomainError);
  const Grid1D g(64, -8.0, 8.0);
  CHECK(g.spacing() == doctest::Approx(0.25));
  CHECK(g.coord(0) == -8.0);
  CHECK(g.centered());
}

TEST_CASE("fft of a constant vector is a delta") {
  ArrayXcd v = ArrayXcd::Constant(4, 1.0);
  const ArrayXcd f = fft_forward(v);
  CHECK(std::abs(f[0] - Complex(4.0, 0.0)) < 1e-14);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(f[k]) < 1e-14);
}

TEST_CASE("fft of a delta is a constant") {
  ArrayXcd v = ArrayXcd::Zero(4);
  v[0] = 1.0;
  const ArrayXcd f = fft_forward(v);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(f[k] - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("fft matches the direct DFT oracle up to n = 64") {
  for (int n : {2, 8, 16, 64}) {
    const ArrayXcd v = oracles::random_complex(n, 1234 + n);
    const ArrayXcd fast = fft_forward(v);
    const ArrayXcd slow = oracles::dft_direct(v, -1);
    CHECK((fast - slow).abs().maxCoeff() < 1e-10);
    const ArrayXcd back = fft_inverse(fast);
    CHECK((back - v).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fft round trip holds to 1e-12 up to n = 4096") {
  for (int n : {64, 512, 4096}) {
    const ArrayXcd v = oracles::random_complex(n, 99 + n);
    const ArrayXcd back = fft_inverse(fft_forward(v));
    const double rel = (back - v).abs().maxCoeff() / v.abs().maxCoeff();
    CHECK(rel < 1e-12);
  }
}

TEST_CASE("fft rejects non-power-of-two lengths") {
  ArrayXcd v = ArrayXcd::Zero(12);
  CHECK_THROWS_AS(fft_forward(v), SizeError);
}

TEST_CASE("spectral derivative of sin is cos") {
  const Grid1D g(64, 0.0, 2.0 * kPi);
  ArrayXcd f(g.n());
  for (int i = 0; i < g.n(); ++i) f[i] = std::sin(g.coord(i));
  const ArrayXcd d = spectral_derivative(f, g, 1);
  for (int i = 0; i < g.n(); ++i)
    CHECK(std::abs(d[i].real() - std::cos(g.coord(i))) < 1e-10);
}

TEST_CASE("spectral second derivative of a Gaussian matches the closed form") {
  const Grid1D g(128, -8.0, 8.0);
  ArrayXcd f(g.n());
  for (int i = 0; i < g.n(); ++i) f[i] = std::exp(-g.coord(i) * g.coord(i));
  CHECK(std::abs(f[0]) < 1e-14);  // boundary guard for the periodic transform
  const ArrayXcd d2 = spectral_derivative(f, g, 2);
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.coord(i);
    const double expect = (4.0 * x * x - 2.0) * std::exp(-x * x);
    CHECK(std::abs(d2[i].real() - expect) < 1e-8);
  }
}

TEST_CASE("spectral derivative of a constant field vanishes") {
  const Grid1D g(32, -1.0, 3.0);
  const ArrayXcd f = ArrayXcd::Constant(g.n(), Complex(2.5, -1.0));
  for (int order : {1, 2, 3}) {
    const ArrayXcd d = spectral_derivative(f, g, order);
    CHECK(d.abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("applying order a twice equals order 2a for smooth periodic fields") {
  const Grid1D g(128, 0.0, 2.0 * kPi);
  ArrayXcd f(g.n());
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.coord(i);
    f[i] = std::sin(3.0 * x) + 0.5 * std::cos(5.0 * x);
  }
  for (int a : {1, 2}) {
    const ArrayXcd twice = spectral_derivative(
        spectral_derivative(f, g, a).eval(), g, a);
    const ArrayXcd once = spectral_derivative(f, g, 2 * a);
    CHECK((twice - once).abs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("spectral refinement interleaves the original samples") {
  const Grid1D g(128, -8.0, 8.0);
  ArrayXcd f(g.n());
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.coord(i);
    f[i] = Complex(std::exp(-x * x), std::sin(x) * std::exp(-x * x));
  }
  const ArrayXcd fine = spectral_refine2(f);
  REQUIRE(fine.size() == 2 * g.n());
  for (int i = 0; i < g.n(); ++i) CHECK(std::abs(fine[2 * i] - f[i]) < 1e-12);
  // Odd samples agree with the closed form at the midpoints.
  for (int i = 0; i < g.n() - 1; ++i) {
    const double x = g.coord(i) + 0.5 * g.spacing();
    const Complex expect(std::exp(-x * x), std::sin(x) * std::exp(-x * x));
    CHECK(std::abs(fine[2 * i + 1] - expect) < 1e-10);
  }
}

TEST_CASE("spectral shift translates a localized field") {
  const Grid1D g(128, -8.0, 8.0);
  ArrayXd f(g.n());
  for (int i = 0; i < g.n(); ++i)
    f[i] = std::exp(-(g.coord(i) - 1.0) * (g.coord(i) - 1.0));
  const ArrayXd shifted = spectral_shift(f, g, 0.7);
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.coord(i) - 0.7;
    CHECK(std::abs(shifted[i] - std::exp(-(x - 1.0) * (x - 1.0))) < 1e-10);
  }
}

TEST_CASE("laguerre at zero is one for all orders") {
  for (int n : {0, 1, 2, 5, 10, 20}) CHECK(laguerre(n, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("laguerre matches hand values and the coefficient-sum oracle") {
  CHECK(laguerre(2, 2.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(laguerre(5, 3.7) - oracles::laguerre_coeff_sum(5, 3.7)) < 1e-12);
  for (int n : {1, 3, 7, 12}) {
    for (double x : {-2.0, 0.3, 1.0, 9.5}) {
      CHECK(std::abs(laguerre(n, x) - oracles::laguerre_coeff_sum(n, x)) <
            1e-10 * std::max(1.0, std::abs(oracles::laguerre_coeff_sum(n, x))));
    }
  }
}

TEST_CASE("laguerre recurrence residual stays below 1e-10") {
  for (double x = -50.0; x <= 50.0; x += 12.5) {
    for (int k = 1; k <= 20; ++k) {
      const double residual = (k + 1.0) * laguerre(k + 1, x) -
                              (2.0 * k + 1.0 - x) * laguerre(k, x) +
                              k * laguerre(k - 1, x);
      CHECK(std::abs(residual) < 1e-10 * std::max(1.0, std::abs(laguerre(k, x))));
    }
  }
}

TEST_CASE("hermite recurrence matches explicit low orders") {
  const double x = 1.3;
  CHECK(hermite(0, x) == 1.0);
  CHECK(hermite(1, x) == doctest::Approx(2.0 * x));
  CHECK(hermite(2, x) == doctest::Approx(4.0 * x * x - 2.0));
  CHECK(hermite(3, x) == doctest::Approx(8.0 * x * x * x - 12.0 * x));
  CHECK(hermite(4, x) ==
        doctest::Approx(16.0 * std::pow(x, 4) - 48.0 * x * x + 12.0));
}

TEST_CASE("trapezoid_2d integrates a constant to the domain area") {
  const PhaseGrid pg{Grid1D(32, -2.0, 2.0), Grid1D(64, -1.0, 3.0)};
  const ArrayXXd field = ArrayXXd::Constant(64, 32, 1.0);
  CHECK(trapezoid_2d(field, pg) == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("trapezoid_2d integrates a unit Gaussian to one") {
  const PhaseGrid pg{Grid1D(128, -8.0, 8.0), Grid1D(128, -8.0, 8.0)};
  ArrayXXd field(128, 128);
  for (int r = 0; r < 128; ++r)
    for (int c = 0; c < 128; ++c) {
      const double x = pg.x.coord(c), p = pg.p.coord(r);
      field(r, c) = std::exp(-(x * x + p * p) / 2.0) / (2.0 * kPi);
    }
  CHECK(std::abs(trapezoid_2d(field, pg) - 1.0) < 1e-8);
}

TEST_CASE("trapezoid_2d of an antisymmetric field is zero") {
  const PhaseGrid pg{Grid1D(64, -4.0, 4.0), Grid1D(64, -4.0, 4.0)};
  ArrayXXd field(64, 64);
  for (int r = 0; r < 64; ++r)
    for (int c = 0; c < 64; ++c) {
      const double x = pg.x.coord(c), p = pg.p.coord(r);
      field(r, c) = x * p * std::exp(-(x * x + p * p));
    }
  CHECK(std::abs(trapezoid_2d(field, pg)) < 1e-13);
}

TEST_CASE("trapezoid_2d rejects NaN") {
  const PhaseGrid pg{Grid1D(8, 0.0, 1.0), Grid1D(8, 0.0, 1.0)};
  ArrayXXd field = ArrayXXd::Zero(8, 8);
  field(3, 4) = std::nan("");
  CHECK_THROWS_AS(trapezoid_2d(field, pg), NumericError);
}
