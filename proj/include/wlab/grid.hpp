#ifndef WLAB_GRID_HPP
#define WLAB_GRID_HPP

#include <Eigen/Dense>
#include <numbers>
#include <string>

#include "wlab/errors.hpp"

namespace wlab {

inline constexpr double kPi = std::numbers::pi;

/// Physical constants of a simulation, strictly positive.
struct Constants {
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !(mass > 0.0))
      throw DomainError("Constants: hbar and mass must be strictly positive");
  }
};

/// Uniform periodic sampling lattice: n samples at x_min + i*dx, the right
/// endpoint excluded. n must be a power of two.
class Grid1D {
 public:
  Grid1D(int n, double x_min, double x_max) : n_(n), x_min_(x_min) {
    if (n <= 0 || (n & (n - 1)) != 0)
      throw SizeError("Grid1D: sample count must be a positive power of two, got " +
                      std::to_string(n));
    dx_ = (x_max - x_min) / n;
    if (!(dx_ > 0.0)) throw DomainError("Grid1D: x_max must exceed x_min");
  }

  int n() const { return n_; }
  double min() const { return x_min_; }
  double max() const { return x_min_ + n_ * dx_; }
  double spacing() const { return dx_; }
  double length() const { return n_ * dx_; }
  double coord(int i) const { return x_min_ + i * dx_; }

  Eigen::ArrayXd coords() const {
    Eigen::ArrayXd x(n_);
    for (int i = 0; i < n_; ++i) x[i] = coord(i);
    return x;
  }

  /// True when the lattice is symmetric about the origin (0 is the sample at
  /// index n/2).
  bool centered() const { return x_min_ == -max(); }

  friend bool operator==(const Grid1D& a, const Grid1D& b) {
    return a.n_ == b.n_ && a.x_min_ == b.x_min_ && a.dx_ == b.dx_;
  }

 private:
  int n_;
  double x_min_;
  double dx_;
};

/// Product lattice over position and momentum.
struct PhaseGrid {
  Grid1D x;
  Grid1D p;

  /// Momentum lattice conjugate to a wave-function grid under the Wigner
  /// transform: spacing pi*hbar/(n*dx), n samples, p = 0 at index n/2.
  static PhaseGrid wigner_conjugate(const Grid1D& xg, double hbar) {
    const int n = xg.n();
    const double dp = kPi * hbar / (n * xg.spacing());
    return PhaseGrid{xg, Grid1D(n, -(n / 2) * dp, (n / 2) * dp)};
  }

  /// Momentum lattice conjugate under the plain Fourier transform:
  /// spacing 2*pi*hbar/(n*dx), p = 0 at index n/2.
  static Grid1D fourier_conjugate(const Grid1D& xg, double hbar) {
    const int n = xg.n();
    const double dp = 2.0 * kPi * hbar / (n * xg.spacing());
    return Grid1D(n, -(n / 2) * dp, (n / 2) * dp);
  }

  friend bool operator==(const PhaseGrid& a, const PhaseGrid& b) {
    return a.x == b.x && a.p == b.p;
  }
};

}  // namespace wlab

#endif  // WLAB_GRID_HPP
