#ifndef WLAB_TOMOGRAPHY_HPP
#define WLAB_TOMOGRAPHY_HPP

#include <vector>

#include "wlab/wigner.hpp"

namespace wlab {

/// Radon projections on a shared offset lattice; one row per angle.
struct Sinogram {
  Eigen::ArrayXd angles;      // radians
  Grid1D offsets;             // uniform signed offset lattice
  ArrayXXd values;            // rows = angles, columns = offsets
  std::vector<double> times;  // acquisition times when simulated, else empty

  /// Each row must integrate to 1 within tol.
  void validate(double tol = 1e-6) const;
};

/// Free evolution in phase space: resamples w0 at (x - p t / m, p) by a
/// spectral shift of every momentum row.
WignerGrid free_shear_check(const WignerGrid& w0, double t, const Constants& consts);

/// Radon transform row: line integral of w along the direction orthogonal to
/// (cos theta, sin theta), sampled at the offsets of the position axis.
/// Computed by an FFT shear rotation (exact quarter turns plus three spectral
/// shears), so theta = 0 reproduces marginal_x exactly. Requires a centered
/// square phase grid (same spacing and count on both axes).
ArrayXd project(const WignerGrid& w, double theta);

/// Sinogram assembled from project() at the given angles.
Sinogram project_sinogram(const WignerGrid& w, const Eigen::ArrayXd& angles);

/// Time-of-flight measurement set: for each t the position density of the
/// freely sheared state, recorded at theta(t) = -arctan(t/m) on the common
/// offset lattice with offsets rescaled by cos(theta); rows renormalized to
/// absorb the Jacobian.
Sinogram simulate_measurement_set(const WignerGrid& w0,
                                  const std::vector<double>& times,
                                  const Constants& consts);

/// Filtered back-projection with a spectral ramp filter. Needs at least 32
/// distinct angles spanning at least 140 degrees. Output normalized to unit
/// mass.
WignerGrid reconstruct(const Sinogram& sino, const PhaseGrid& target,
                       const Constants& consts = {});

}  // namespace wlab

#endif  // WLAB_TOMOGRAPHY_HPP
