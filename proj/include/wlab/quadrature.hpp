#ifndef WLAB_QUADRATURE_HPP
#define WLAB_QUADRATURE_HPP

#include <Eigen/Dense>

#include "wlab/grid.hpp"

namespace wlab {

/// Riemann sum over a 1-D periodic grid: sum(field) * dx.
double integrate(const Eigen::ArrayXd& field, const Grid1D& grid);

/// Riemann sum over a phase-space lattice: sum(field) * dx * dp. Rows index
/// momentum, columns index position. NaN entries raise a numeric error.
double trapezoid_2d(const Eigen::ArrayXXd& field, const PhaseGrid& grid);

}  // namespace wlab

#endif  // WLAB_QUADRATURE_HPP
