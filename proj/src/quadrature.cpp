#include "wlab/quadrature.hpp"

#include <cmath>

#include "wlab/errors.hpp"

namespace wlab {

double integrate(const Eigen::ArrayXd& field, const Grid1D& grid) {
  if (field.size() != grid.n()) throw SizeError("integrate: field length mismatch");
  return field.sum() * grid.spacing();
}

double trapezoid_2d(const Eigen::ArrayXXd& field, const PhaseGrid& grid) {
  if (field.rows() != grid.p.n() || field.cols() != grid.x.n())
    throw SizeError("trapezoid_2d: field shape does not match phase grid");
  if (field.hasNaN()) throw NumericError("trapezoid_2d: field contains NaN");
  return field.sum() * grid.x.spacing() * grid.p.spacing();
}

}  // namespace wlab
