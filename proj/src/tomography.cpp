#include "wlab/tomography.hpp"

#include <algorithm>
#include <cmath>

#include "wlab/errors.hpp"
#include "wlab/quadrature.hpp"

namespace wlab {

namespace {

void require_square_centered(const PhaseGrid& pg, const char* who) {
  if (pg.x.n() != pg.p.n() || pg.x.spacing() != pg.p.spacing() ||
      !pg.x.centered() || !pg.p.centered())
    throw DomainError(std::string(who) +
                      ": needs a centered square phase grid (equal axes)");
}

// g(a, b) = f(-b, a), an exact index permutation on a centered square grid
// under the periodic convention.
ArrayXXd quarter_turn(const ArrayXXd& f) {
  const Eigen::Index n = f.rows();
  ArrayXXd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(j, i) = f(i, (n - j) % n);
  return g;
}

// Shift every row r along x by delta(r); rows are momentum indices.
void shear_rows(ArrayXXd& f, const Grid1D& axis,
                const std::function<double(int)>& delta) {
  ArrayXd row(f.cols());
  for (Eigen::Index r = 0; r < f.rows(); ++r) {
    const double d = delta(static_cast<int>(r));
    if (d == 0.0) continue;
    row = f.row(r).transpose();
    f.row(r) = spectral_shift(row, axis, d).transpose();
  }
}

void shear_cols(ArrayXXd& f, const Grid1D& axis,
                const std::function<double(int)>& delta) {
  ArrayXd col(f.rows());
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    const double d = delta(static_cast<int>(c));
    if (d == 0.0) continue;
    col = f.col(c);
    f.col(c) = spectral_shift(col, axis, d);
  }
}

// g(a, b) = f(a cos t - b sin t, a sin t + b cos t) for |t| <= pi/4, by the
// three-shear decomposition; larger angles are reduced by quarter turns.
ArrayXXd rotate_field(const WignerGrid& w, double theta) {
  ArrayXXd g = w.values;
  long q = std::lround(theta / (kPi / 2.0));
  const double r = theta - q * (kPi / 2.0);
  q = ((q % 4) + 4) % 4;
  for (long i = 0; i < q; ++i) g = quarter_turn(g);
  if (r != 0.0) {
    const double a = -std::tan(r / 2.0);
    const double b = std::sin(r);
    const Grid1D& xg = w.pgrid.x;
    const Grid1D& pg = w.pgrid.p;
    shear_rows(g, xg, [&](int row) { return -a * pg.coord(row); });
    shear_cols(g, pg, [&](int col) { return -b * xg.coord(col); });
    shear_rows(g, xg, [&](int row) { return -a * pg.coord(row); });
  }
  return g;
}

}  // namespace

void Sinogram::validate(double tol) const {
  if (values.rows() != angles.size() || values.cols() != offsets.n())
    throw SizeError("Sinogram: shape does not match angles/offsets");
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    const double mass = values.row(r).sum() * offsets.spacing();
    if (std::abs(mass - 1.0) > tol)
      throw DomainError("Sinogram: row " + std::to_string(r) +
                        " integrates to " + std::to_string(mass));
  }
}

WignerGrid free_shear_check(const WignerGrid& w0, double t, const Constants& consts) {
  consts.validate();
  WignerGrid out = w0;
  out.t = w0.t + t;
  if (t == 0.0) return out;
  ArrayXd row(out.values.cols());
  for (Eigen::Index r = 0; r < out.values.rows(); ++r) {
    const double shift = w0.pgrid.p.coord(static_cast<int>(r)) * t / consts.mass;
    row = out.values.row(r).transpose();
    out.values.row(r) = spectral_shift(row, w0.pgrid.x, shift).transpose();
  }
  return out;
}

ArrayXd project(const WignerGrid& w, double theta) {
  require_square_centered(w.pgrid, "project");
  // Angle convention, matching the free-evolution law theta(t) = -arctan(t/m):
  // the row at angle theta integrates along the lines x cos(theta) -
  // p sin(theta) = s, i.e. the standard Radon transform at -theta.
  const ArrayXXd rotated = rotate_field(w, -theta);
  return rotated.colwise().sum().transpose() * w.pgrid.p.spacing();
}

Sinogram project_sinogram(const WignerGrid& w, const Eigen::ArrayXd& angles) {
  Sinogram sino{angles, w.pgrid.x,
                ArrayXXd(angles.size(), w.pgrid.x.n()), {}};
  for (Eigen::Index r = 0; r < angles.size(); ++r)
    sino.values.row(r) = project(w, angles[r]).transpose();
  return sino;
}

Sinogram simulate_measurement_set(const WignerGrid& w0,
                                  const std::vector<double>& times,
                                  const Constants& consts) {
  require_square_centered(w0.pgrid, "simulate_measurement_set");
  const Grid1D& xg = w0.pgrid.x;
  Sinogram sino{Eigen::ArrayXd(static_cast<Eigen::Index>(times.size())), xg,
                ArrayXXd(static_cast<Eigen::Index>(times.size()), xg.n()), times};
  for (std::size_t r = 0; r < times.size(); ++r) {
    const double t = times[r];
    const double theta = -std::atan(t / consts.mass);
    sino.angles[static_cast<Eigen::Index>(r)] = theta;
    const ArrayXd rho = marginal_x(free_shear_check(w0, t, consts));
    // Offsets rescale by cos(theta): the strip at offset s carries the
    // density measured at x = s / cos(theta).
    const double c = std::cos(theta);
    ArrayXd points(xg.n());
    ArrayXd row(xg.n());
    for (int i = 0; i < xg.n(); ++i) points[i] = xg.coord(i) / c;
    const ArrayXd sampled = trig_interp(rho, xg, points);
    for (int i = 0; i < xg.n(); ++i) {
      const bool inside = points[i] >= xg.min() && points[i] < xg.max();
      row[i] = inside ? sampled[i] : 0.0;
    }
    const double mass = row.sum() * xg.spacing();
    if (!(mass > 0.0))
      throw NumericError("simulate_measurement_set: empty projection row");
    sino.values.row(static_cast<Eigen::Index>(r)) = (row / mass).transpose();
  }
  return sino;
}

WignerGrid reconstruct(const Sinogram& sino, const PhaseGrid& target,
                       const Constants& consts) {
  sino.validate();
  const Eigen::Index rows = sino.angles.size();

  // Normalize angles into [0, pi); a pi shift mirrors the offset axis.
  std::vector<double> norm_angles(rows);
  std::vector<bool> mirrored(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    double a = std::fmod(sino.angles[r], kPi);
    if (a < 0.0) a += kPi;
    norm_angles[r] = a;
    const double shift = sino.angles[r] - a;
    const long half_turns = std::lround(shift / kPi);
    mirrored[r] = (half_turns % 2) != 0;
  }

  std::vector<double> sorted(norm_angles);
  std::sort(sorted.begin(), sorted.end());
  Eigen::Index distinct = sorted.empty() ? 0 : 1;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] > 1e-12) ++distinct;
  const double span = sorted.empty() ? 0.0 : sorted.back() - sorted.front();
  if (distinct < 32 || span < 140.0 / 180.0 * kPi)
    throw CoverageError("reconstruct: need >= 32 distinct angles spanning >= 140 "
                        "degrees, got " +
                        std::to_string(distinct) + " over " +
                        std::to_string(span * 180.0 / kPi) + " degrees");

  // Ram-Lak ramp filter applied spectrally on zero-padded rows.
  const int n_off = sino.offsets.n();
  int padded = 1;
  while (padded < 2 * n_off) padded <<= 1;
  const double ds = sino.offsets.spacing();
  ArrayXXd filtered(rows, n_off);
  for (Eigen::Index r = 0; r < rows; ++r) {
    ArrayXcd buf = ArrayXcd::Zero(padded);
    for (int i = 0; i < n_off; ++i) {
      const int src = mirrored[r] ? (n_off - i) % n_off : i;
      buf[i] = sino.values(r, src);
    }
    fft_inplace(buf, -1);
    for (int k = 0; k < padded; ++k)
      buf[k] *= std::abs(signed_bin(k, padded)) * 2.0 * kPi / (padded * ds);
    fft_inplace(buf, +1);
    for (int i = 0; i < n_off; ++i) filtered(r, i) = buf[i].real() / padded;
  }

  // Trapezoid weights over the sorted angles.
  std::vector<Eigen::Index> order(rows);
  for (Eigen::Index r = 0; r < rows; ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return norm_angles[a] < norm_angles[b];
  });
  std::vector<double> weight(rows, 0.0);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const double prev = k == 0 ? norm_angles[order[0]] : norm_angles[order[k - 1]];
    const double next =
        k == rows - 1 ? norm_angles[order[rows - 1]] : norm_angles[order[k + 1]];
    weight[order[k]] = 0.5 * (next - prev);
    if (k == 0 || k == rows - 1) weight[order[k]] += 0.5 * span / (rows - 1);
  }

  // Back-project sequentially, angle by angle, linear interpolation in s.
  WignerGrid out{target, ArrayXXd::Zero(target.p.n(), target.x.n()), 0.0, consts};
  const double s_min = sino.offsets.min();
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double c = std::cos(norm_angles[r]);
    const double s = std::sin(norm_angles[r]);
    for (int j = 0; j < target.p.n(); ++j) {
      const double p = target.p.coord(j);
      for (int i = 0; i < target.x.n(); ++i) {
        const double off = target.x.coord(i) * c - p * s;  // project() convention
        const double u = (off - s_min) / ds;
        const int i0 = static_cast<int>(std::floor(u));
        if (i0 < 0 || i0 + 1 >= n_off) continue;
        const double frac = u - i0;
        out.values(j, i) += weight[r] * ((1.0 - frac) * filtered(r, i0) +
                                         frac * filtered(r, i0 + 1));
      }
    }
  }

  const double mass = trapezoid_2d(out.values, target);
  if (!(std::abs(mass) > 0.0))
    throw NumericError("reconstruct: back-projection produced zero mass");
  out.values /= mass;
  return out;
}

}  // namespace wlab
