#include "wlab/flow.hpp"

#include <cmath>
#include <vector>

#include "wlab/errors.hpp"

namespace wlab {

namespace {

using ArrayXXcd = Eigen::ArrayXXcd;

void check_finite(const WignerGrid& w, const char* who) {
  if (!w.values.isFinite().all())
    throw NumericError(std::string(who) + ": Wigner grid contains non-finite values");
}

// Derivative along x (within each row).
ArrayXXd x_derivative(const ArrayXXd& v, const Grid1D& xg, int order) {
  ArrayXXd out(v.rows(), v.cols());
  ArrayXcd row(v.cols());
  for (Eigen::Index j = 0; j < v.rows(); ++j) {
    row = v.row(j).transpose().cast<Complex>();
    out.row(j) = spectral_derivative(row, xg, order).real().transpose();
  }
  return out;
}

// Forward spectra of all columns, reused across derivative orders.
ArrayXXcd column_spectra(const ArrayXXd& v) {
  ArrayXXcd spec(v.rows(), v.cols());
  ArrayXcd col(v.rows());
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    col = v.col(i).cast<Complex>();
    fft_inplace(col, -1);
    spec.col(i) = col;
  }
  return spec;
}

// Derivative along p (within each column) from precomputed column spectra.
ArrayXXd p_derivative_from_spectra(const ArrayXXcd& spec, const Grid1D& pg,
                                   int order) {
  const int n = pg.n();
  const double base = 2.0 * kPi / pg.length();
  ArrayXcd mult(n);
  for (int j = 0; j < n; ++j) {
    const int js = signed_bin(j, n);
    if ((order & 1) && js == -n / 2) {
      mult[j] = 0.0;
      continue;
    }
    mult[j] = std::pow(Complex(0.0, base * js), order);
  }
  ArrayXXd out(spec.rows(), spec.cols());
  ArrayXcd col(n);
  for (Eigen::Index i = 0; i < spec.cols(); ++i) {
    col = spec.col(i) * mult;
    fft_inplace(col, +1);
    out.col(i) = col.real() / n;
  }
  return out;
}

// Series coefficient (-1)^l (hbar/2)^{2l} / (2l+1)! built iteratively.
double odd_series_coeff_step(double prev, int l, double hbar) {
  return prev * (-(hbar * hbar / 4.0)) / ((2.0 * l) * (2.0 * l + 1.0));
}

// Series coefficient (-1)^l (hbar/2)^{2l} / (2l)!.
double even_series_coeff_step(double prev, int l, double hbar) {
  return prev * (-(hbar * hbar / 4.0)) / ((2.0 * l - 1.0) * (2.0 * l));
}

ArrayXd potential_derivative_row(const Potential& v, const Grid1D& xg, int order,
                                 const Constants& c) {
  ArrayXd out(xg.n());
  for (int i = 0; i < xg.n(); ++i) out[i] = v.derivative(xg.coord(i), order, c);
  return out;
}

}  // namespace

FlowField wigner_flow(const WignerGrid& w, const Potential& v,
                      const SeriesPolicy& policy) {
  check_finite(w, "wigner_flow");
  const int order_limit = policy.resolve(v);
  const bool exact = policy.is_exact_for(v);

  FlowField j{w.pgrid, ArrayXXd(w.values.rows(), w.values.cols()),
              ArrayXXd::Zero(w.values.rows(), w.values.cols()), w.t, w.consts,
              exact ? -1 : order_limit};

  for (Eigen::Index r = 0; r < w.values.rows(); ++r)
    j.jx.row(r) = (w.pgrid.p.coord(static_cast<int>(r)) / w.consts.mass) *
                  w.values.row(r);

  ArrayXXcd spec;
  if (order_limit >= 1) spec = column_spectra(w.values);

  ArrayXXd acc = ArrayXXd::Zero(w.values.rows(), w.values.cols());
  double coeff = 1.0;
  int used = -1;
  for (int l = 0; l <= order_limit; ++l) {
    if (l > 0) coeff = odd_series_coeff_step(coeff, l, w.consts.hbar);
    const ArrayXd vd = potential_derivative_row(v, w.pgrid.x, 2 * l + 1, w.consts);
    const ArrayXXd dpw =
        l == 0 ? w.values : p_derivative_from_spectra(spec, w.pgrid.p, 2 * l);
    ArrayXXd term = dpw.rowwise() * (coeff * vd).transpose();
    if (!exact && l > 0 &&
        term.abs().maxCoeff() <= policy.per_term_tol * acc.abs().maxCoeff())
      break;
    acc += term;
    used = l;
  }
  if (!exact) j.truncation_l_max = used;
  j.jp = -acc;
  return j;
}

FlowField classical_flow(const WignerGrid& w, const Potential& v) {
  FlowField j = wigner_flow(w, v, SeriesPolicy::truncated(0));
  j.truncation_l_max = v.exact_series_order() == 0 ? -1 : 0;
  return j;
}

ArrayXXd quantum_liouville_rhs(const WignerGrid& w, const Potential& v,
                               const SeriesPolicy& policy) {
  check_finite(w, "quantum_liouville_rhs");
  const int order_limit = policy.resolve(v);
  const bool exact = policy.is_exact_for(v);

  ArrayXXd rhs = x_derivative(w.values, w.pgrid.x, 1);
  for (Eigen::Index r = 0; r < rhs.rows(); ++r)
    rhs.row(r) *= -(w.pgrid.p.coord(static_cast<int>(r)) / w.consts.mass);

  const ArrayXXcd spec = column_spectra(w.values);
  ArrayXXd acc = ArrayXXd::Zero(rhs.rows(), rhs.cols());
  double coeff = 1.0;
  for (int l = 0; l <= order_limit; ++l) {
    if (l > 0) coeff = odd_series_coeff_step(coeff, l, w.consts.hbar);
    const ArrayXd vd = potential_derivative_row(v, w.pgrid.x, 2 * l + 1, w.consts);
    const ArrayXXd dpw = p_derivative_from_spectra(spec, w.pgrid.p, 2 * l + 1);
    ArrayXXd term = dpw.rowwise() * (coeff * vd).transpose();
    if (!exact && l > 0 &&
        term.abs().maxCoeff() <= policy.per_term_tol * acc.abs().maxCoeff())
      break;
    acc += term;
  }
  return rhs + acc;
}

ArrayXXd classical_liouville_rhs(const WignerGrid& w, const Potential& v) {
  return quantum_liouville_rhs(w, v, SeriesPolicy::truncated(0));
}

ArrayXXd stationarity_residual(const WignerGrid& w, const Potential& v,
                               const SeriesPolicy& policy) {
  return -quantum_liouville_rhs(w, v, policy);
}

ArrayXXd energy_residual(const WignerGrid& w, const Potential& v, double e,
                         const SeriesPolicy& policy) {
  check_finite(w, "energy_residual");
  const int exact_order = v.exact_series_order();
  const bool exact = policy.is_exact_for(v);
  const int order_limit =
      policy.l_max ? *policy.l_max : (exact ? exact_order + 1 : policy.fallback_l_max);

  const double m = w.consts.mass;
  const double h2 = w.consts.hbar * w.consts.hbar;

  ArrayXXd res = -h2 / (8.0 * m) * x_derivative(w.values, w.pgrid.x, 2);
  for (Eigen::Index r = 0; r < res.rows(); ++r) {
    const double p = w.pgrid.p.coord(static_cast<int>(r));
    res.row(r) += (p * p / (2.0 * m) - e) * w.values.row(r);
  }

  ArrayXXcd spec;
  if (order_limit >= 1) spec = column_spectra(w.values);
  ArrayXXd acc = ArrayXXd::Zero(res.rows(), res.cols());
  double coeff = 1.0;
  for (int l = 0; l <= order_limit; ++l) {
    if (l > 0) coeff = even_series_coeff_step(coeff, l, w.consts.hbar);
    ArrayXd vd(w.pgrid.x.n());
    if (l == 0) {
      for (int i = 0; i < w.pgrid.x.n(); ++i)
        vd[i] = v.value(w.pgrid.x.coord(i), w.consts);
    } else {
      vd = potential_derivative_row(v, w.pgrid.x, 2 * l, w.consts);
    }
    const ArrayXXd dpw =
        l == 0 ? w.values : p_derivative_from_spectra(spec, w.pgrid.p, 2 * l);
    ArrayXXd term = dpw.rowwise() * (coeff * vd).transpose();
    if (!exact && l > 0 &&
        term.abs().maxCoeff() <= policy.per_term_tol * acc.abs().maxCoeff())
      break;
    acc += term;
  }
  return res + acc;
}

ArrayXXd flow_divergence(const FlowField& j) {
  ArrayXXd div = x_derivative(j.jx, j.pgrid.x, 1);
  const ArrayXXcd spec = column_spectra(j.jp);
  div += p_derivative_from_spectra(spec, j.pgrid.p, 1);
  return div;
}

TangencyResult tangency_divergence(const WignerGrid& w, const FlowField& j) {
  check_finite(w, "tangency_divergence");
  if (!(w.pgrid == j.pgrid))
    throw SizeError("tangency_divergence: grids do not match");

  const ArrayXXd wx = x_derivative(w.values, w.pgrid.x, 1);
  const ArrayXXcd spec = column_spectra(w.values);
  const ArrayXXd wp = p_derivative_from_spectra(spec, w.pgrid.p, 1);

  const ArrayXXd jmag = (j.jx.square() + j.jp.square()).sqrt();
  const ArrayXXd gmag = (wx.square() + wp.square()).sqrt();
  const double eps = 1e-12 * jmag.maxCoeff() * gmag.maxCoeff();

  TangencyResult result;
  if (eps == 0.0) {
    result.misalignment = ArrayXXd::Zero(w.values.rows(), w.values.cols());
    return result;
  }
  result.misalignment = (j.jx * wx + j.jp * wp) / (jmag * gmag + eps);

  const double cutoff = 1e-6 * w.values.abs().maxCoeff();
  double num = 0.0, den = 0.0;
  for (Eigen::Index r = 0; r < w.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.values.cols(); ++c) {
      if (std::abs(w.values(r, c)) < cutoff) continue;
      const double weight = w.values(r, c) * w.values(r, c);
      num += weight * result.misalignment(r, c) * result.misalignment(r, c);
      den += weight;
    }
  }
  result.summary = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return result;
}

}  // namespace wlab
