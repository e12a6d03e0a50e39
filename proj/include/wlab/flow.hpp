#ifndef WLAB_FLOW_HPP
#define WLAB_FLOW_HPP

#include <optional>

#include "wlab/potential.hpp"
#include "wlab/wigner.hpp"

namespace wlab {

/// Two-component phase-space vector field j = (jx, jp). truncation_l_max is
/// the order the hbar series was cut at, or -1 when the series terminates
/// exactly for the potential.
struct FlowField {
  PhaseGrid pgrid;
  ArrayXXd jx;
  ArrayXXd jp;
  double t = 0.0;
  Constants consts;
  int truncation_l_max = -1;
};

/// Truncation policy for the hbar series. By default the exact terminating
/// order is used where the potential admits one; otherwise fallback_l_max
/// applies, with a per-term early stop once terms fall below per_term_tol
/// relative to the accumulated field.
struct SeriesPolicy {
  std::optional<int> l_max;      // explicit truncation order
  double per_term_tol = 1e-12;
  int fallback_l_max = 3;

  static SeriesPolicy exact() { return SeriesPolicy{}; }
  static SeriesPolicy truncated(int l, double tol = 1e-12) {
    if (l < 0) throw ConfigError("SeriesPolicy: l_max must be >= 0");
    return SeriesPolicy{l, tol, l};
  }

  /// Concrete series order for a potential.
  int resolve(const Potential& v) const {
    if (l_max) return *l_max;
    const int exact_order = v.exact_series_order();
    return exact_order >= 0 ? exact_order : fallback_l_max;
  }

  bool is_exact_for(const Potential& v) const {
    return !l_max && v.exact_series_order() >= 0;
  }
};

/// Wigner function flow: jx = (p/m) w and
/// jp = -sum_l (-1)^l (hbar/2)^{2l} / (2l+1)! V^(2l+1)(x) d^{2l}w/dp^{2l}.
FlowField wigner_flow(const WignerGrid& w, const Potential& v,
                      const SeriesPolicy& policy = {});

/// Classical probability flow jx = (p/m) w, jp = -V'(x) w; the l = 0
/// truncation of wigner_flow.
FlowField classical_flow(const WignerGrid& w, const Potential& v);

/// Right side of the quantum Liouville equation,
/// dw/dt = -(p/m) dw/dx + sum_l (-1)^l (hbar/2)^{2l}/(2l+1)! V^(2l+1) d^{2l+1}w/dp^{2l+1};
/// equals -div(wigner_flow) by construction.
ArrayXXd quantum_liouville_rhs(const WignerGrid& w, const Potential& v,
                               const SeriesPolicy& policy = {});

/// Poisson bracket {H, w} for H = p^2/2m + V: the l = 0 series truncation,
/// evaluated through the same code path.
ArrayXXd classical_liouville_rhs(const WignerGrid& w, const Potential& v);

/// Left side of the stationary transport equation; ~0 for energy eigenstates.
ArrayXXd stationarity_residual(const WignerGrid& w, const Potential& v,
                               const SeriesPolicy& policy = {});

/// Left side of the phase-space eigenvalue equation minus E*w: the operator
/// p^2/2m - hbar^2/(8m) d^2/dx^2 + sum_l (-1)^l (hbar/2)^{2l}/(2l)! V^(2l) d^{2l}/dp^{2l}
/// applied to w, minus E*w. ~0 for eigenstates at their eigenenergy.
ArrayXXd energy_residual(const WignerGrid& w, const Potential& v, double e,
                         const SeriesPolicy& policy = {});

/// Divergence of a flow field, d(jx)/dx + d(jp)/dp, taken spectrally.
ArrayXXd flow_divergence(const FlowField& j);

/// Pointwise normalized misalignment between the flow and the level lines of
/// w, plus its w^2-weighted RMS. Points below 1e-6 of max|w| are excluded
/// from the summary.
struct TangencyResult {
  ArrayXXd misalignment;
  double summary = 0.0;
};
TangencyResult tangency_divergence(const WignerGrid& w, const FlowField& j);

}  // namespace wlab

#endif  // WLAB_FLOW_HPP
