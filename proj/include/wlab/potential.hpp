#ifndef WLAB_POTENTIAL_HPP
#define WLAB_POTENTIAL_HPP

#include <string>
#include <variant>

#include "wlab/grid.hpp"

namespace wlab {

/// Analytic potentials with closed-form derivatives of every order.
/// Free:            V = 0
/// Harmonic:        V = m w^2 x^2 / 2
/// AnharmonicQuartic: V = m w^2 x^2 / 2 + alpha x^4
/// TanhBarrier:     V = v0 (tanh(x/d)+1)(tanh(-x/d)+1) = v0 sech^2(x/d)
class Potential {
 public:
  struct Free {};
  struct Harmonic {
    double omega;
  };
  struct AnharmonicQuartic {
    double omega;
    double alpha;
  };
  struct TanhBarrier {
    double v0;
    double delta;
  };

  static Potential free_space() { return Potential(Free{}); }
  static Potential harmonic(double omega);
  static Potential quartic(double omega, double alpha);
  static Potential tanh_barrier(double v0, double delta);

  /// Parses "free", "harmonic omega=1", "quartic omega=0.5 alpha=0.25",
  /// "tanh_barrier v0=64 delta=0.125".
  static Potential parse(const std::string& text);

  double value(double x, const Constants& c) const;

  /// order-th spatial derivative, order >= 1, evaluated analytically.
  double derivative(double x, int order, const Constants& c) const;

  /// Terminating order L of the hbar series (all derivatives above 2L+1
  /// vanish identically), or -1 when the series does not terminate.
  int exact_series_order() const;

  std::string describe() const;

  const std::variant<Free, Harmonic, AnharmonicQuartic, TanhBarrier>& node() const {
    return node_;
  }

 private:
  template <typename T>
  explicit Potential(T v) : node_(v) {}

  std::variant<Free, Harmonic, AnharmonicQuartic, TanhBarrier> node_;
};

}  // namespace wlab

#endif  // WLAB_POTENTIAL_HPP
