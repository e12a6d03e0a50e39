#include "wlab/potential.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "wlab/errors.hpp"

namespace wlab {

namespace {

// k-th derivative of sech^2(x/delta), written as a polynomial in u = tanh(x/delta):
// Q_0(u) = 1 - u^2 and Q_{k+1}(u) = Q_k'(u) (1 - u^2). The 1/delta^k scale is
// applied by the caller.
std::vector<double> sech2_poly(int order) {
  std::vector<double> q = {1.0, 0.0, -1.0};
  for (int k = 0; k < order; ++k) {
    std::vector<double> next(q.size() + 1, 0.0);
    for (std::size_t m = 1; m < q.size(); ++m) {
      next[m - 1] += m * q[m];
      next[m + 1] -= m * q[m];
    }
    q = std::move(next);
  }
  return q;
}

double eval_poly(const std::vector<double>& c, double u) {
  double acc = 0.0;
  for (std::size_t m = c.size(); m-- > 0;) acc = acc * u + c[m];
  return acc;
}

}  // namespace

Potential Potential::harmonic(double omega) {
  if (!(omega > 0.0)) throw DomainError("harmonic potential: omega must be > 0");
  return Potential(Harmonic{omega});
}

Potential Potential::quartic(double omega, double alpha) {
  if (!(omega > 0.0)) throw DomainError("quartic potential: omega must be > 0");
  if (alpha < 0.0) throw DomainError("quartic potential: alpha must be >= 0");
  return Potential(AnharmonicQuartic{omega, alpha});
}

Potential Potential::tanh_barrier(double v0, double delta) {
  if (!(delta > 0.0)) throw DomainError("tanh barrier: delta must be > 0");
  return Potential(TanhBarrier{v0, delta});
}

double Potential::value(double x, const Constants& c) const {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Free>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          return 0.5 * c.mass * v.omega * v.omega * x * x;
        } else if constexpr (std::is_same_v<T, AnharmonicQuartic>) {
          return 0.5 * c.mass * v.omega * v.omega * x * x + v.alpha * x * x * x * x;
        } else {
          const double u = std::tanh(x / v.delta);
          return v.v0 * (1.0 - u * u);
        }
      },
      node_);
}

double Potential::derivative(double x, int order, const Constants& c) const {
  if (order < 1) throw DomainError("Potential::derivative: order must be >= 1");
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Free>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          const double mw2 = c.mass * v.omega * v.omega;
          if (order == 1) return mw2 * x;
          if (order == 2) return mw2;
          return 0.0;
        } else if constexpr (std::is_same_v<T, AnharmonicQuartic>) {
          const double mw2 = c.mass * v.omega * v.omega;
          switch (order) {
            case 1: return mw2 * x + 4.0 * v.alpha * x * x * x;
            case 2: return mw2 + 12.0 * v.alpha * x * x;
            case 3: return 24.0 * v.alpha * x;
            case 4: return 24.0 * v.alpha;
            default: return 0.0;
          }
        } else {
          const double u = std::tanh(x / v.delta);
          const double scale = v.v0 / std::pow(v.delta, order);
          return scale * eval_poly(sech2_poly(order), u);
        }
      },
      node_);
}

int Potential::exact_series_order() const {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Free>) return 0;
        if constexpr (std::is_same_v<T, Harmonic>) return 0;
        if constexpr (std::is_same_v<T, AnharmonicQuartic>) return 1;
        return -1;
      },
      node_);
}

std::string Potential::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Free>) {
          os << "free";
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          os << "harmonic omega=" << v.omega;
        } else if constexpr (std::is_same_v<T, AnharmonicQuartic>) {
          os << "quartic omega=" << v.omega << " alpha=" << v.alpha;
        } else {
          os << "tanh_barrier v0=" << v.v0 << " delta=" << v.delta;
        }
      },
      node_);
  return os.str();
}

Potential Potential::parse(const std::string& text) {
  std::istringstream is(text);
  std::string kind;
  is >> kind;
  double omega = 1.0, alpha = 0.0, v0 = 1.0, delta = 1.0;
  bool saw_omega = false, saw_alpha = false, saw_v0 = false, saw_delta = false;
  std::string token;
  while (is >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw DomainError("potential spec: expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    double val = 0.0;
    try {
      std::size_t used = 0;
      val = std::stod(token.substr(eq + 1), &used);
      if (used != token.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DomainError("potential spec: bad numeric value in '" + token + "'");
    }
    if (key == "omega") omega = val, saw_omega = true;
    else if (key == "alpha") alpha = val, saw_alpha = true;
    else if (key == "v0") v0 = val, saw_v0 = true;
    else if (key == "delta") delta = val, saw_delta = true;
    else throw DomainError("potential spec: unknown key '" + key + "'");
  }
  if (kind == "free") {
    if (saw_omega || saw_alpha || saw_v0 || saw_delta)
      throw DomainError("potential spec: free takes no parameters");
    return free_space();
  }
  if (kind == "harmonic") {
    if (saw_alpha || saw_v0 || saw_delta)
      throw DomainError("potential spec: harmonic takes only omega");
    return harmonic(omega);
  }
  if (kind == "quartic" || kind == "anharmonic") {
    if (saw_v0 || saw_delta)
      throw DomainError("potential spec: quartic takes omega and alpha");
    return quartic(omega, alpha);
  }
  if (kind == "tanh_barrier" || kind == "barrier") {
    if (saw_omega || saw_alpha)
      throw DomainError("potential spec: tanh_barrier takes v0 and delta");
    return tanh_barrier(v0, delta);
  }
  throw DomainError("potential spec: unknown kind '" + kind + "'");
}

}  // namespace wlab
