#include "wlab/propagation.hpp"

#include <cmath>

#include "wlab/errors.hpp"

namespace wlab {

namespace {

// Kinetic phase increment between adjacent momentum bins must stay below pi
// per step, otherwise the propagator phase is no longer resolved on the grid.
void check_aliasing_bound(const WaveFunction& psi, double dt) {
  const int n = psi.grid.n();
  const double dk = 2.0 * kPi / psi.grid.length();
  const double k_max = kPi / psi.grid.spacing();
  const double dK = psi.consts.hbar * psi.consts.hbar * dk * (2.0 * k_max - dk) /
                    (2.0 * psi.consts.mass);
  if (std::abs(dt) * dK / psi.consts.hbar >= kPi)
    throw ConfigError("time step " + std::to_string(dt) +
                      " violates the kinetic aliasing bound on a grid of " +
                      std::to_string(n) + " samples");
}

// Shared stepper; tau = -i*dt selects imaginary time when imag == true.
WaveFunction strang_step(const WaveFunction& psi, const PotentialFn& v, double dt,
                         bool imag) {
  const int n = psi.grid.n();
  const double hbar = psi.consts.hbar;
  const double t_mid = psi.t + 0.5 * dt;
  WaveFunction out = psi;

  auto potential_half_kick = [&](ArrayXcd& vals) {
    for (int i = 0; i < n; ++i) {
      const double vx = v(psi.grid.coord(i), t_mid);
      if (imag)
        vals[i] *= std::exp(-vx * dt / (2.0 * hbar));
      else
        vals[i] *= Complex(std::cos(vx * dt / (2.0 * hbar)),
                           -std::sin(vx * dt / (2.0 * hbar)));
    }
  };

  potential_half_kick(out.values);

  fft_inplace(out.values, -1);
  const double base = 2.0 * kPi / psi.grid.length();
  for (int j = 0; j < n; ++j) {
    const double k = base * signed_bin(j, n);
    const double kin = hbar * k * k / (2.0 * psi.consts.mass);  // K/hbar
    if (imag)
      out.values[j] *= std::exp(-kin * dt);
    else
      out.values[j] *= Complex(std::cos(kin * dt), -std::sin(kin * dt));
  }
  fft_inplace(out.values, +1);
  out.values /= static_cast<double>(n);

  potential_half_kick(out.values);

  out.t = psi.t + (imag ? 0.0 : dt);
  return out;
}

}  // namespace

void PropagationConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("PropagationConfig: dt must be positive");
  if (steps < 0) throw ConfigError("PropagationConfig: steps must be >= 0");
  if (snapshot_stride < 1)
    throw ConfigError("PropagationConfig: snapshot_stride must be >= 1");
}

WaveFunction split_operator_step(const WaveFunction& psi, const PotentialFn& v,
                                 double dt) {
  if (psi.rep != Representation::position)
    throw DomainError("split_operator_step: needs position representation");
  if (dt == 0.0) return psi;
  check_aliasing_bound(psi, dt);
  return strang_step(psi, v, dt, false);
}

WaveFunction split_operator_step(const WaveFunction& psi, const Potential& v,
                                 double dt) {
  const Constants c = psi.consts;
  return split_operator_step(
      psi, PotentialFn([&v, c](double x, double) { return v.value(x, c); }), dt);
}

WaveFunction imaginary_time_step(const WaveFunction& psi, const Potential& v,
                                 double dt) {
  if (!(dt > 0.0)) throw ConfigError("imaginary_time_step: dt must be positive");
  const Constants c = psi.consts;
  WaveFunction out = strang_step(
      psi, PotentialFn([&v, c](double x, double) { return v.value(x, c); }), dt,
      true);
  out.values /= std::sqrt(norm_squared(out));
  return out;
}

std::vector<WaveFunction> evolve(const WaveFunction& psi, const Potential& v,
                                 const PropagationConfig& cfg) {
  cfg.validate();
  require_normalized(psi);
  std::vector<WaveFunction> snapshots;
  snapshots.push_back(psi);
  if (cfg.steps == 0) return snapshots;
  check_aliasing_bound(psi, cfg.dt);

  const Constants c = psi.consts;
  const PotentialFn fn = [&v, c](double x, double) { return v.value(x, c); };
  WaveFunction cur = psi;
  const double t0 = psi.t;
  for (long s = 1; s <= cfg.steps; ++s) {
    cur = strang_step(cur, fn, cfg.dt, false);
    cur.t = t0 + s * cfg.dt;  // accumulate from the start to avoid drift
    if (s % cfg.snapshot_stride == 0 || s == cfg.steps) snapshots.push_back(cur);
  }
  return snapshots;
}

double total_energy(const WaveFunction& psi, const Potential& v) {
  const Constants c = psi.consts;
  const double kin = expect_momentum_observable(
      psi, [&](double p) { return p * p / (2.0 * c.mass); });
  const double pot =
      expect_position_observable(psi, [&](double x) { return v.value(x, c); });
  return kin + pot;
}

std::pair<WaveFunction, double> imaginary_time_ground_state(
    const Grid1D& grid, const Potential& v, const Constants& consts, double dt,
    double tol, long max_iterations) {
  consts.validate();
  if (!(dt > 0.0)) throw ConfigError("imaginary time: dt must be positive");

  // Seed from the harmonic part so the ground-state overlap is guaranteed for
  // symmetric potentials; unit width otherwise.
  double omega_seed = 1.0;
  if (const auto* h = std::get_if<Potential::Harmonic>(&v.node()))
    omega_seed = h->omega;
  else if (const auto* q = std::get_if<Potential::AnharmonicQuartic>(&v.node()))
    omega_seed = q->omega;
  GaussianParams seed{0.0, 0.0,
                      std::sqrt(consts.hbar / (2.0 * consts.mass * omega_seed))};
  WaveFunction psi = gaussian_packet(grid, seed, 0.0, consts);

  double energy = total_energy(psi, v);
  for (long it = 0; it < max_iterations; ++it) {
    psi = imaginary_time_step(psi, v, dt);
    const double next = total_energy(psi, v);
    const double change = std::abs(next - energy);
    energy = next;
    if (change < tol * std::max(std::abs(energy), 1e-12)) {
      psi.t = 0.0;
      return {psi, energy};
    }
  }
  throw ConvergenceError("imaginary time propagation did not converge; last energy " +
                             std::to_string(energy),
                         energy);
}

}  // namespace wlab
