#ifndef WLAB_PROPAGATION_HPP
#define WLAB_PROPAGATION_HPP

#include <functional>
#include <utility>
#include <vector>

#include "wlab/potential.hpp"
#include "wlab/wavefunction.hpp"

namespace wlab {

/// Time stepping plan. The kinetic-phase aliasing bound is checked against
/// the grid when stepping starts.
struct PropagationConfig {
  double dt = 1.0 / 512.0;
  long steps = 0;
  long snapshot_stride = 1;

  void validate() const;
};

/// Potential evaluated as V(x, t); lets callers drive time-dependent
/// potentials through the same stepper.
using PotentialFn = std::function<double(double x, double t)>;

/// One Strang step exp(-iV dt/2h) exp(-iK dt/h) exp(-iV dt/2h). The potential
/// phase uses the mid-step time t + dt/2. Unitary: norm drift < 1e-12/step.
WaveFunction split_operator_step(const WaveFunction& psi, const Potential& v,
                                 double dt);
WaveFunction split_operator_step(const WaveFunction& psi, const PotentialFn& v,
                                 double dt);

/// Runs cfg.steps Strang steps, collecting the input state plus a snapshot
/// every snapshot_stride steps (and the final state).
std::vector<WaveFunction> evolve(const WaveFunction& psi, const Potential& v,
                                 const PropagationConfig& cfg);

/// One Strang step with dt -> -i*dt (pure damping), followed by
/// renormalization. The time stamp is left untouched.
WaveFunction imaginary_time_step(const WaveFunction& psi, const Potential& v,
                                 double dt);

/// Ground state by imaginary-time propagation with per-step renormalization.
/// Stops when the relative energy change per step falls below tol. Returns
/// the state (time stamp 0) and its energy <K> + <V>.
std::pair<WaveFunction, double> imaginary_time_ground_state(
    const Grid1D& grid, const Potential& v, const Constants& consts,
    double dt = 1.0 / 256.0, double tol = 1e-10, long max_iterations = 1000000);

/// Total energy <K> + <V>, kinetic part evaluated spectrally.
double total_energy(const WaveFunction& psi, const Potential& v);

}  // namespace wlab

#endif  // WLAB_PROPAGATION_HPP
