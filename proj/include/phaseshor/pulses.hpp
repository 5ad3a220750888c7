#pragma once

// Single resonant transition |k> -> |p> driven in the rotating-wave model
//
//   H = E_k |k><k| + E_p |p><p|
//       - (Omega/2) [ e^{i theta(t)} |k><p| + e^{-i theta(t)} |p><k| ]
//
// where theta(t) = omega_pk t + phi for a pulse cut from a continuous
// reference oscillation (Coherent) and theta(t) = omega_pk (t - t0) + phi0
// for a pulse whose phase is fixed at its own start (NonCoherent).

#include <string_view>

#include "phaseshor/statevec.hpp"

namespace phaseshor {

struct TwoLevelSystem {
  double energy_k = 0.0;  // initially populated ("parent") level
  double energy_p = 0.0;  // level generated by the pulse

  /// omega_pk = E_p - E_k
  double transition_frequency() const { return energy_p - energy_k; }
};

enum class PulseMode { Coherent, NonCoherent, PhaseCorrected, Sudden };

std::string_view to_string(PulseMode mode);
/// Accepts coherent / noncoherent / phase-corrected / sudden.
PulseMode parse_pulse_mode(std::string_view text);

struct PulseSpec {
  double rabi = 0.0;   // Omega
  double t0 = 0.0;     // start time
  double tau = 0.0;    // duration
  double phase = 0.0;  // phi (Coherent, PhaseCorrected) or phi0 (NonCoherent)
  PulseMode mode = PulseMode::Coherent;
  double area = 0.0;   // alpha = lim V tau, Sudden mode only

  /// alpha = Omega tau / 2 in the resonant modes, `area` in Sudden mode.
  double pulse_area() const;

  /// Checks finiteness, Omega >= 0 and tau >= 0; returns a copy with the
  /// phase wrapped to (-pi, pi]. Throws std::invalid_argument.
  PulseSpec validated() const;
};

struct TwoLevelState {
  Amplitude ck{};
  Amplitude cp{};
};

double probability(const TwoLevelState& s);

/// Pulse cut from the reference oscillation. With C_p(t0) = 0 the exact
/// solution is used:
///   C_k = C_k(t0) cos(alpha) e^{-i E_k tau}
///   C_p = C_k(t0) sin(alpha) e^{i(pi/2 - phi)} e^{i E_k t0} e^{-i E_p (t0 + tau)}
/// so an init with natural phase e^{-i E_k t0} ends with natural phases on
/// both levels. A populated C_p(t0) is integrated numerically instead.
TwoLevelState evolve_coherent(const TwoLevelSystem& sys, const PulseSpec& pulse,
                              const TwoLevelState& init);

/// Pulse whose phase phi0 is referenced to its own start time. The newborn
/// amplitude keeps the parent's history:
///   C_p = C_k(t0) sin(alpha) e^{i(pi/2 - phi0)} e^{-i E_p tau}
TwoLevelState evolve_noncoherent(const TwoLevelSystem& sys, const PulseSpec& pulse,
                                 const TwoLevelState& init);

/// Non-coherent pulse with phi0 = phi + omega_pk t0, which reproduces the
/// coherent result. `pulse.phase` is the desired phi.
TwoLevelState evolve_phase_corrected(const TwoLevelSystem& sys, const PulseSpec& pulse,
                                     const TwoLevelState& init);

/// Sudden square pulse, V -> inf, tau -> 0, V tau -> alpha. Instantaneous:
/// C_k' = cos(a) C_k + i sin(a) C_p, C_p' = i sin(a) C_k + cos(a) C_p.
TwoLevelState evolve_sudden(const TwoLevelState& init, double area);

/// Dispatch on pulse.mode.
TwoLevelState evolve(const TwoLevelSystem& sys, const PulseSpec& pulse, const TwoLevelState& init);

/// Fixed-step classical RK4 integration of the amplitude equations from t0 to
/// t0 + tau. The step is shrunk so an integer number of steps spans tau.
/// Not defined for Sudden pulses. Throws std::invalid_argument for step <= 0.
TwoLevelState integrate_ode(const TwoLevelSystem& sys, const PulseSpec& pulse,
                            const TwoLevelState& init, double step);

/// integrate_ode with step tau / 1000.
TwoLevelState integrate_ode(const TwoLevelSystem& sys, const PulseSpec& pulse,
                            const TwoLevelState& init);

}  // namespace phaseshor
