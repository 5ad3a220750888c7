#pragma once

// The three instantaneous transformations of period finding for N = 4
// (superposition, y = 3^x mod 4, DFT of the x-register) and the pipelines
// that interleave them with free evolution.

#include <string_view>

#include "phaseshor/statevec.hpp"

namespace phaseshor {

enum class PipelineMode {
  FreeEvolution,  // amplitudes keep their history phases between transformations
  NaturalPhase,   // every newborn amplitude carries exp(-i E_mn t), as with coherent pulses
};

std::string_view to_string(PipelineMode mode);
/// Accepts "free-evolution" / "natural-phase"; throws std::invalid_argument otherwise.
PipelineMode parse_pipeline_mode(std::string_view text);

/// Delay tau1 between superposition and modular exponentiation, tau2 between
/// modular exponentiation and the DFT.
struct DelaySchedule {
  double tau1 = 0.0;
  double tau2 = 0.0;

  /// Throws std::invalid_argument unless both delays are finite and >= 0.
  void validate() const;
};

/// Hadamard on each x-qubit, identity on y. Maps |0,0> to (1/2) sum_m |m,0>.
StateVector superpose_x(const StateVector& state);

/// 3^x mod 4 for x in [0,3]; throws std::invalid_argument otherwise.
int mod_exp_classical(int x);

/// |m,0> -> |m, 3^m mod 4>, phases carried along unchanged. Only defined on
/// the y = 0 slice: any weight on y != 0 throws std::invalid_argument.
StateVector apply_mod_exp(const StateVector& state);

/// |x,n> -> (1/2) sum_k exp(2 pi i k x / 4) |k,n> for every n.
StateVector dft_x(const StateVector& state);

/// Everything after the superposition step in the free-evolution pipeline:
/// free_evolve(tau1) -> apply_mod_exp -> free_evolve(tau2) -> dft_x.
/// `after_superposition` need not be normalized, so restricted initial
/// superpositions can be used to isolate individual history chains.
StateVector evolve_after_superposition(const StateVector& after_superposition,
                                       const EnergySpectrum& spectrum, const DelaySchedule& delays);

/// Full pipeline starting from |0,0>. The clock only advances during free
/// evolution, so the final time is tau1 + tau2.
StateVector run_pipeline(PipelineMode mode, const EnergySpectrum& spectrum,
                         const DelaySchedule& delays);

}  // namespace phaseshor
