#include "phaseshor/transforms.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace phaseshor {

namespace {

// Off-slice weight allowed by apply_mod_exp, as a modulus.
constexpr double kSliceTolerance = 1e-12;

// exp(2 pi i q / 4) for q = 0..3, exact.
constexpr Amplitude kQuarterTurns[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

}  // namespace

std::string_view to_string(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::FreeEvolution:
      return "free-evolution";
    case PipelineMode::NaturalPhase:
      return "natural-phase";
  }
  return "unknown";
}

PipelineMode parse_pipeline_mode(std::string_view text) {
  if (text == "free-evolution") return PipelineMode::FreeEvolution;
  if (text == "natural-phase") return PipelineMode::NaturalPhase;
  throw std::invalid_argument("unknown pipeline mode '" + std::string(text) +
                              "' (expected free-evolution or natural-phase)");
}

void DelaySchedule::validate() const {
  if (!std::isfinite(tau1) || tau1 < 0.0) {
    throw std::invalid_argument("tau1 must be finite and non-negative");
  }
  if (!std::isfinite(tau2) || tau2 < 0.0) {
    throw std::invalid_argument("tau2 must be finite and non-negative");
  }
}

StateVector superpose_x(const StateVector& state) {
  // H (x) H on (m1, m0): <k|H(x)H|m> = (-1)^popcount(k & m) / 2
  StateVector out;
  for (int k = 0; k < kRegisterStates; ++k) {
    for (int m = 0; m < kRegisterStates; ++m) {
      const double sign = (std::popcount(static_cast<unsigned>(k & m)) & 1) ? -0.5 : 0.5;
      for (int n = 0; n < kRegisterStates; ++n) {
        out[BasisLabel{k, n}] += sign * state[BasisLabel{m, n}];
      }
    }
  }
  return out;
}

int mod_exp_classical(int x) {
  if (x < 0 || x >= kRegisterStates) {
    throw std::invalid_argument("mod_exp_classical: x = " + std::to_string(x) +
                                " outside [0,3]");
  }
  int y = 1;
  for (int i = 0; i < x; ++i) y = (3 * y) % 4;
  return y;
}

StateVector apply_mod_exp(const StateVector& state) {
  double off_slice = 0.0;
  for (int m = 0; m < kRegisterStates; ++m) {
    for (int n = 1; n < kRegisterStates; ++n) off_slice += std::norm(state[BasisLabel{m, n}]);
  }
  if (std::sqrt(off_slice) > kSliceTolerance) {
    throw std::invalid_argument(
        "apply_mod_exp: y-register must be |0>; the map is undefined outside the y = 0 slice");
  }
  StateVector out;
  for (int m = 0; m < kRegisterStates; ++m) {
    out[BasisLabel{m, mod_exp_classical(m)}] = state[BasisLabel{m, 0}];
  }
  return out;
}

StateVector dft_x(const StateVector& state) {
  StateVector out;
  for (int k = 0; k < kRegisterStates; ++k) {
    for (int x = 0; x < kRegisterStates; ++x) {
      const Amplitude w = 0.5 * kQuarterTurns[(k * x) % 4];
      for (int n = 0; n < kRegisterStates; ++n) {
        out[BasisLabel{k, n}] += w * state[BasisLabel{x, n}];
      }
    }
  }
  return out;
}

StateVector evolve_after_superposition(const StateVector& after_superposition,
                                       const EnergySpectrum& spectrum,
                                       const DelaySchedule& delays) {
  delays.validate();
  StateVector s = free_evolve(after_superposition, spectrum, delays.tau1);
  s = apply_mod_exp(s);
  s = free_evolve(s, spectrum, delays.tau2);
  return dft_x(s);
}

StateVector run_pipeline(PipelineMode mode, const EnergySpectrum& spectrum,
                         const DelaySchedule& delays) {
  delays.validate();
  const StateVector superposed = superpose_x(init_ground());
  switch (mode) {
    case PipelineMode::FreeEvolution:
      return evolve_after_superposition(superposed, spectrum, delays);
    case PipelineMode::NaturalPhase: {
      // Zero spectrum leaves only the transformation-intrinsic phases; the
      // natural phase exp(-i E_mn t) is then attached at the final clock time.
      const StateVector intrinsic = evolve_after_superposition(superposed, EnergySpectrum{}, delays);
      return free_evolve(intrinsic, spectrum, delays.tau1 + delays.tau2);
    }
  }
  throw std::invalid_argument("run_pipeline: unknown mode");
}

}  // namespace phaseshor
