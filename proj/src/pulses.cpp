#include "phaseshor/pulses.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace phaseshor {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kDefaultStepsPerPulse = 1000.0;

void require_mode(const PulseSpec& pulse, PulseMode expected, const char* op) {
  if (pulse.mode != expected) {
    throw std::invalid_argument(std::string(op) + ": pulse mode is " +
                                std::string(to_string(pulse.mode)) + ", expected " +
                                std::string(to_string(expected)));
  }
}

// phi0 that makes a pulse started at t0 line up with the reference oscillation.
double corrected_start_phase(const TwoLevelSystem& sys, const PulseSpec& pulse) {
  return wrap_phase(pulse.phase + sys.transition_frequency() * pulse.t0);
}

// Phase theta(t) of the drive term e^{i theta} |k><p|.
double drive_phase(const TwoLevelSystem& sys, const PulseSpec& pulse, double t) {
  const double w = sys.transition_frequency();
  switch (pulse.mode) {
    case PulseMode::Coherent:
      return w * t + pulse.phase;
    case PulseMode::NonCoherent:
      return w * (t - pulse.t0) + pulse.phase;
    case PulseMode::PhaseCorrected:
      return w * (t - pulse.t0) + corrected_start_phase(sys, pulse);
    case PulseMode::Sudden:
      break;
  }
  throw std::invalid_argument("drive phase is undefined for sudden pulses");
}

using Amplitudes = std::array<Amplitude, 2>;

Amplitudes rhs(const TwoLevelSystem& sys, const PulseSpec& pulse, double t, const Amplitudes& c) {
  constexpr Amplitude minus_i{0.0, -1.0};
  const Amplitude drive = 0.5 * pulse.rabi * std::polar(1.0, drive_phase(sys, pulse, t));
  return {minus_i * (sys.energy_k * c[0] - drive * c[1]),
          minus_i * (sys.energy_p * c[1] - std::conj(drive) * c[0])};
}

Amplitudes axpy(const Amplitudes& y, double h, const Amplitudes& k) {
  return {y[0] + h * k[0], y[1] + h * k[1]};
}

}  // namespace

std::string_view to_string(PulseMode mode) {
  switch (mode) {
    case PulseMode::Coherent:
      return "coherent";
    case PulseMode::NonCoherent:
      return "noncoherent";
    case PulseMode::PhaseCorrected:
      return "phase-corrected";
    case PulseMode::Sudden:
      return "sudden";
  }
  return "unknown";
}

PulseMode parse_pulse_mode(std::string_view text) {
  if (text == "coherent") return PulseMode::Coherent;
  if (text == "noncoherent" || text == "non-coherent") return PulseMode::NonCoherent;
  if (text == "phase-corrected") return PulseMode::PhaseCorrected;
  if (text == "sudden") return PulseMode::Sudden;
  throw std::invalid_argument("unknown pulse mode '" + std::string(text) + "'");
}

double PulseSpec::pulse_area() const {
  return mode == PulseMode::Sudden ? area : 0.5 * rabi * tau;
}

PulseSpec PulseSpec::validated() const {
  for (double v : {rabi, t0, tau, phase, area}) {
    if (!std::isfinite(v)) throw std::invalid_argument("pulse parameters must be finite");
  }
  if (rabi < 0.0) throw std::invalid_argument("Rabi frequency must be non-negative");
  if (tau < 0.0) throw std::invalid_argument("pulse duration must be non-negative");
  PulseSpec out = *this;
  out.phase = wrap_phase(phase);
  return out;
}

double probability(const TwoLevelState& s) { return std::norm(s.ck) + std::norm(s.cp); }

TwoLevelState evolve_coherent(const TwoLevelSystem& sys, const PulseSpec& pulse,
                              const TwoLevelState& init) {
  require_mode(pulse, PulseMode::Coherent, "evolve_coherent");
  const PulseSpec p = pulse.validated();
  if (init.cp != Amplitude{}) return integrate_ode(sys, p, init);

  const double alpha = p.pulse_area();
  const double t_end = p.t0 + p.tau;
  return {init.ck * std::cos(alpha) * std::polar(1.0, -sys.energy_k * p.tau),
          init.ck * std::sin(alpha) *
              std::polar(1.0, kHalfPi - p.phase + sys.energy_k * p.t0 - sys.energy_p * t_end)};
}

TwoLevelState evolve_noncoherent(const TwoLevelSystem& sys, const PulseSpec& pulse,
                                 const TwoLevelState& init) {
  require_mode(pulse, PulseMode::NonCoherent, "evolve_noncoherent");
  const PulseSpec p = pulse.validated();
  if (init.cp != Amplitude{}) return integrate_ode(sys, p, init);

  const double alpha = p.pulse_area();
  return {init.ck * std::cos(alpha) * std::polar(1.0, -sys.energy_k * p.tau),
          init.ck * std::sin(alpha) * std::polar(1.0, kHalfPi - p.phase - sys.energy_p * p.tau)};
}

TwoLevelState evolve_phase_corrected(const TwoLevelSystem& sys, const PulseSpec& pulse,
                                     const TwoLevelState& init) {
  require_mode(pulse, PulseMode::PhaseCorrected, "evolve_phase_corrected");
  PulseSpec p = pulse.validated();
  if (init.cp != Amplitude{}) return integrate_ode(sys, p, init);

  p.mode = PulseMode::NonCoherent;
  p.phase = corrected_start_phase(sys, p);
  return evolve_noncoherent(sys, p, init);
}

TwoLevelState evolve_sudden(const TwoLevelState& init, double area) {
  if (!std::isfinite(area)) throw std::invalid_argument("sudden pulse area must be finite");
  const double c = std::cos(area);
  const Amplitude is{0.0, std::sin(area)};
  return {c * init.ck + is * init.cp, is * init.ck + c * init.cp};
}

TwoLevelState evolve(const TwoLevelSystem& sys, const PulseSpec& pulse,
                     const TwoLevelState& init) {
  switch (pulse.mode) {
    case PulseMode::Coherent:
      return evolve_coherent(sys, pulse, init);
    case PulseMode::NonCoherent:
      return evolve_noncoherent(sys, pulse, init);
    case PulseMode::PhaseCorrected:
      return evolve_phase_corrected(sys, pulse, init);
    case PulseMode::Sudden:
      return evolve_sudden(init, pulse.validated().area);
  }
  throw std::invalid_argument("evolve: unknown pulse mode");
}

TwoLevelState integrate_ode(const TwoLevelSystem& sys, const PulseSpec& pulse,
                            const TwoLevelState& init, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("integrate_ode: step must be positive");
  }
  const PulseSpec p = pulse.validated();
  if (p.mode == PulseMode::Sudden) {
    throw std::invalid_argument("integrate_ode: sudden pulses have no finite-time dynamics");
  }
  if (p.tau == 0.0) return init;

  const auto steps = static_cast<long>(std::ceil(p.tau / step));
  const double h = p.tau / static_cast<double>(steps);
  Amplitudes y{init.ck, init.cp};
  for (long i = 0; i < steps; ++i) {
    const double t = p.t0 + static_cast<double>(i) * h;
    const Amplitudes k1 = rhs(sys, p, t, y);
    const Amplitudes k2 = rhs(sys, p, t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const Amplitudes k3 = rhs(sys, p, t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const Amplitudes k4 = rhs(sys, p, t + h, axpy(y, h, k3));
    for (std::size_t j = 0; j < 2; ++j) {
      y[j] += (h / 6.0) * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
    }
  }
  return {y[0], y[1]};
}

TwoLevelState integrate_ode(const TwoLevelSystem& sys, const PulseSpec& pulse,
                            const TwoLevelState& init) {
  const double step = pulse.tau > 0.0 ? pulse.tau / kDefaultStepsPerPulse : 1.0;
  return integrate_ode(sys, pulse, init, step);
}

}  // namespace phaseshor
