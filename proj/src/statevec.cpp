#include "phaseshor/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace phaseshor {

namespace {

constexpr double kNormalizationTolerance = 1e-9;

void require_normalized(const StateVector& state, const char* what) {
  const double n = norm(state);
  if (std::abs(n - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument(std::string(what) + ": state is not normalized (norm = " +
                                std::to_string(n) + ")");
  }
}

void require_register_value(int v, const char* name) {
  if (v < 0 || v >= kRegisterStates) {
    throw std::out_of_range(std::string(name) + " = " + std::to_string(v) +
                            " outside register range [0,3]");
  }
}

}  // namespace

BasisLabel BasisLabel::from_index(std::size_t index) {
  if (index >= kDim) {
    throw std::out_of_range("basis index " + std::to_string(index) + " >= 16");
  }
  return {static_cast<int>(index / kRegisterStates), static_cast<int>(index % kRegisterStates)};
}

BasisLabel BasisLabel::from_bits(int m1, int m0, int n1, int n0) {
  for (int b : {m1, m0, n1, n0}) {
    if (b != 0 && b != 1) throw std::invalid_argument("qubit occupation must be 0 or 1");
  }
  return {m0 + 2 * m1, n0 + 2 * n1};
}

std::size_t BasisLabel::index() const {
  require_register_value(m, "m");
  require_register_value(n, "n");
  return static_cast<std::size_t>(kRegisterStates * m + n);
}

std::array<int, 4> BasisLabel::bits() const { return {m >> 1, m & 1, n >> 1, n & 1}; }

StateVector::StateVector(const Storage& amps) : amps_(amps) {
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("state vector amplitude is not finite");
    }
  }
}

EnergySpectrum::EnergySpectrum(const Table& energies) : energies_(energies) {
  for (double e : energies_) {
    if (!std::isfinite(e)) throw std::invalid_argument("energy is not finite");
  }
}

EnergySpectrum EnergySpectrum::additive(const std::array<double, 4>& qubit_frequencies) {
  Table t{};
  for (std::size_t idx = 0; idx < kDim; ++idx) {
    for (std::size_t bit = 0; bit < 4; ++bit) {
      if (idx & (std::size_t{1} << bit)) t[idx] += qubit_frequencies[bit];
    }
  }
  return EnergySpectrum(t);
}

double EnergySpectrum::operator()(int m, int n) const {
  return energies_[BasisLabel{m, n}.index()];
}

EnergySpectrum default_spectrum() { return EnergySpectrum::additive(kDefaultQubitFrequencies); }

StateVector init_ground() {
  StateVector s;
  s[0] = 1.0;
  return s;
}

StateVector free_evolve(const StateVector& state, const EnergySpectrum& spectrum, double dt) {
  if (!std::isfinite(dt) || dt < 0.0) {
    throw std::invalid_argument("free_evolve: time step must be finite and non-negative");
  }
  StateVector out;
  for (std::size_t i = 0; i < kDim; ++i) {
    out[i] = state[i] * std::polar(1.0, -spectrum[i] * dt);
  }
  return out;
}

double norm(const StateVector& state) {
  double sum = 0.0;
  for (const auto& a : state.amplitudes()) sum += std::norm(a);
  return std::sqrt(sum);
}

std::array<double, kRegisterStates> measure_x_distribution(const StateVector& state) {
  require_normalized(state, "measure_x_distribution");
  std::array<double, kRegisterStates> p{};
  for (std::size_t i = 0; i < kDim; ++i) p[i / kRegisterStates] += std::norm(state[i]);
  return p;
}

int sample_x(const StateVector& state, std::uint64_t seed) {
  const auto p = measure_x_distribution(state);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> dist(p.begin(), p.end());
  return dist(rng);
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  Amplitude best{};
  for (std::size_t i = 0; i < kDim; ++i) {
    const Amplitude overlap = a[i] * std::conj(b[i]);
    if (std::abs(overlap) > std::abs(best)) best = overlap;
  }
  const Amplitude rotation = std::abs(best) > 0.0 ? best / std::abs(best) : Amplitude{1.0};
  double dist2 = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) dist2 += std::norm(a[i] - rotation * b[i]);
  return std::sqrt(dist2) <= tol;
}

Amplitude amplitude_of(const StateVector& state, int m, int n) {
  return state[BasisLabel{m, n}];
}

double wrap_phase(double angle) {
  constexpr double pi = std::numbers::pi;
  double r = std::remainder(angle, 2.0 * pi);  // [-pi, pi]
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

void to_json(nlohmann::json& j, const StateVector& state) {
  j = nlohmann::json::array();
  for (const auto& a : state.amplitudes()) j.push_back({a.real(), a.imag()});
}

void from_json(const nlohmann::json& j, StateVector& state) {
  if (!j.is_array() || j.size() != kDim) {
    throw std::invalid_argument("state vector JSON must be an array of 16 [re, im] pairs");
  }
  StateVector::Storage amps{};
  for (std::size_t i = 0; i < kDim; ++i) {
    const auto& pair = j[i];
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("state vector entry " + std::to_string(i) + " is not [re, im]");
    }
    amps[i] = {pair[0].get<double>(), pair[1].get<double>()};
  }
  state = StateVector(amps);
}

void to_json(nlohmann::json& j, const EnergySpectrum& spectrum) { j = spectrum.table(); }

void from_json(const nlohmann::json& j, EnergySpectrum& spectrum) {
  if (!j.is_array() || j.size() != kDim) {
    throw std::invalid_argument("spectrum JSON must be an array of 16 numbers");
  }
  EnergySpectrum::Table t{};
  for (std::size_t i = 0; i < kDim; ++i) t[i] = j[i].get<double>();
  spectrum = EnergySpectrum(t);
}

}  // namespace phaseshor
