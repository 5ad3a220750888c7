#pragma once

// Four-qubit state register |m,n> (x-register m, y-register n), energy
// spectrum and free Schroedinger evolution. Units: hbar = 1, energies are
// angular frequencies.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

#include "json.hpp"

namespace phaseshor {

using Amplitude = std::complex<double>;

inline constexpr int kRegisterStates = 4;  // states per 2-qubit register (D)
inline constexpr std::size_t kDim = 16;    // 4 x 4 product space

/// Label |m,n> of a basis state, m = m0 + 2 m1 (x-register), n = n0 + 2 n1
/// (y-register). Flat index is 4m + n, so bit i of the index is qubit i in
/// the order (n0, n1, m0, m1).
struct BasisLabel {
  int m = 0;
  int n = 0;

  static BasisLabel from_index(std::size_t index);
  static BasisLabel from_bits(int m1, int m0, int n1, int n0);

  std::size_t index() const;
  /// Qubit occupations as {m1, m0, n1, n0}.
  std::array<int, 4> bits() const;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

class StateVector {
 public:
  using Storage = std::array<Amplitude, kDim>;

  /// The zero vector (not a physical state; used as an accumulator).
  StateVector() = default;
  explicit StateVector(const Storage& amps);

  const Amplitude& operator[](std::size_t index) const { return amps_[index]; }
  Amplitude& operator[](std::size_t index) { return amps_[index]; }
  const Amplitude& operator[](BasisLabel label) const { return amps_[label.index()]; }
  Amplitude& operator[](BasisLabel label) { return amps_[label.index()]; }

  std::span<const Amplitude, kDim> amplitudes() const { return amps_; }

 private:
  Storage amps_{};
};

/// Table of the 16 energies E_mn in index order 4m + n.
class EnergySpectrum {
 public:
  using Table = std::array<double, kDim>;

  EnergySpectrum() = default;  // all zero
  explicit EnergySpectrum(const Table& energies);

  /// Additive qubit model: E = sum_i omega[i] * bit_i(index), with bit order
  /// (n0, n1, m0, m1) as in BasisLabel.
  static EnergySpectrum additive(const std::array<double, 4>& qubit_frequencies);

  double operator()(int m, int n) const;
  double operator[](std::size_t index) const { return energies_[index]; }
  const Table& table() const { return energies_; }

 private:
  Table energies_{};
};

inline constexpr std::array<double, 4> kDefaultQubitFrequencies{1.0, 2.3, 3.7, 5.1};

/// Additive spectrum with incommensurate frequencies kDefaultQubitFrequencies.
EnergySpectrum default_spectrum();

/// |0,0> with amplitude 1.
StateVector init_ground();

/// Multiply each amplitude of |m,n> by exp(-i E_mn dt). Throws
/// std::invalid_argument for negative or non-finite dt.
StateVector free_evolve(const StateVector& state, const EnergySpectrum& spectrum, double dt);

double norm(const StateVector& state);

/// P(x = m) = sum_n |<m,n|psi>|^2. The state must be normalized within 1e-9.
std::array<double, kRegisterStates> measure_x_distribution(const StateVector& state);

/// Draw x from measure_x_distribution with a mt19937_64 seeded by `seed`.
int sample_x(const StateVector& state, std::uint64_t seed);

/// True iff ||a - e^{i theta} b|| <= tol, with theta the phase of the
/// largest-modulus component of the overlap a_i * conj(b_i).
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);

/// Amplitude of |m,n>; throws std::out_of_range for m or n outside [0,3].
Amplitude amplitude_of(const StateVector& state, int m, int n);

/// Wrap an angle into (-pi, pi].
double wrap_phase(double angle);

// JSON: state -> [[re, im], ...] (16 pairs), spectrum -> [E_0, ..., E_15].
void to_json(nlohmann::json& j, const StateVector& state);
void from_json(const nlohmann::json& j, StateVector& state);
void to_json(nlohmann::json& j, const EnergySpectrum& spectrum);
void from_json(const nlohmann::json& j, EnergySpectrum& spectrum);

}  // namespace phaseshor
