#pragma once

// Experiment configuration and its key-value file format:
//
//   # comment
//   mode          = free-evolution | natural-phase
//   tau1          = <real >= 0>
//   tau2          = <real >= 0>
//   omega         = w0, w1, w2, w3         (additive spectrum, qubit order n0 n1 m0 m1)
//   energies      = E_0, ..., E_15         (explicit table, index 4m + n)
//   seed          = <unsigned integer>
//   retry_cap     = <integer >= 1>
//   tolerance     = <real > 0>
//   output_format = json | csv
//
// Keys may appear in any order; a later line overrides an earlier one and
// `omega`/`energies` override each other. Unset keys keep their defaults.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "phaseshor/statevec.hpp"
#include "phaseshor/transforms.hpp"

namespace phaseshor {

enum class OutputFormat { Json, Csv };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

/// Name of the environment variable selecting the default output format.
inline constexpr const char* kOutputFormatEnv = "PHASESHOR_OUTPUT_FORMAT";

/// Format from kOutputFormatEnv, Json when unset. An unrecognised value
/// throws std::invalid_argument.
OutputFormat default_output_format();

/// Malformed configuration text. what() is anchored as "source:line: message".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);

  int line() const { return line_; }

 private:
  int line_;
};

inline constexpr int kDefaultRetryCap = 16;
inline constexpr double kDefaultConditionTolerance = 1e-9;

struct ExperimentConfig {
  PipelineMode mode = PipelineMode::FreeEvolution;
  DelaySchedule delays;
  /// Set when the spectrum came from qubit frequencies; kept so the config
  /// serializes back in the same form.
  std::optional<std::array<double, 4>> qubit_frequencies = kDefaultQubitFrequencies;
  EnergySpectrum spectrum = default_spectrum();
  std::uint64_t seed = 0;
  int retry_cap = kDefaultRetryCap;
  double tolerance = kDefaultConditionTolerance;
  OutputFormat output_format = OutputFormat::Json;

  void set_qubit_frequencies(const std::array<double, 4>& omega);
  void set_energies(const EnergySpectrum& table);

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
};

/// Parses key-value text. Throws ConfigError.
ExperimentConfig parse_config(std::istream& in, const std::string& source_name,
                              ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// Emits text that parse_config reads back to an identical config.
std::string serialize_config(const ExperimentConfig& config);

/// Runs the pipeline selected by the config.
StateVector run_pipeline(const ExperimentConfig& config);

void to_json(nlohmann::json& j, const ExperimentConfig& config);

}  // namespace phaseshor
