#pragma once

// Period finding and factoring of N = 4 with base 3, interference-condition
// checks, and parameter sweeps over the delays.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "phaseshor/config.hpp"
#include "phaseshor/statevec.hpp"
#include "phaseshor/transforms.hpp"

namespace phaseshor {

/// Phase mismatches of the like terms that must interfere, wrapped to (-pi, pi]:
///   delta1 = (E20 - E00) tau1 + (E21 - E01) tau2
///   delta2 = (E30 - E10) tau1 + (E33 - E13) tau2
/// The ideal outcome survives the delays iff both vanish mod 2 pi.
struct ConditionResidual {
  double delta1 = 0.0;
  double delta2 = 0.0;
  bool satisfied = true;
};

/// Throws std::invalid_argument unless tol > 0 and the delays are valid.
ConditionResidual check_condition(const EnergySpectrum& spectrum, const DelaySchedule& delays,
                                  double tol = kDefaultConditionTolerance);

/// Ideal x-distribution of the undisturbed algorithm: {0.5, 0, 0.5, 0}.
inline constexpr std::array<double, kRegisterStates> kIdealDistribution{0.5, 0.0, 0.5, 0.0};

/// max_x |P(x) - ideal(x)| <= tol.
bool matches_ideal_distribution(const std::array<double, kRegisterStates>& distribution,
                                double tol);

enum class PeriodStatus {
  Found,          // period = D / x
  Uninformative,  // x = 0 carries no period information
  NotDivisor,     // x does not divide D; only reachable when interference is broken
};

std::string_view to_string(PeriodStatus status);

struct PeriodExtraction {
  PeriodStatus status = PeriodStatus::Uninformative;
  std::optional<int> period;
};

/// T = D / x. Throws std::invalid_argument unless D > 0 and 0 <= x < D.
PeriodExtraction extract_period(int measured_x, int register_states = kRegisterStates);

/// z = 3^(T/2); first nontrivial of gcd(z - 1, 4), gcd(z + 1, 4). Absent for
/// odd or non-positive T, or when both gcds are trivial.
std::optional<int> factor_from_period(int period);

struct RunReport {
  ExperimentConfig config;
  StateVector final_state;
  std::array<double, kRegisterStates> x_distribution{};
  ConditionResidual residuals;
  int measured_x = 0;
  /// Number of draws used, 1 + number of resamples after x = 0.
  int attempts = 0;
  PeriodStatus period_status = PeriodStatus::Uninformative;
  std::optional<int> period;
  std::optional<int> factor;
  /// Set when no factor was produced, or when the config was rejected.
  std::optional<std::string> diagnostic;
  /// True when the run was aborted by an invalid config (sweep only).
  bool failed = false;
};

/// Deterministic given config.seed. Draw k uses seed + k; x = 0 draws are
/// resampled up to config.retry_cap times. Throws std::invalid_argument for
/// an invalid config.
RunReport run_experiment(const ExperimentConfig& config);

/// One report per config, in order. Errors are recorded in the report
/// (failed + diagnostic) rather than thrown.
std::vector<RunReport> sweep(const std::vector<ExperimentConfig>& grid);

/// Inclusive linear grid; count == 1 yields just `min`.
struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  double at(int i) const;
};

struct DelayGridRow {
  double tau1 = 0.0;
  double tau2 = 0.0;
  ConditionResidual residuals;
  std::array<double, kRegisterStates> probabilities{};
  double amp11_modulus = 0.0;
};

/// Rows in row-major order, tau1 outer. Rows are independent and computed
/// in parallel.
std::vector<DelayGridRow> sweep_delays(const EnergySpectrum& spectrum, const AxisRange& tau1,
                                       const AxisRange& tau2,
                                       PipelineMode mode = PipelineMode::FreeEvolution,
                                       double tol = kDefaultConditionTolerance);

void to_json(nlohmann::json& j, const ConditionResidual& r);
void to_json(nlohmann::json& j, const RunReport& report);
void to_json(nlohmann::json& j, const DelayGridRow& row);

}  // namespace phaseshor
