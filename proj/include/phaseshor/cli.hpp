#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "phaseshor/pulses.hpp"
#include "phaseshor/shor.hpp"

namespace phaseshor::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,  // bad flags, malformed config, unwritable output
  kNoFactor = 2,    // shor-demo ran but produced no factor
};

/// Fixed CSV header of sweep output.
inline constexpr const char* kSweepCsvHeader =
    "tau1,tau2,delta1,delta2,satisfied,p0,p1,p2,p3,amp11_mod";
/// Fixed CSV header of shor-demo output.
inline constexpr const char* kReportCsvHeader =
    "mode,tau1,tau2,delta1,delta2,satisfied,p0,p1,p2,p3,amp11_mod,measured_x,attempts,period,"
    "factor";
/// Fixed CSV header of pulse output.
inline constexpr const char* kPulseCsvHeader =
    "mode,ck_mod,ck_phase,cp_mod,cp_phase,probability,ode_max_diff,phase_error,"
    "expected_phase_error";
/// Fixed CSV header of check-condition output.
inline constexpr const char* kConditionCsvHeader = "tau1,tau2,delta1,delta2,satisfied";

std::string format_report_csv(const RunReport& report);
std::string format_sweep_csv(const std::vector<DelayGridRow>& rows);

/// Outcome of the `pulse` subcommand before formatting.
struct PulseReport {
  TwoLevelSystem system;
  PulseSpec pulse;
  TwoLevelState initial;
  TwoLevelState final_state;
  /// max |closed form - RK4| over both amplitudes; absent for sudden pulses.
  std::optional<double> ode_max_diff;
  /// | |C_k|^2 + |C_p|^2 - 1 | on the RK4 path.
  std::optional<double> ode_probability_drift;
  /// arg C_p relative to the coherent pulse with the same parameters
  /// (non-coherent and phase-corrected modes).
  std::optional<double> phase_error;
  std::optional<double> expected_phase_error;
};

PulseReport run_pulse(const TwoLevelSystem& system, const PulseSpec& pulse,
                      std::optional<double> ode_step);

/// Entry point. args[0] is the program name. All stdout text is written to
/// `out` in one piece when the command finishes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phaseshor::cli
