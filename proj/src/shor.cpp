#include "phaseshor/shor.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "phaseshor/format.hpp"

namespace phaseshor {

namespace {

constexpr int kFactoredNumber = 4;
constexpr int kBase = 3;

int pow_mod(int base, int exponent, int modulus) {
  int result = 1 % modulus;
  int b = base % modulus;
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result = result * b % modulus;
    b = b * b % modulus;
  }
  return result;
}

bool nontrivial_factor(int f) { return f != 1 && f != kFactoredNumber; }

nlohmann::json rounded(const std::array<double, kRegisterStates>& values) {
  auto j = nlohmann::json::array();
  for (double v : values) j.push_back(round_significant(v));
  return j;
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

ConditionResidual check_condition(const EnergySpectrum& spectrum, const DelaySchedule& delays,
                                  double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_condition: tolerance must be positive");
  delays.validate();
  const auto& E = spectrum;
  ConditionResidual r;
  r.delta1 = wrap_phase((E(2, 0) - E(0, 0)) * delays.tau1 + (E(2, 1) - E(0, 1)) * delays.tau2);
  r.delta2 = wrap_phase((E(3, 0) - E(1, 0)) * delays.tau1 + (E(3, 3) - E(1, 3)) * delays.tau2);
  r.satisfied = std::abs(r.delta1) <= tol && std::abs(r.delta2) <= tol;
  return r;
}

bool matches_ideal_distribution(const std::array<double, kRegisterStates>& distribution,
                                double tol) {
  for (std::size_t x = 0; x < distribution.size(); ++x) {
    if (std::abs(distribution[x] - kIdealDistribution[x]) > tol) return false;
  }
  return true;
}

std::string_view to_string(PeriodStatus status) {
  switch (status) {
    case PeriodStatus::Found:
      return "found";
    case PeriodStatus::Uninformative:
      return "uninformative";
    case PeriodStatus::NotDivisor:
      return "not-divisor";
  }
  return "unknown";
}

PeriodExtraction extract_period(int measured_x, int register_states) {
  if (register_states <= 0) throw std::invalid_argument("extract_period: D must be positive");
  if (measured_x < 0 || measured_x >= register_states) {
    throw std::invalid_argument("extract_period: measured x outside [0, D-1]");
  }
  if (measured_x == 0) return {PeriodStatus::Uninformative, std::nullopt};
  if (register_states % measured_x != 0) return {PeriodStatus::NotDivisor, std::nullopt};
  return {PeriodStatus::Found, register_states / measured_x};
}

std::optional<int> factor_from_period(int period) {
  if (period <= 0 || period % 2 != 0) return std::nullopt;
  // gcd(z -/+ 1, N) depends only on z mod N.
  const int z = pow_mod(kBase, period / 2, kFactoredNumber);
  for (int candidate : {z - 1, z + 1}) {
    const int f = std::gcd((candidate % kFactoredNumber + kFactoredNumber) % kFactoredNumber,
                           kFactoredNumber);
    if (nontrivial_factor(f)) return f;
  }
  return std::nullopt;
}

RunReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  RunReport report;
  report.config = config;
  report.final_state = run_pipeline(config);
  report.x_distribution = measure_x_distribution(report.final_state);
  report.residuals = check_condition(config.spectrum, config.delays, config.tolerance);

  const int max_attempts = 1 + config.retry_cap;
  for (int k = 0; k < max_attempts; ++k) {
    report.attempts = k + 1;
    report.measured_x = sample_x(report.final_state, config.seed + static_cast<std::uint64_t>(k));
    if (report.measured_x != 0) break;
  }

  const PeriodExtraction extraction = extract_period(report.measured_x);
  report.period_status = extraction.status;
  report.period = extraction.period;
  if (report.period) report.factor = factor_from_period(*report.period);

  switch (extraction.status) {
    case PeriodStatus::Uninformative:
      report.diagnostic = "measured x = 0 on all " + std::to_string(report.attempts) +
                          " draws; retry cap exhausted";
      break;
    case PeriodStatus::NotDivisor:
      report.diagnostic = "measured x = " + std::to_string(report.measured_x) +
                          " does not divide D = 4; period extraction failed";
      break;
    case PeriodStatus::Found:
      if (!report.factor) {
        report.diagnostic =
            "period " + std::to_string(*report.period) + " yields no nontrivial factor";
      }
      break;
  }
  return report;
}

std::vector<RunReport> sweep(const std::vector<ExperimentConfig>& grid) {
  std::vector<RunReport> reports;
  reports.reserve(grid.size());
  for (const auto& config : grid) {
    try {
      reports.push_back(run_experiment(config));
    } catch (const std::exception& e) {
      RunReport failed;
      failed.config = config;
      failed.failed = true;
      failed.diagnostic = e.what();
      reports.push_back(std::move(failed));
    }
  }
  return reports;
}

double AxisRange::at(int i) const {
  if (count <= 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::vector<DelayGridRow> sweep_delays(const EnergySpectrum& spectrum, const AxisRange& tau1,
                                       const AxisRange& tau2, PipelineMode mode, double tol) {
  if (tau1.count < 1 || tau2.count < 1) {
    throw std::invalid_argument("sweep_delays: grid counts must be >= 1");
  }
  const std::size_t rows = static_cast<std::size_t>(tau1.count) * tau2.count;
  std::vector<DelayGridRow> out(rows);

  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const int i = static_cast<int>(r / tau2.count);
      const int j = static_cast<int>(r % tau2.count);
      DelayGridRow& row = out[r];
      row.tau1 = tau1.at(i);
      row.tau2 = tau2.at(j);
      const DelaySchedule delays{row.tau1, row.tau2};
      row.residuals = check_condition(spectrum, delays, tol);
      const StateVector final_state = run_pipeline(mode, spectrum, delays);
      row.probabilities = measure_x_distribution(final_state);
      row.amp11_modulus = std::abs(amplitude_of(final_state, 1, 1));
    }
  };

  // Validate up front so worker threads never throw.
  DelaySchedule{tau1.at(0), tau2.at(0)}.validate();
  DelaySchedule{tau1.at(tau1.count - 1), tau2.at(tau2.count - 1)}.validate();

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, (rows + 255) / 256);
  std::vector<std::future<void>> jobs;
  const std::size_t chunk = (rows + workers - 1) / workers;
  for (std::size_t begin = 0; begin < rows; begin += chunk) {
    jobs.push_back(std::async(std::launch::async, fill, begin, std::min(rows, begin + chunk)));
  }
  for (auto& job : jobs) job.get();
  return out;
}

void to_json(nlohmann::json& j, const ConditionResidual& r) {
  j = nlohmann::json{{"delta1", round_significant(r.delta1)},
                     {"delta2", round_significant(r.delta2)},
                     {"satisfied", r.satisfied}};
}

void to_json(nlohmann::json& j, const RunReport& report) {
  j = nlohmann::json{{"config", report.config},
                     {"failed", report.failed},
                     {"final_state", report.final_state},
                     {"x_distribution", rounded(report.x_distribution)},
                     {"residuals", report.residuals},
                     {"measured_x", report.measured_x},
                     {"attempts", report.attempts},
                     {"period_status", to_string(report.period_status)},
                     {"period", optional_json(report.period)},
                     {"factor", optional_json(report.factor)},
                     {"diagnostic", optional_json(report.diagnostic)}};
}

void to_json(nlohmann::json& j, const DelayGridRow& row) {
  j = nlohmann::json{{"tau1", row.tau1},
                     {"tau2", row.tau2},
                     {"delta1", round_significant(row.residuals.delta1)},
                     {"delta2", round_significant(row.residuals.delta2)},
                     {"satisfied", row.residuals.satisfied},
                     {"p0", round_significant(row.probabilities[0])},
                     {"p1", round_significant(row.probabilities[1])},
                     {"p2", round_significant(row.probabilities[2])},
                     {"p3", round_significant(row.probabilities[3])},
                     {"amp11_mod", round_significant(row.amp11_modulus)}};
}

}  // namespace phaseshor
