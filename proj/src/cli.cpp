#include "phaseshor/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "phaseshor/format.hpp"

namespace phaseshor::cli {

namespace {

// Phases of amplitudes smaller than this are reported as null.
constexpr double kPhaseFloor = 1e-12;

std::string num(double v) { return format_significant(v); }

std::string exact(double v) { return format_exact(v); }

template <typename T>
std::string opt_num(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return num(*v);
  } else {
    return std::to_string(*v);
  }
}

nlohmann::json amplitude_json(Amplitude a) {
  const double mod = std::abs(a);
  return {{"modulus", round_significant(mod)},
          {"phase", mod < kPhaseFloor ? nlohmann::json(nullptr)
                                      : nlohmann::json(round_significant(std::arg(a)))}};
}

nlohmann::json optional_rounded(const std::optional<double>& v) {
  return v ? nlohmann::json(round_significant(*v)) : nlohmann::json(nullptr);
}

// --omega / --energies / --spectrum-file, mutually exclusive.
struct SpectrumFlags {
  std::vector<double> omega;
  std::vector<double> energies;
  std::string file;
  CLI::Option* omega_opt = nullptr;
  CLI::Option* energies_opt = nullptr;
  CLI::Option* file_opt = nullptr;

  void attach(CLI::App& app) {
    omega_opt = app.add_option("--omega", omega,
                               "Qubit frequencies w0 w1 w2 w3 of the additive spectrum "
                               "(qubit order n0 n1 m0 m1)")
                    ->expected(4);
    energies_opt =
        app.add_option("--energies", energies, "Explicit 16-entry energy table, index 4m+n")
            ->expected(16);
    file_opt = app.add_option("--spectrum-file", file,
                              "JSON file holding an array of 16 energies, index 4m+n");
    omega_opt->excludes(energies_opt)->excludes(file_opt);
    energies_opt->excludes(file_opt);
  }

  bool given() const {
    return omega_opt->count() > 0 || energies_opt->count() > 0 || file_opt->count() > 0;
  }

  void apply(ExperimentConfig& config) const {
    if (omega_opt->count() > 0) {
      config.set_qubit_frequencies({omega[0], omega[1], omega[2], omega[3]});
    } else if (energies_opt->count() > 0) {
      EnergySpectrum::Table t{};
      std::copy(energies.begin(), energies.end(), t.begin());
      config.set_energies(EnergySpectrum(t));
    } else if (file_opt->count() > 0) {
      std::ifstream in(file);
      if (!in) throw std::invalid_argument("cannot open spectrum file '" + file + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("spectrum file '" + file + "': " + e.what());
      }
      config.set_energies(j.get<EnergySpectrum>());
    }
  }
};

// Common experiment flags; a flag given on the command line overrides the
// config file.
struct ExperimentFlags {
  std::string config_path;
  std::string mode;
  double tau1 = 0.0;
  double tau2 = 0.0;
  std::uint64_t seed = 0;
  int retry_cap = kDefaultRetryCap;
  double tolerance = kDefaultConditionTolerance;
  std::string format;
  SpectrumFlags spectrum;
  CLI::Option* config_opt = nullptr;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* tau1_opt = nullptr;
  CLI::Option* tau2_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* retry_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* format_opt = nullptr;

  void attach(CLI::App& app) {
    config_opt = app.add_option("--config", config_path, "Key-value experiment config file");
    mode_opt = app.add_option("--mode", mode, "free-evolution | natural-phase");
    tau1_opt = app.add_option("--tau1", tau1, "Delay between superposition and y(x)");
    tau2_opt = app.add_option("--tau2", tau2, "Delay between y(x) and the DFT");
    seed_opt = app.add_option("--seed", seed, "Measurement RNG seed");
    retry_opt = app.add_option("--retry-cap", retry_cap, "Resamples allowed after x = 0");
    tol_opt = app.add_option("--tolerance", tolerance, "Interference-condition tolerance");
    format_opt = app.add_option("--format", format, "json | csv");
    spectrum.attach(app);
  }

  ExperimentConfig resolve() const {
    ExperimentConfig base;
    base.output_format = default_output_format();
    ExperimentConfig c = config_opt->count() > 0 ? load_config(config_path, base) : base;
    if (mode_opt->count() > 0) c.mode = parse_pipeline_mode(mode);
    if (tau1_opt->count() > 0) c.delays.tau1 = tau1;
    if (tau2_opt->count() > 0) c.delays.tau2 = tau2;
    if (seed_opt->count() > 0) c.seed = seed;
    if (retry_opt->count() > 0) c.retry_cap = retry_cap;
    if (tol_opt->count() > 0) c.tolerance = tolerance;
    if (format_opt->count() > 0) c.output_format = parse_output_format(format);
    spectrum.apply(c);
    c.validate();
    return c;
  }
};

int cmd_shor_demo(const ExperimentFlags& flags, const std::string& write_config,
                  std::ostream& out) {
  const ExperimentConfig config = flags.resolve();
  if (!write_config.empty()) {
    std::ofstream f(write_config);
    f << "# phaseshor experiment config\n" << serialize_config(config);
    if (!f) throw std::invalid_argument("cannot write config to '" + write_config + "'");
  }
  const RunReport report = run_experiment(config);
  if (config.output_format == OutputFormat::Json) {
    out << nlohmann::json(report).dump(2) << '\n';
  } else {
    out << format_report_csv(report);
  }
  return report.factor ? kSuccess : kNoFactor;
}

struct PulseFlags {
  std::string mode = "coherent";
  double rabi = 0.0;
  double area = std::numbers::pi / 2.0;
  double duration = 1.0;
  double t0 = 0.0;
  double phase = std::numbers::pi / 2.0;
  double energy_k = 1.0;
  double energy_p = 3.0;
  double step = 0.0;
  std::string format;
  CLI::Option* rabi_opt = nullptr;
  CLI::Option* step_opt = nullptr;
  CLI::Option* format_opt = nullptr;

  void attach(CLI::App& app) {
    app.add_option("--mode", mode, "coherent | noncoherent | phase-corrected | sudden")
        ->capture_default_str();
    rabi_opt = app.add_option("--rabi", rabi, "Rabi frequency Omega (resonant modes)");
    auto* area_opt =
        app.add_option("--area", area, "Pulse area alpha (Omega tau / 2, or V tau when sudden)")
            ->capture_default_str();
    rabi_opt->excludes(area_opt);
    app.add_option("--duration", duration, "Pulse duration tau")->capture_default_str();
    app.add_option("--t0", t0, "Pulse start time")->capture_default_str();
    app.add_option("--phase", phase, "Pulse phase phi (or phi0 when noncoherent)")
        ->capture_default_str();
    app.add_option("--ek", energy_k, "Energy of the populated level |k>")->capture_default_str();
    app.add_option("--ep", energy_p, "Energy of the generated level |p>")->capture_default_str();
    step_opt = app.add_option("--step", step, "RK4 step (default duration / 1000)");
    format_opt = app.add_option("--format", format, "json | csv");
  }
};

int cmd_pulse(const PulseFlags& flags, std::ostream& out) {
  PulseSpec pulse;
  pulse.mode = parse_pulse_mode(flags.mode);
  pulse.t0 = flags.t0;
  pulse.phase = flags.phase;
  if (pulse.mode == PulseMode::Sudden) {
    pulse.area = flags.area;
  } else {
    pulse.tau = flags.duration;
    if (flags.rabi_opt->count() > 0) {
      pulse.rabi = flags.rabi;
    } else {
      if (!(flags.duration > 0.0)) {
        throw std::invalid_argument("--area needs a positive --duration");
      }
      pulse.rabi = 2.0 * flags.area / flags.duration;
    }
  }
  pulse = pulse.validated();

  std::optional<double> step;
  if (flags.step_opt->count() > 0) step = flags.step;
  const OutputFormat format = flags.format_opt->count() > 0 ? parse_output_format(flags.format)
                                                            : default_output_format();

  const TwoLevelSystem sys{flags.energy_k, flags.energy_p};
  const PulseReport r = run_pulse(sys, pulse, step);

  if (format == OutputFormat::Json) {
    nlohmann::json j{
        {"mode", to_string(r.pulse.mode)},
        {"system",
         {{"energy_k", sys.energy_k},
          {"energy_p", sys.energy_p},
          {"omega_pk", sys.transition_frequency()}}},
        {"pulse",
         {{"rabi", r.pulse.rabi},
          {"t0", r.pulse.t0},
          {"tau", r.pulse.tau},
          {"phase", r.pulse.phase},
          {"area", r.pulse.pulse_area()}}},
        {"initial", {{"ck", amplitude_json(r.initial.ck)}, {"cp", amplitude_json(r.initial.cp)}}},
        {"final",
         {{"ck", amplitude_json(r.final_state.ck)}, {"cp", amplitude_json(r.final_state.cp)}}},
        {"probability", round_significant(probability(r.final_state))},
        {"ode",
         r.ode_max_diff ? nlohmann::json{{"max_abs_diff", optional_rounded(r.ode_max_diff)},
                                         {"probability_drift",
                                          optional_rounded(r.ode_probability_drift)}}
                        : nlohmann::json(nullptr)},
        {"phase_error", optional_rounded(r.phase_error)},
        {"expected_phase_error", optional_rounded(r.expected_phase_error)}};
    if (r.pulse.mode != PulseMode::Sudden) {
      const double t_end = r.pulse.t0 + r.pulse.tau;
      j["natural_phase"] = {
          {"ck", round_significant(wrap_phase(-sys.energy_k * t_end))},
          {"cp", round_significant(
                     wrap_phase(std::numbers::pi / 2.0 - r.pulse.phase - sys.energy_p * t_end))}};
    }
    out << j.dump(2) << '\n';
  } else {
    auto phase = [](Amplitude a) {
      return std::abs(a) < kPhaseFloor ? std::string{} : num(std::arg(a));
    };
    out << kPulseCsvHeader << '\n'
        << to_string(r.pulse.mode) << ',' << num(std::abs(r.final_state.ck)) << ','
        << phase(r.final_state.ck) << ',' << num(std::abs(r.final_state.cp)) << ','
        << phase(r.final_state.cp) << ',' << num(probability(r.final_state)) << ','
        << opt_num(r.ode_max_diff) << ',' << opt_num(r.phase_error) << ','
        << opt_num(r.expected_phase_error) << '\n';
  }
  return kSuccess;
}

int cmd_sweep(const ExperimentFlags& flags, const std::array<double, 2>& tau1_range,
              const std::array<double, 2>& tau2_range, int n1, int n2, const std::string& path,
              std::ostream& out) {
  const ExperimentConfig config = flags.resolve();
  const auto rows = sweep_delays(config.spectrum, {tau1_range[0], tau1_range[1], n1},
                                 {tau2_range[0], tau2_range[1], n2}, config.mode,
                                 config.tolerance);
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open '" + path + "' for writing");
  if (config.output_format == OutputFormat::Json) {
    f << nlohmann::json(rows).dump(2) << '\n';
  } else {
    f << format_sweep_csv(rows);
  }
  f.close();
  if (!f) throw std::invalid_argument("failed writing '" + path + "'");

  std::size_t satisfied = 0;
  for (const auto& row : rows) satisfied += row.residuals.satisfied ? 1 : 0;
  out << "wrote " << rows.size() << " rows (" << satisfied
      << " satisfying the interference condition) to " << path << '\n';
  return kSuccess;
}

int cmd_check_condition(const ExperimentFlags& flags, std::ostream& out) {
  const ExperimentConfig config = flags.resolve();
  const ConditionResidual r = check_condition(config.spectrum, config.delays, config.tolerance);
  if (config.output_format == OutputFormat::Json) {
    nlohmann::json j = r;
    j["tau1"] = config.delays.tau1;
    j["tau2"] = config.delays.tau2;
    j["tolerance"] = config.tolerance;
    out << j.dump(2) << '\n';
  } else {
    out << kConditionCsvHeader << '\n'
        << exact(config.delays.tau1) << ',' << exact(config.delays.tau2) << ',' << num(r.delta1)
        << ',' << num(r.delta2) << ',' << (r.satisfied ? "true" : "false") << '\n';
  }
  return kSuccess;
}

}  // namespace

std::string format_report_csv(const RunReport& report) {
  std::ostringstream s;
  const auto& p = report.x_distribution;
  s << kReportCsvHeader << '\n'
    << to_string(report.config.mode) << ',' << exact(report.config.delays.tau1) << ','
    << exact(report.config.delays.tau2) << ',' << num(report.residuals.delta1) << ','
    << num(report.residuals.delta2) << ',' << (report.residuals.satisfied ? "true" : "false")
    << ',' << num(p[0]) << ',' << num(p[1]) << ',' << num(p[2]) << ',' << num(p[3]) << ','
    << num(std::abs(amplitude_of(report.final_state, 1, 1))) << ',' << report.measured_x << ','
    << report.attempts << ',' << opt_num(report.period) << ',' << opt_num(report.factor) << '\n';
  return s.str();
}

std::string format_sweep_csv(const std::vector<DelayGridRow>& rows) {
  std::ostringstream s;
  s << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    s << exact(r.tau1) << ',' << exact(r.tau2) << ',' << num(r.residuals.delta1) << ','
      << num(r.residuals.delta2) << ',' << (r.residuals.satisfied ? "true" : "false") << ','
      << num(r.probabilities[0]) << ',' << num(r.probabilities[1]) << ','
      << num(r.probabilities[2]) << ',' << num(r.probabilities[3]) << ','
      << num(r.amp11_modulus) << '\n';
  }
  return s.str();
}

PulseReport run_pulse(const TwoLevelSystem& system, const PulseSpec& pulse,
                      std::optional<double> ode_step) {
  PulseReport r;
  r.system = system;
  r.pulse = pulse.validated();
  // Parent level carries its natural phase at the pulse start; |p> empty.
  r.initial = {std::polar(1.0, -system.energy_k * r.pulse.t0), Amplitude{}};
  r.final_state = evolve(system, r.pulse, r.initial);

  if (r.pulse.mode == PulseMode::Sudden) return r;

  const TwoLevelState ode = ode_step ? integrate_ode(system, r.pulse, r.initial, *ode_step)
                                     : integrate_ode(system, r.pulse, r.initial);
  r.ode_max_diff = std::max(std::abs(ode.ck - r.final_state.ck), std::abs(ode.cp - r.final_state.cp));
  r.ode_probability_drift = std::abs(probability(ode) - 1.0);

  if (r.pulse.mode != PulseMode::Coherent && std::abs(r.final_state.cp) >= kPhaseFloor) {
    PulseSpec reference = r.pulse;
    reference.mode = PulseMode::Coherent;
    const TwoLevelState coherent = evolve_coherent(system, reference, r.initial);
    r.phase_error = wrap_phase(std::arg(r.final_state.cp) - std::arg(coherent.cp));
    r.expected_phase_error = r.pulse.mode == PulseMode::NonCoherent
                                 ? wrap_phase(system.transition_frequency() * r.pulse.t0)
                                 : 0.0;
  }
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-exact simulation of period finding for N = 4 and resonant-pulse dynamics",
               "phaseshor"};
  app.require_subcommand(1);

  std::string write_config;
  ExperimentFlags demo_flags;
  auto* demo = app.add_subcommand("shor-demo", "Run the N = 4 factoring experiment");
  demo_flags.attach(*demo);
  demo->add_option("--write-config", write_config, "Write the effective config to this path");

  PulseFlags pulse_flags;
  auto* pulse = app.add_subcommand("pulse", "Evolve one resonant or sudden two-level pulse");
  pulse_flags.attach(*pulse);

  ExperimentFlags sweep_flags;
  std::array<double, 2> tau1_range{0.0, 0.0};
  std::array<double, 2> tau2_range{0.0, 0.0};
  int n1 = 1;
  int n2 = 1;
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Scan (tau1, tau2) and write one row per point");
  sweep_flags.attach(*sweep_cmd);
  sweep_cmd->add_option("--tau1-range", tau1_range, "MIN MAX of tau1");
  sweep_cmd->add_option("--tau2-range", tau2_range, "MIN MAX of tau2");
  sweep_cmd->add_option("--n1", n1, "Grid points along tau1")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n2", n2, "Grid points along tau2")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sweep_out, "Output file")->required();

  ExperimentFlags check_flags;
  auto* check = app.add_subcommand("check-condition",
                                   "Print the interference-condition residuals for given delays");
  check_flags.attach(*check);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  std::ostringstream buffer;
  int code = kSuccess;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (demo->parsed()) {
      code = cmd_shor_demo(demo_flags, write_config, buffer);
    } else if (pulse->parsed()) {
      code = cmd_pulse(pulse_flags, buffer);
    } else if (sweep_cmd->parsed()) {
      code = cmd_sweep(sweep_flags, tau1_range, tau2_range, n1, n2, sweep_out, buffer);
    } else if (check->parsed()) {
      code = cmd_check_condition(check_flags, buffer);
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    app.exit(e, help, err);
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  out << buffer.str() << std::flush;
  return code;
}

}  // namespace phaseshor::cli
