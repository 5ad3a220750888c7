#include "phaseshor/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <vector>

#include "phaseshor/format.hpp"

namespace phaseshor {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}


class LineParser {
 public:
  LineParser(const std::string& source, int line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(source_, line_, message);
  }

  double real(std::string_view text) const {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
      fail("expected a real number, got '" + std::string(text) + "'");
    }
    return v;
  }

  template <typename Int>
  Int integer(std::string_view text) const {
    text = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
      fail("expected an integer, got '" + std::string(text) + "'");
    }
    return v;
  }

  // Values separated by commas and/or whitespace.
  std::vector<double> reals(std::string_view text, std::size_t expected) const {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto start = text.find_first_not_of(", \t", pos);
      if (start == std::string_view::npos) break;
      const auto end = std::min(text.find_first_of(", \t", start), text.size());
      out.push_back(real(text.substr(start, end - start)));
      pos = end;
    }
    if (out.size() != expected) {
      fail("expected " + std::to_string(expected) + " values, got " + std::to_string(out.size()));
    }
    return out;
  }

 private:
  const std::string& source_;
  int line_;
};

}  // namespace

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Json ? "json" : "csv";
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw std::invalid_argument("unknown output format '" + std::string(text) +
                              "' (expected json or csv)");
}

OutputFormat default_output_format() {
  const char* env = std::getenv(kOutputFormatEnv);
  if (env == nullptr || *env == '\0') return OutputFormat::Json;
  return parse_output_format(env);
}

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

void ExperimentConfig::set_qubit_frequencies(const std::array<double, 4>& omega) {
  spectrum = EnergySpectrum::additive(omega);
  qubit_frequencies = omega;
}

void ExperimentConfig::set_energies(const EnergySpectrum& table) {
  spectrum = table;
  qubit_frequencies.reset();
}

void ExperimentConfig::validate() const {
  delays.validate();
  if (retry_cap < 1) throw std::invalid_argument("retry_cap must be >= 1");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw std::invalid_argument("tolerance must be a positive finite number");
  }
}

ExperimentConfig parse_config(std::istream& in, const std::string& source_name,
                              ExperimentConfig config) {
  std::string raw;
  int line_no = 0;
  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const LineParser p(source_name, line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) p.fail("expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) p.fail("missing value for '" + key + "'");
    if (!seen.insert(key).second) p.fail("duplicate key '" + key + "'");
    if ((key == "omega" && seen.count("energies")) || (key == "energies" && seen.count("omega"))) {
      p.fail("'omega' and 'energies' are mutually exclusive");
    }

    try {
      if (key == "mode") {
        config.mode = parse_pipeline_mode(value);
      } else if (key == "tau1") {
        config.delays.tau1 = p.real(value);
      } else if (key == "tau2") {
        config.delays.tau2 = p.real(value);
      } else if (key == "omega") {
        const auto w = p.reals(value, 4);
        config.set_qubit_frequencies({w[0], w[1], w[2], w[3]});
      } else if (key == "energies") {
        const auto e = p.reals(value, kDim);
        EnergySpectrum::Table t{};
        std::copy(e.begin(), e.end(), t.begin());
        config.set_energies(EnergySpectrum(t));
      } else if (key == "seed") {
        config.seed = p.integer<std::uint64_t>(value);
      } else if (key == "retry_cap") {
        config.retry_cap = p.integer<int>(value);
      } else if (key == "tolerance") {
        config.tolerance = p.real(value);
      } else if (key == "output_format") {
        config.output_format = parse_output_format(value);
      } else {
        p.fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      p.fail(e.what());
    }
  }
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source_name, line_no, e.what());
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  return parse_config(in, path.string(), std::move(base));
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "mode = " << to_string(config.mode) << '\n';
  out << "tau1 = " << format_exact(config.delays.tau1) << '\n';
  out << "tau2 = " << format_exact(config.delays.tau2) << '\n';
  if (config.qubit_frequencies) {
    const auto& w = *config.qubit_frequencies;
    out << "omega = " << format_exact(w[0]) << ", " << format_exact(w[1]) << ", " << format_exact(w[2]) << ", "
        << format_exact(w[3]) << '\n';
  } else {
    out << "energies = ";
    for (std::size_t i = 0; i < kDim; ++i) {
      out << (i ? ", " : "") << format_exact(config.spectrum[i]);
    }
    out << '\n';
  }
  out << "seed = " << config.seed << '\n';
  out << "retry_cap = " << config.retry_cap << '\n';
  out << "tolerance = " << format_exact(config.tolerance) << '\n';
  out << "output_format = " << to_string(config.output_format) << '\n';
  return out.str();
}

StateVector run_pipeline(const ExperimentConfig& config) {
  config.validate();
  return run_pipeline(config.mode, config.spectrum, config.delays);
}

void to_json(nlohmann::json& j, const ExperimentConfig& config) {
  j = nlohmann::json{{"mode", to_string(config.mode)},
                     {"tau1", config.delays.tau1},
                     {"tau2", config.delays.tau2},
                     {"energies", config.spectrum},
                     {"seed", config.seed},
                     {"retry_cap", config.retry_cap},
                     {"tolerance", config.tolerance},
                     {"output_format", to_string(config.output_format)}};
  if (config.qubit_frequencies) j["omega"] = *config.qubit_frequencies;
}

}  // namespace phaseshor
