#pragma once

#include <string>

namespace phaseshor {

/// Significant digits for reported phases, moduli and probabilities.
inline constexpr int kReportDigits = 12;

/// v rounded to `digits` significant digits (a value whose shortest
/// representation has at most that many digits).
double round_significant(double v, int digits = kReportDigits);

/// printf("%.*g") with `digits` significant digits.
std::string format_significant(double v, int digits = kReportDigits);

/// Shortest text that parses back to exactly v.
std::string format_exact(double v);

}  // namespace phaseshor
