#pragma once

#include <string>

namespace bincs {

// Locale-independent number formatting for every text output.

/// Shortest form with `digits` significant digits (printf %g style).
std::string format_sig(double value, int digits = 6);
/// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double value, int decimals = 6);

}  // namespace bincs
