#pragma once

#include <string>

namespace kato {

/// Smallest number with `digits` significant digits that is >= x.
double round_up_sig(double x, int digits = 3);
/// Largest number with `digits` significant digits that is <= x.
double round_down_sig(double x, int digits = 3);
/// Fixed-point text with exactly `digits` significant digits (trailing
/// zeros kept), e.g. 0.28 -> "0.280".
std::string format_sig(double x, int digits = 3);

}  // namespace kato
