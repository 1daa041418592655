#pragma once

#include <string>
#include <string_view>

namespace qlops::units {

// Internal convention: durations in seconds, lengths in micrometers,
// rates in hertz.  Configuration files may write durations with an
// `s`, `ms` or `us` suffix; a bare number is taken as seconds.
//
// The suffix is applied by rewriting the decimal exponent of the token
// before it is converted, so "0.86us" and "8.6e-7s" produce bit-identical
// doubles.
double parse_duration(std::string_view token);

// True if the token would be accepted by parse_duration.
bool looks_like_duration(std::string_view token);

// Shortest decimal form at `sig` significant digits ("%.*g").
std::string format_sig(double value, int sig = 6);

// Fixed-point form with `decimals` digits after the point ("%.*f").
std::string format_fixed(double value, int decimals);

} // namespace qlops::units
