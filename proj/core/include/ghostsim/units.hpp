#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ghostsim {

enum class Dimension { Length, Time, Dimensionless };

/// Parses a decimal number with an optional SI suffix and returns the value in
/// meters or seconds. Lengths accept m, cm, mm, um, µm, nm, pm; times accept
/// s, ms, us, µs, ns, ps. The scaling is applied to the decimal exponent before
/// conversion, so "693nm" yields exactly the double nearest 693e-9.
/// Returns nullopt on malformed input or a suffix of the wrong dimension.
std::optional<double> parse_quantity(std::string_view text, Dimension dim);

/// Shortest round-trip decimal representation ("%.17g").
std::string format_double(double value);

}  // namespace ghostsim
