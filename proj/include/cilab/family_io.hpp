#pragma once

#include <string>

#include "cilab/families.hpp"

namespace cilab {

/// Canonical JSON document for a family: sorted keys, two-space indent, trailing newline.
/// Cut angles are written as exact multiples of pi ("2pi/3") when one matches, radians otherwise.
std::string serialize_family(const FamilySpec& family);

/// Parses a JSON family document. Schema violations throw ParseError naming the field.
FamilySpec parse_family(const std::string& text);

/// "0", "pi", "2pi/3", "-pi/4" or a decimal number of radians.
double parse_angle(const std::string& text);
std::string format_angle(double radians);

/// Exponent text, preferring small fractions ("4/3") and "inf".
std::string format_exponent(Exponent p);

}  // namespace cilab
