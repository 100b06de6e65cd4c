#pragma once

#include <string>

namespace piezoharvest::fmt {

/// Shortest round-trip decimal text, locale independent.
std::string shortest(double value);

/// `digits` significant digits, locale independent. Plain notation for
/// magnitudes in [1e-4, 1e6), scientific otherwise. "inf"/"nan" for
/// non-finite values.
std::string significant(double value, int digits = 4);

}  // namespace piezoharvest::fmt
