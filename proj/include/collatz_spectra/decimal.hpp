#pragma once

#include "collatz_spectra/numtheory.hpp"

#include <string>

namespace collatz {

/// Renders an exact rational with `significant` significant digits, rounding
/// half away from zero and dropping trailing zeros. Plain positional notation
/// is used for magnitudes in [1e-6, 1e7); scientific ("4.1078e-04") outside.
std::string to_decimal(const BigRat& value, int significant = 7);

/// Same rounding, always in scientific notation.
std::string to_scientific(const BigRat& value, int significant);

/// "num/den", or "num" when the denominator is 1.
std::string to_fraction(const BigRat& value);

}  // namespace collatz
