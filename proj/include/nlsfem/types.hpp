#pragma once

#include <array>
#include <complex>
#include <vector>

namespace nlsfem {

using Complex = std::complex<double>;

/// Point in the reference box (0,1)^dim. The second coordinate is ignored in 1D.
using Point = std::array<double, 2>;

/// Complex gradient; component 1 is unused in 1D.
using ComplexGradient = std::array<Complex, 2>;

using ComplexVector = std::vector<Complex>;

} // namespace nlsfem
