#pragma once

#include <vector>

namespace rotorbath {

// J_0(x) ... J_{nu_max}(x) for x >= 0 by Miller's backward recurrence, normalized with
// J_0 + 2 sum_k J_{2k} = 1.
std::vector<double> bessel_j_sequence(double x, int nu_max);

} // namespace rotorbath
