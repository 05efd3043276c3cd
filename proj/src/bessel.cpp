#include "rotorbath/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace rotorbath {

std::vector<double> bessel_j_sequence(double x, int nu_max) {
    if (nu_max < 0) throw std::invalid_argument("bessel_j_sequence: nu_max must be non-negative");
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("bessel_j_sequence: x must be finite and >= 0");

    std::vector<double> j(static_cast<std::size_t>(nu_max) + 1, 0.0);
    if (x == 0.0) {
        j[0] = 1.0;
        return j;
    }

    // Start well above both nu_max and x so the seeded minimal solution dominates.
    const int top = std::max(nu_max, static_cast<int>(std::ceil(x)));
    int start = top + 20 + static_cast<int>(std::sqrt(40.0 * top));
    start += start % 2; // even, so the normalization sum sees every J_{2k}

    constexpr double kRescale = 1e250;
    double above = 0.0; // J_{nu+1}
    double here = 1e-300; // J_nu
    double norm = 0.0;
    for (int nu = start; nu >= 0; --nu) {
        if (nu <= nu_max) j[nu] = here;
        if (nu % 2 == 0) norm += (nu == 0 ? 1.0 : 2.0) * here;
        if (nu == 0) break;
        const double below = 2.0 * nu / x * here - above;
        above = here;
        here = below;
        if (std::abs(here) > kRescale) {
            here /= kRescale;
            above /= kRescale;
            norm /= kRescale;
            for (int k = nu; k <= nu_max; ++k) j[k] /= kRescale;
        }
    }
    for (auto& v : j) v /= norm;
    return j;
}

} // namespace rotorbath
