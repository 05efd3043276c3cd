#pragma once

#include <cstdint>

namespace rotorbath::classical {

// Point on the cylinder, values just after a kick. q is kept in [0, 2pi).
struct MapState {
    double q = 0.0;
    double p = 0.0;
};

// Critical kick strength above which the last KAM torus breaks.
inline constexpr double kCriticalKick = 0.971635;

double wrap_angle(double q);

// One period of the standard map: q' = q + p (mod 2pi), p' = p + K sin q'.
MapState step(MapState s, double kick_strength);

// Jacobian of step() at the updated angle q' = step(s).q.
struct Jacobian {
    double a, b, c, d; // [[a, b], [c, d]]
    double det() const { return a * d - b * c; }
};
Jacobian tangent_map(double q_next, double kick_strength);

// Largest Lyapunov exponent by tangent-map iteration, averaged over 32 orbits started in the
// chaotic sea. Requires n_steps >= 1000.
double lyapunov(double kick_strength, int n_steps, std::uint64_t seed);

// Single-orbit exponent (used for the island filter and by tests).
double orbit_lyapunov(MapState start, double kick_strength, int n_steps);

// Slope of <(p_n - p_0)^2> against n. Requires ensemble >= 1000 and n_steps >= 100.
double diffusion_coefficient(double kick_strength, int ensemble, int n_steps, std::uint64_t seed);

} // namespace rotorbath::classical
