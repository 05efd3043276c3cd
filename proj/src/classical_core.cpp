#include "rotorbath/classical_core.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace rotorbath::classical {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kRenormEvery = 10;
constexpr int kLyapunovOrbits = 32;
constexpr int kFilterSteps = 100;
constexpr double kFilterThreshold = 0.1;

// Uniform start in [0, 2pi)^2; orbit i always draws from its own stream.
MapState draw_start(std::uint64_t seed, std::uint64_t orbit) {
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (orbit + 1)));
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    const double q = u(rng);
    const double p = u(rng);
    return {q, p};
}

// Orbits in the chaotic sea, discarding starts whose short-time exponent marks them as
// trapped in an island. Below the critical kick nothing is chaotic on a large scale, so
// rejected starts are used to fill the ensemble.
std::vector<MapState> chaotic_starts(double kick_strength, std::size_t count, std::uint64_t seed) {
    std::vector<MapState> accepted;
    std::vector<MapState> rejected;
    accepted.reserve(count);
    const std::uint64_t max_draws = 20 * static_cast<std::uint64_t>(count);
    for (std::uint64_t i = 0; i < max_draws && accepted.size() < count; ++i) {
        const MapState s = draw_start(seed, i);
        if (orbit_lyapunov(s, kick_strength, kFilterSteps) >= kFilterThreshold)
            accepted.push_back(s);
        else if (rejected.size() < count)
            rejected.push_back(s);
    }
    for (std::size_t i = 0; accepted.size() < count && i < rejected.size(); ++i) accepted.push_back(rejected[i]);
    return accepted;
}

} // namespace

double wrap_angle(double q) {
    double r = std::fmod(q, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

MapState step(MapState s, double kick_strength) {
    const double q = wrap_angle(s.q + s.p);
    return {q, s.p + kick_strength * std::sin(q)};
}

Jacobian tangent_map(double q_next, double kick_strength) {
    const double kc = kick_strength * std::cos(q_next);
    return {1.0, 1.0, kc, 1.0 + kc};
}

double orbit_lyapunov(MapState start, double kick_strength, int n_steps) {
    MapState s = start;
    double dq = 1.0, dp = 0.0;
    double log_growth = 0.0;
    for (int n = 1; n <= n_steps; ++n) {
        s = step(s, kick_strength);
        const Jacobian j = tangent_map(s.q, kick_strength);
        const double nq = j.a * dq + j.b * dp;
        const double np = j.c * dq + j.d * dp;
        dq = nq;
        dp = np;
        if (n % kRenormEvery == 0 || n == n_steps) {
            const double norm = std::hypot(dq, dp);
            log_growth += std::log(norm);
            dq /= norm;
            dp /= norm;
        }
    }
    return log_growth / n_steps;
}

double lyapunov(double kick_strength, int n_steps, std::uint64_t seed) {
    if (n_steps < 1000) throw std::invalid_argument("lyapunov: n_steps must be at least 1000");
    const auto starts = chaotic_starts(kick_strength, kLyapunovOrbits, seed);
    double sum = 0.0;
    for (const auto& s : starts) sum += orbit_lyapunov(s, kick_strength, n_steps);
    return sum / static_cast<double>(starts.size());
}

double diffusion_coefficient(double kick_strength, int ensemble, int n_steps, std::uint64_t seed) {
    if (ensemble < 1000) throw std::invalid_argument("diffusion_coefficient: ensemble must be at least 1000");
    if (n_steps < 100) throw std::invalid_argument("diffusion_coefficient: n_steps must be at least 100");

    const auto starts = chaotic_starts(kick_strength, static_cast<std::size_t>(ensemble), seed);
    std::vector<double> msd(static_cast<std::size_t>(n_steps), 0.0);
    for (const auto& start : starts) {
        MapState s = start;
        for (int n = 0; n < n_steps; ++n) {
            s = step(s, kick_strength);
            const double dp = s.p - start.p;
            msd[n] += dp * dp;
        }
    }

    // Least-squares slope of msd against n = 1..n_steps.
    const double count = static_cast<double>(starts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n = 0; n < n_steps; ++n) {
        const double x = n + 1.0;
        const double y = msd[n] / count;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = n_steps;
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace rotorbath::classical
