#include "rotorbath/params.hpp"

#include "rotorbath/error.hpp"

#include <cmath>
#include <numbers>

namespace rotorbath {

namespace {

bool in_unit_interval(double x) { return x > 0.0 && x < 1.0; }

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += "; ";
        out += item;
    }
    return out;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error("invalid configuration: " + join(violations)), violations_(std::move(violations)) {}

ConfigError::ConfigError(const std::string& message) : std::runtime_error(message), violations_{message} {}

std::vector<std::string> check(const RotorParams& rotor, const BathParams& bath, const NumericsParams& num,
                               const RunParams& run) {
    std::vector<std::string> v;
    // K = 0 is accepted as the free-rotor limit.
    if (!(rotor.kick_strength >= 0.0) || !std::isfinite(rotor.kick_strength)) v.emplace_back("K must be positive");
    if (!(rotor.hbar > 0.0) || !std::isfinite(rotor.hbar)) v.emplace_back("hbar must be positive");
    if (!(bath.eta >= 0.0) || !std::isfinite(bath.eta)) v.emplace_back("eta must be non-negative");
    if (bath.omega_c && !(*bath.omega_c > 0.0 && std::isfinite(*bath.omega_c)))
        v.emplace_back("omega_c must be positive");
    if (!(bath.beta > 0.0) || !std::isfinite(bath.beta)) v.emplace_back("beta must be positive");
    if (!std::isfinite(bath.phi_prime)) v.emplace_back("phi_prime must be finite");

    if (num.l_max && *num.l_max < 1) v.emplace_back("l_max must be at least 1");
    if (num.nq < 8) v.emplace_back("nq must be at least 8");
    if (num.np_grid < 8) v.emplace_back("np_grid must be at least 8");
    if (num.p_extent && !(*num.p_extent > 0.0 && std::isfinite(*num.p_extent)))
        v.emplace_back("p_extent must be positive");
    if (!in_unit_interval(num.band_tol)) v.emplace_back("band_tol must lie in (0, 1)");
    if (!in_unit_interval(num.eig_floor)) v.emplace_back("eig_floor must lie in (0, 1)");
    if (!in_unit_interval(num.product_tol)) v.emplace_back("product_tol must lie in (0, 1)");
    if (!in_unit_interval(num.coherence_tol)) v.emplace_back("coherence_tol must lie in (0, 1)");

    if (run.kicks < 0) v.emplace_back("kicks must be non-negative");
    if (!(run.packet_width > 0.0) || !std::isfinite(run.packet_width))
        v.emplace_back("packet_width must be positive");
    if (run.p_center && !std::isfinite(*run.p_center)) v.emplace_back("p_center must be finite");
    if (!std::isfinite(run.q_center)) v.emplace_back("q_center must be finite");
    if (run.fit_min < 1) v.emplace_back("fit_min must be at least 1");
    return v;
}

int default_l_max(double kick_strength, double hbar, double l0, int kicks) {
    const double x = kick_strength / hbar;
    const double spread = x * std::sqrt(0.5 * std::max(kicks, 1));
    const double band = std::ceil(x) + 40.0 + std::ceil(6.0 * std::cbrt(x));
    return static_cast<int>(std::ceil(std::abs(l0) + 7.0 * spread + band + 10.0));
}

double default_p_extent(double kick_strength, double hbar, int kicks, double packet_width) {
    const double kick_spread = kick_strength / std::numbers::sqrt2 * std::sqrt(static_cast<double>(std::max(kicks, 1)));
    // Husimi momentum spread: packet variance hbar^2/(4a) plus the coherent-state hbar^2/2.
    const double husimi_sigma = hbar * std::sqrt(0.25 / packet_width + 0.5);
    return 6.5 * kick_spread + kick_strength + 8.0 * husimi_sigma;
}

ValidatedConfig validate(const RotorParams& rotor, const BathParams& bath, const NumericsParams& num,
                         const RunParams& run) {
    auto violations = check(rotor, bath, num, run);
    if (!violations.empty()) throw ConfigError(std::move(violations));

    ValidatedConfig cfg;
    cfg.rotor_ = rotor;
    cfg.bath_ = bath;
    cfg.numerics_ = num;
    cfg.run_ = run;
    if (!cfg.bath_.omega_c) cfg.bath_.omega_c = 5.0 / rotor.hbar;
    if (!cfg.run_.p_center) cfg.run_.p_center = std::numbers::pi * rotor.hbar;
    if (!cfg.numerics_.l_max)
        cfg.numerics_.l_max = default_l_max(rotor.kick_strength, rotor.hbar, *cfg.run_.p_center / rotor.hbar,
                                            run.kicks);
    if (!cfg.numerics_.p_extent)
        cfg.numerics_.p_extent = default_p_extent(rotor.kick_strength, rotor.hbar, run.kicks, run.packet_width);

    if (bath.eta == 0.0) cfg.notes_.emplace_back("bath disabled");
    if (rotor.kick_strength == 0.0) cfg.notes_.emplace_back("kicks disabled");
    return cfg;
}

} // namespace rotorbath
