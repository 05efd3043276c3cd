#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rotorbath {

inline constexpr double kDefaultHbar = 0.46;
inline constexpr double kDefaultBeta = 0.1;

struct RotorParams {
    double kick_strength = 3.5; // K
    double hbar = kDefaultHbar;
};

struct BathParams {
    double eta = 1.0;
    std::optional<double> omega_c; // defaults to 5/hbar
    double beta = kDefaultBeta;
    double phi_prime = 1.0;
};

// Basis and grid sizes. Unset sizes are derived from the kick count in validate().
struct NumericsParams {
    std::optional<int> l_max;
    int nq = 512;
    int np_grid = 4096;
    std::optional<double> p_extent;
    double band_tol = 1e-15;
    double eig_floor = 1e-14;
    double product_tol = 1e-12;
    // Off-band coherences whose combined Frobenius norm is below this are dropped after each bath step.
    double coherence_tol = 1e-15;
};

// Initial state and run length.
struct RunParams {
    int kicks = 200;
    double packet_width = 0.5; // a in a_l = N exp(-a l^2 + b l)
    std::optional<double> p_center; // defaults to pi * hbar
    double q_center = 0.0;
    int fit_min = 10;
    unsigned long long seed = 12345;
};

// Immutable, fully resolved parameter set. Only validate() constructs one.
class ValidatedConfig {
public:
    const RotorParams& rotor() const noexcept { return rotor_; }
    const BathParams& bath() const noexcept { return bath_; }
    const NumericsParams& numerics() const noexcept { return numerics_; }
    const RunParams& run() const noexcept { return run_; }

    double omega_c() const { return *bath_.omega_c; }
    int l_max() const { return *numerics_.l_max; }
    double p_extent() const { return *numerics_.p_extent; }
    double p_center() const { return *run_.p_center; }
    bool bath_disabled() const noexcept { return bath_.eta == 0.0; }

    // Non-fatal remarks, e.g. "bath disabled".
    const std::vector<std::string>& notes() const noexcept { return notes_; }

private:
    friend ValidatedConfig validate(const RotorParams&, const BathParams&, const NumericsParams&,
                                    const RunParams&);
    ValidatedConfig() = default;

    RotorParams rotor_;
    BathParams bath_;
    NumericsParams numerics_;
    RunParams run_;
    std::vector<std::string> notes_;
};

// Returns the list of violated invariants; empty when the parameters are acceptable.
std::vector<std::string> check(const RotorParams& rotor, const BathParams& bath,
                               const NumericsParams& num, const RunParams& run = {});

// Throws ConfigError listing every violation. Resolves defaults (omega_c = 5/hbar,
// p_center = pi*hbar) and sizes the momentum basis and p-grid for run.kicks.
ValidatedConfig validate(const RotorParams& rotor, const BathParams& bath, const NumericsParams& num,
                         const RunParams& run = {});

inline ValidatedConfig validate(const ValidatedConfig& cfg) {
    return validate(cfg.rotor(), cfg.bath(), cfg.numerics(), cfg.run());
}

// Momentum-basis half width that keeps the leaked probability below ~1e-10 after `kicks`
// kicks of a diffusing packet centered at l0.
int default_l_max(double kick_strength, double hbar, double l0, int kicks);

// Half width of the classical p-grid for the same run; `packet_width` is the a of the
// initial packet, which sets the Husimi momentum spread.
double default_p_extent(double kick_strength, double hbar, int kicks, double packet_width);

} // namespace rotorbath
