#pragma once

#include "rotorbath/params.hpp"

#include <map>
#include <mutex>

namespace rotorbath::bath {

// Scalar coefficients of the ohmic-bath propagator for an evolution time t.
struct BathKernels {
    double t = 0.0;
    double s_of_t = 0.0;     // variance function s(t); the q-smearing Gaussian has variance s/beta
    double drift_rate = 0.0; // eta * phi' * arctan(omega_c t); the rotor drift is drift_rate * p
    double a1_coeff = 0.0;   // multiplies m^2 - n^2
    double a2_coeff = 0.0;   // multiplies (m - n)^2
};

// 2 eta phi'^2 [t arctan(omega_c t) - ln(1 + omega_c^2 t^2) / (2 omega_c)]
double s_variance(double t, const BathParams& bath);

double drift_rate(double t, const BathParams& bath);

// ln prod_{k>=1} [1 + (omega_c t / (1 + k beta omega_c))^2]. Terms are summed until the
// Euler-Maclaurin tail correction drops below `rel_tol` of the partial sum; the remainder is
// added in closed form. Throws NumericalError if more than 1e8 terms would be needed.
double log_thermal_product(double t, const BathParams& bath, double rel_tol = 1e-12);

double a1_coefficient(double t, double hbar, const BathParams& bath);
double a2_coefficient(double t, double hbar, const BathParams& bath, double rel_tol = 1e-12);

// eta hbar (m^2 - n^2) arctan(omega_c t)
double dephasing_A1(int m, int n, double t, double hbar, const BathParams& bath);

// (eta hbar / 2)(m-n)^2 ln(1 + omega_c^2 t^2) + eta hbar (m-n)^2 ln prod_k [...]
double dephasing_A2(int m, int n, double t, double hbar, const BathParams& bath, double rel_tol = 1e-12);

BathKernels evaluate(double t, double hbar, const BathParams& bath, double rel_tol = 1e-12);

// exp(-a2) with the result flushed to zero once a2 > 700.
double decay_factor(double a2);

// Memo of evaluate() keyed by t, for one (hbar, bath) pair. Safe for concurrent callers.
class KernelCache {
public:
    KernelCache(double hbar, BathParams bath, double rel_tol);

    BathKernels at(double t) const;

private:
    double hbar_;
    BathParams bath_;
    double rel_tol_;
    mutable std::mutex mutex_;
    mutable std::map<double, BathKernels> cache_;
};

} // namespace rotorbath::bath
