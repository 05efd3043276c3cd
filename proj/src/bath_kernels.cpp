#include "rotorbath/bath_kernels.hpp"

#include "rotorbath/error.hpp"

#include <cmath>

namespace rotorbath::bath {

namespace {

constexpr double kMaxTerms = 1e8;
constexpr double kUnderflowExponent = 700.0;

// u arctan(u) - ln(1 + u^2)/2, with its Taylor series near 0 where the two terms cancel.
double s_shape(double u) {
    if (std::abs(u) < 1e-2) {
        const double u2 = u * u;
        return u2 * (0.5 + u2 * (-1.0 / 12.0 + u2 * (1.0 / 30.0 - u2 / 56.0)));
    }
    return u * std::atan(u) - 0.5 * std::log1p(u * u);
}

// g(v) = ln(1 + c^2 / v^2) and its derivatives in v.
struct LogTerm {
    double c2;

    double value(double v) const { return std::log1p(c2 / (v * v)); }
    double d1(double v) const { return -2.0 * c2 / (v * (v * v + c2)); }
    double d3(double v) const {
        const double d = v * v * v + c2 * v;
        const double n = 3.0 * v * v + c2;
        return -2.0 * c2 * (2.0 * n * n - 6.0 * v * d) / (d * d * d);
    }
    // Integral of value() from v0 to infinity.
    double tail_integral(double v0) const {
        const double c = std::sqrt(c2);
        return 2.0 * c * std::atan(c / v0) - v0 * std::log1p(c2 / (v0 * v0));
    }
};

} // namespace

double s_variance(double t, const BathParams& bath) {
    if (t <= 0.0 || bath.eta == 0.0) return 0.0;
    const double wc = *bath.omega_c;
    return 2.0 * bath.eta * bath.phi_prime * bath.phi_prime * s_shape(wc * t) / wc;
}

double drift_rate(double t, const BathParams& bath) {
    if (t <= 0.0) return 0.0;
    return bath.eta * bath.phi_prime * std::atan(*bath.omega_c * t);
}

double log_thermal_product(double t, const BathParams& bath, double rel_tol) {
    if (t <= 0.0) return 0.0;
    const double c = *bath.omega_c * t;
    const double y = bath.beta * *bath.omega_c;
    const LogTerm g{c * c};

    double sum = 0.0;
    for (double k = 1.0;; k += 1.0) {
        if (k > kMaxTerms)
            throw NumericalError("thermal product did not converge within 1e8 terms (beta*omega_c too small)");
        sum += g.value(1.0 + k * y);

        const double v_next = 1.0 + (k + 1.0) * y;
        if (k < 4.0 || v_next < 2.0 * c) continue;
        // Euler-Maclaurin remainder for sum_{j >= k+1} g(1 + j y).
        const double correction3 = y * y * y * g.d3(v_next) / 720.0;
        const double tail =
            g.tail_integral(v_next) / y + 0.5 * g.value(v_next) - y * g.d1(v_next) / 12.0 + correction3;
        if (std::abs(correction3) <= rel_tol * (sum + tail)) return sum + tail;
    }
}

double a1_coefficient(double t, double hbar, const BathParams& bath) {
    if (t <= 0.0) return 0.0;
    return bath.eta * hbar * std::atan(*bath.omega_c * t);
}

double a2_coefficient(double t, double hbar, const BathParams& bath, double rel_tol) {
    if (t <= 0.0 || bath.eta == 0.0) return 0.0;
    const double wt = *bath.omega_c * t;
    return 0.5 * bath.eta * hbar * std::log1p(wt * wt) + bath.eta * hbar * log_thermal_product(t, bath, rel_tol);
}

double dephasing_A1(int m, int n, double t, double hbar, const BathParams& bath) {
    const double diff = static_cast<double>(m) * m - static_cast<double>(n) * n;
    return a1_coefficient(t, hbar, bath) * diff;
}

double dephasing_A2(int m, int n, double t, double hbar, const BathParams& bath, double rel_tol) {
    const double d = static_cast<double>(m) - n;
    return a2_coefficient(t, hbar, bath, rel_tol) * d * d;
}

BathKernels evaluate(double t, double hbar, const BathParams& bath, double rel_tol) {
    return {t, s_variance(t, bath), drift_rate(t, bath), a1_coefficient(t, hbar, bath),
            a2_coefficient(t, hbar, bath, rel_tol)};
}

double decay_factor(double a2) { return a2 > kUnderflowExponent ? 0.0 : std::exp(-a2); }

KernelCache::KernelCache(double hbar, BathParams bath, double rel_tol)
    : hbar_(hbar), bath_(std::move(bath)), rel_tol_(rel_tol) {}

BathKernels KernelCache::at(double t) const {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(t); it != cache_.end()) return it->second;
    auto k = evaluate(t, hbar_, bath_, rel_tol_);
    cache_.emplace(t, k);
    return k;
}

} // namespace rotorbath::bath
