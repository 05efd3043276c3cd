#include "rotorbath/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotorbath {

bool EntropySeries::consistent() const {
    if (entropy.size() != kicks.size() || energy.size() != kicks.size()) return false;
    return std::adjacent_find(kicks.begin(), kicks.end(), [](int a, int b) { return b <= a; }) == kicks.end();
}

namespace analysis {

namespace {

constexpr int kMinWindowPoints = 10;

std::vector<std::size_t> window_indices(const EntropySeries& s, FitWindow w) {
    if (!s.consistent()) throw std::invalid_argument("inconsistent entropy series");
    if (w.n_min < 1) throw std::invalid_argument("window must start at n >= 1");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int n = s.kicks[i];
        if (n >= w.n_min && (w.n_max < 0 || n <= w.n_max)) idx.push_back(i);
    }
    if (idx.size() < kMinWindowPoints) throw std::invalid_argument("window too small");
    return idx;
}

} // namespace

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need matching samples");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: x values are all equal");

    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
    }
    f.residual_rms = std::sqrt(ss_res / n);
    f.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

GrowthFit fit_growth(const EntropySeries& series, FitWindow window) {
    const auto idx = window_indices(series, window);
    std::vector<double> x, y;
    for (const auto i : idx) {
        x.push_back(std::log(static_cast<double>(series.kicks[i])));
        y.push_back(series.entropy[i]);
    }
    const LineFit line = fit_line(x, y);
    return {line.intercept, line.slope, series.kicks[idx.front()], series.kicks[idx.back()], line.residual_rms,
            static_cast<int>(idx.size())};
}

LineFit energy_growth(const EntropySeries& series, FitWindow window) {
    const auto idx = window_indices(series, window);
    std::vector<double> x, y;
    for (const auto i : idx) {
        x.push_back(series.kicks[i]);
        y.push_back(series.energy[i]);
    }
    return fit_line(x, y);
}

double predict_A(double kick_strength, double hbar) {
    return 0.5 + std::log(std::sqrt(std::numbers::pi) / hbar) + std::log(kick_strength);
}

double lyapunov_estimate(double kick_strength) { return std::log(0.5 * kick_strength); }

LineFit regress_A_vs_lnK(std::span<const KickFit> fits) {
    if (fits.size() < 4) throw std::invalid_argument("regress_A_vs_lnK: need at least 4 kick strengths");
    std::vector<double> x, y;
    for (const auto& f : fits) {
        x.push_back(std::log(f.kick_strength));
        y.push_back(f.fit.A);
    }
    return fit_line(x, y);
}

double convergence_metric(const EntropySeries& quantum, const EntropySeries& classical, FitWindow window) {
    if (quantum.kicks != classical.kicks) throw std::invalid_argument("convergence_metric: mismatched kick grids");
    double gap = 0.0;
    for (const auto i : window_indices(quantum, window))
        gap = std::max(gap, std::abs(quantum.entropy[i] - classical.entropy[i]));
    return gap;
}

} // namespace analysis
} // namespace rotorbath
