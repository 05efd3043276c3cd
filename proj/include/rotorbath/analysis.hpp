#pragma once

#include "rotorbath/series.hpp"

#include <span>
#include <vector>

namespace rotorbath::analysis {

struct FitWindow {
    int n_min = 10;
    int n_max = -1; // -1: through the last recorded kick
};

// S(n) = A + B ln n over a window of kicks.
struct GrowthFit {
    double A = 0.0;
    double B = 0.0;
    int n_min = 0;
    int n_max = 0;
    double residual_rms = 0.0;
    int points = 0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double residual_rms = 0.0;
};

// Ordinary least squares y = intercept + slope x. Needs two distinct x values.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Throws std::invalid_argument("window too small") with fewer than 10 points in the window.
GrowthFit fit_growth(const EntropySeries& series, FitWindow window = {});

// Slope of the energy against n over the same window.
LineFit energy_growth(const EntropySeries& series, FitWindow window = {});

// 1/2 + ln(sqrt(pi)/hbar) + ln K
double predict_A(double kick_strength, double hbar);

// Large-K Lyapunov exponent ln(K/2).
double lyapunov_estimate(double kick_strength);

struct KickFit {
    double kick_strength = 0.0;
    GrowthFit fit;
};

// Least squares of fitted A against ln K; needs at least 4 kick strengths.
LineFit regress_A_vs_lnK(std::span<const KickFit> fits);

// max |S_q(n) - S_c(n)| over the window; the series must share their kick grid.
double convergence_metric(const EntropySeries& quantum, const EntropySeries& classical, FitWindow window = {});

} // namespace rotorbath::analysis
