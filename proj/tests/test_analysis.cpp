#include "rotorbath/analysis.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace rotorbath;
using namespace rotorbath::analysis;

namespace {

EntropySeries synthetic(double a, double b, int n_max, double noise = 0.0) {
    EntropySeries s;
    for (int n = 0; n <= n_max; ++n) {
        s.kicks.push_back(n);
        const double wiggle = noise * std::sin(1.7 * n);
        s.entropy.push_back(n == 0 ? 0.0 : a + b * std::log(n) + wiggle);
        s.energy.push_back(0.25 * n + 1.0);
    }
    return s;
}

} // namespace

TEST_CASE("exact log-law data is recovered") {
    const auto fit = fit_growth(synthetic(2.0, 0.5, 200));
    CHECK(std::abs(fit.A - 2.0) < 1e-10);
    CHECK(std::abs(fit.B - 0.5) < 1e-10);
    CHECK(fit.n_min == 10);
    CHECK(fit.n_max == 200);
    CHECK(fit.points == 191);
    CHECK(fit.residual_rms < 1e-12);
}

TEST_CASE("window limits are honoured") {
    const auto fit = fit_growth(synthetic(1.0, 0.7, 100), {20, 60});
    CHECK(fit.n_min == 20);
    CHECK(fit.n_max == 60);
    CHECK(fit.points == 41);
    CHECK_THROWS_WITH_AS(fit_growth(synthetic(1.0, 0.7, 100), {95, -1}), "window too small", std::invalid_argument);
    CHECK_THROWS_AS(fit_growth(synthetic(1.0, 0.7, 100), {0, -1}), std::invalid_argument);
}

TEST_CASE("subsampling the window leaves the fit within residual level") {
    const auto full = synthetic(3.0, 0.5, 200, 1e-3);
    EntropySeries half;
    for (std::size_t i = 0; i < full.size(); i += 2) {
        half.kicks.push_back(full.kicks[i]);
        half.entropy.push_back(full.entropy[i]);
        half.energy.push_back(full.energy[i]);
    }
    const auto a = fit_growth(full), b = fit_growth(half);
    CHECK(std::abs(a.B - b.B) < 5.0 * a.residual_rms);
    CHECK(std::abs(a.A - b.A) < 5.0 * 5.0 * a.residual_rms);
}

TEST_CASE("inconsistent series are rejected") {
    auto s = synthetic(1.0, 0.5, 50);
    s.entropy.pop_back();
    CHECK_FALSE(s.consistent());
    CHECK_THROWS_AS(fit_growth(s), std::invalid_argument);
    auto t = synthetic(1.0, 0.5, 50);
    t.kicks[5] = t.kicks[4];
    CHECK_FALSE(t.consistent());
}

TEST_CASE("energy slope") {
    const auto e = energy_growth(synthetic(0.0, 0.5, 100));
    CHECK(e.slope == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(e.intercept == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("predicted intercept") {
    // 1/2 + ln(sqrt(pi)/0.46) + ln 3.5 = 0.5 + 1.348893 + 1.252763
    CHECK(predict_A(3.5, 0.46) == doctest::Approx(3.1016567).epsilon(1e-7));
    CHECK(predict_A(7.0, 0.46) - predict_A(3.5, 0.46) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    for (double k : {0.5, 3.5, 10.0, 40.0}) {
        CHECK(predict_A(k, 0.46) - std::log(k) == doctest::Approx(predict_A(1.0, 0.46)).epsilon(1e-14));
        CHECK(predict_A(k, 0.46) - lyapunov_estimate(k) == doctest::Approx(predict_A(2.0, 0.46)).epsilon(1e-14));
    }
}

TEST_CASE("A against ln K regression") {
    std::vector<KickFit> fits;
    for (double k : {3.5, 5.0, 7.0, 10.0}) fits.push_back({k, {1.3 + std::log(k), 0.5, 10, 100, 0.0, 91}});
    const auto line = regress_A_vs_lnK(fits);
    CHECK(line.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(line.intercept == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(line.r2 == doctest::Approx(1.0).epsilon(1e-12));
    fits.pop_back();
    CHECK_THROWS_AS(regress_A_vs_lnK(fits), std::invalid_argument);
}

TEST_CASE("convergence metric") {
    const auto q = synthetic(2.0, 0.5, 60);
    CHECK(convergence_metric(q, q) == 0.0);
    auto c = q;
    c.entropy[30] += 0.2;
    c.entropy[3] += 5.0; // before the window
    CHECK(convergence_metric(q, c) == doctest::Approx(0.2));
    CHECK(convergence_metric(q, c, {1, -1}) == doctest::Approx(5.0));
    c.kicks.back() += 1;
    CHECK_THROWS_AS(convergence_metric(q, c), std::invalid_argument);
}

TEST_CASE("line fit basics") {
    const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    const std::vector<double> same{1, 1, 1};
    CHECK_THROWS_AS(fit_line(same, same), std::invalid_argument);
}
