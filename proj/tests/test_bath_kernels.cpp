#include "rotorbath/bath_kernels.hpp"
#include "rotorbath/error.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

using namespace rotorbath;
using namespace rotorbath::bath;

namespace {

BathParams paper_bath() {
    BathParams b;
    b.eta = 1.0;
    b.omega_c = 5.0 / 0.46;
    b.beta = 0.1;
    return b;
}

} // namespace

TEST_CASE("s(t) vanishes at t = 0 and grows") {
    const auto b = paper_bath();
    CHECK(s_variance(0.0, b) == 0.0);
    double prev = 0.0;
    for (double t = 1e-4; t < 50.0; t *= 1.7) {
        const double s = s_variance(t, b);
        REQUIRE(s > prev);
        prev = s;
    }
}

TEST_CASE("s(t) asymptotes") {
    auto b = paper_bath();
    b.phi_prime = 1.3;
    const double wc = *b.omega_c;
    const double g = b.eta * b.phi_prime * b.phi_prime;

    const double t_small = 1e-3 / wc;
    CHECK(s_variance(t_small, b) == doctest::Approx(g * wc * t_small * t_small).epsilon(0.01));

    const double t_large = 1e3 / wc;
    CHECK(s_variance(t_large, b) == doctest::Approx(g * std::numbers::pi * t_large).epsilon(0.01));
}

TEST_CASE("s(t) series and closed form agree across the switch-over") {
    auto b = paper_bath();
    const double wc = *b.omega_c;
    for (double u : {0.5e-2, 0.99e-2, 1.01e-2, 2e-2}) {
        const double t = u / wc;
        // closed form in long double as the reference
        const long double ul = u;
        const long double f = ul * std::atan(ul) - 0.5L * std::log1p(ul * ul);
        const double ref = static_cast<double>(2.0L * b.eta * f / wc);
        CHECK(s_variance(t, b) == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("A1 examples and antisymmetry") {
    const auto b = paper_bath();
    CHECK(dephasing_A1(4, 4, 1.0, 0.46, b) == 0.0);
    CHECK(dephasing_A1(1, 0, 1e9, 0.46, b) == doctest::Approx(0.46 * std::numbers::pi / 2).epsilon(1e-8));
    CHECK(dephasing_A1(1, 0, 1e9, 0.46, b) == doctest::Approx(0.7226).epsilon(1e-4));
    for (int m = -5; m <= 5; ++m)
        for (int n = -5; n <= 5; ++n) REQUIRE(dephasing_A1(m, n, 0.7, 0.46, b) == -dephasing_A1(n, m, 0.7, 0.46, b));
}

TEST_CASE("A1 and A2 depend only on m^2 - n^2 and (m - n)^2") {
    const auto b = paper_bath();
    // 7^2 - 1^2 = 8^2 - 4^2
    CHECK(dephasing_A1(7, 1, 0.9, 0.46, b) == dephasing_A1(8, 4, 0.9, 0.46, b));
    for (int d = -4; d <= 4; ++d) {
        const double ref = dephasing_A2(d, 0, 0.9, 0.46, b);
        for (int m = -6; m <= 6; ++m) {
            REQUIRE(dephasing_A2(m + d, m, 0.9, 0.46, b) == ref);
            REQUIRE(dephasing_A2(m, m + d, 0.9, 0.46, b) == ref);
        }
    }
}

TEST_CASE("A2 is non-negative, zero on the diagonal and at t = 0, increasing in t") {
    const auto b = paper_bath();
    CHECK(dephasing_A2(3, 3, 2.0, 0.46, b) == 0.0);
    CHECK(dephasing_A2(3, -2, 0.0, 0.46, b) == 0.0);
    double prev = 0.0;
    for (double t = 0.01; t < 20.0; t *= 1.5) {
        const double a = dephasing_A2(2, 1, t, 0.46, b);
        REQUIRE(a > prev);
        prev = a;
    }
    CHECK(decay_factor(dephasing_A2(0, 0, 1.0, 0.46, b)) == 1.0);
}

TEST_CASE("log product matches a brute-force partial product") {
    auto b = paper_bath();
    const double ref = oracle::log_product_bruteforce(1.0, *b.omega_c, b.beta);
    CHECK(std::abs(log_thermal_product(1.0, b) - ref) / ref < 1e-8);

    // full A2 example: m - n = 1, eta = 1, hbar = 0.46, omega_c = 10.87, beta = 0.1, t = 1
    b.omega_c = 10.87;
    const double a2_ref = 0.46 * (0.5 * std::log1p(10.87 * 10.87) + oracle::log_product_bruteforce(1.0, 10.87, 0.1));
    CHECK(std::abs(dephasing_A2(1, 0, 1.0, 0.46, b) - a2_ref) < 1e-10 * a2_ref + 1e-12);
}

TEST_CASE("log product over a grid of (t, beta omega_c)") {
    for (double t : {0.05, 0.3, 1.0, 3.0, 10.0})
        for (double y : {0.05, 0.3, 1.0, 3.0, 10.0}) {
            BathParams b;
            b.omega_c = 10.0;
            b.beta = y / 10.0;
            const double ref = oracle::log_product_bruteforce(t, 10.0, b.beta);
            const double got = log_thermal_product(t, b);
            CAPTURE(t);
            CAPTURE(y);
            CHECK(std::abs(got - ref) / ref < 1e-8);
        }
}

TEST_CASE("pathological beta omega_c reports non-convergence") {
    BathParams b;
    b.omega_c = 10.0;
    b.beta = 1e-9;
    CHECK_THROWS_AS(log_thermal_product(1.0, b), NumericalError);
}

TEST_CASE("zero coupling leaves the propagator trivial") {
    auto b = paper_bath();
    b.eta = 0.0;
    const auto k = evaluate(2.0, 0.46, b);
    CHECK(k.s_of_t == 0.0);
    CHECK(k.drift_rate == 0.0);
    CHECK(k.a1_coeff == 0.0);
    CHECK(k.a2_coeff == 0.0);
    for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n) {
            REQUIRE(dephasing_A1(m, n, 2.0, 0.46, b) == 0.0);
            REQUIRE(decay_factor(dephasing_A2(m, n, 2.0, 0.46, b)) == 1.0);
        }
}

TEST_CASE("evaluate bundles the scalar kernels") {
    const auto b = paper_bath();
    const auto k = evaluate(1.0, 0.46, b);
    CHECK(k.t == 1.0);
    CHECK(k.s_of_t == s_variance(1.0, b));
    CHECK(k.drift_rate == drift_rate(1.0, b));
    CHECK(k.a1_coeff == a1_coefficient(1.0, 0.46, b));
    CHECK(k.a2_coeff == a2_coefficient(1.0, 0.46, b));
    CHECK(k.a1_coeff * 3.0 == doctest::Approx(dephasing_A1(2, 1, 1.0, 0.46, b)));
    CHECK(k.a2_coeff * 4.0 == doctest::Approx(dephasing_A2(3, 1, 1.0, 0.46, b)));
}

TEST_CASE("decay factor clamps deep underflow") {
    CHECK(decay_factor(0.0) == 1.0);
    CHECK(decay_factor(699.0) > 0.0);
    CHECK(decay_factor(701.0) == 0.0);
}

TEST_CASE("kernel cache returns the same values from several threads") {
    const auto b = paper_bath();
    const KernelCache cache(0.46, b, 1e-12);
    const auto direct = evaluate(1.0, 0.46, b);
    std::vector<double> got(8);
    std::vector<std::thread> pool;
    for (int i = 0; i < 8; ++i) pool.emplace_back([&, i] { got[i] = cache.at(1.0).a2_coeff; });
    for (auto& th : pool) th.join();
    for (double g : got) CHECK(g == direct.a2_coeff);
    CHECK(cache.at(1.0).s_of_t == direct.s_of_t);
}
