#include "rotorbath/bath_kernels.hpp"
#include "rotorbath/classical_evolution.hpp"
#include "rotorbath/error.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace rotorbath;
using namespace rotorbath::classical;

namespace {

constexpr double kHbar = 0.46;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

BathParams paper_bath(double eta = 1.0) {
    BathParams b;
    b.eta = eta;
    b.omega_c = 5.0 / kHbar;
    b.beta = 0.1;
    return b;
}

quantum::WavePacket paper_packet(double width = 0.5) {
    return quantum::make_wavepacket(kHbar, std::numbers::pi * kHbar, 0.0, 40, width);
}

GridSpec small_grid() { return {256, 1024, std::numbers::pi * kHbar, 8.0}; }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace

TEST_CASE("single-mode packet gives a q-uniform Gaussian in p") {
    quantum::WavePacket psi;
    psi.l_max = 30;
    psi.coeffs = Eigen::VectorXcd::Zero(61);
    psi.coeffs[30] = 1.0;
    const GridSpec spec{64, 512, 0.0, 4.0};
    const auto f = husimi_init(psi, spec, kHbar);
    double err = 0.0;
    for (int j = 0; j < f.np(); ++j) {
        const double expect = std::exp(-f.p(j) * f.p(j) / (kHbar * kHbar)) / std::sqrt(std::numbers::pi);
        for (int i = 0; i < f.nq(); ++i) err = std::max(err, std::abs(f.at(j, i) - expect));
    }
    CHECK(err < 1e-8);
}

TEST_CASE("Husimi grid matches the double-sum form and is 2pi periodic") {
    const auto psi = paper_packet();
    const GridSpec spec{64, 256, std::numbers::pi * kHbar, 6.0};
    const auto f = husimi_init(psi, spec, kHbar);
    double err = 0.0;
    for (int j = 0; j < f.np(); j += 7)
        for (int i = 0; i < f.nq(); i += 5) {
            const double p = f.p(j) / kHbar;
            const double q = f.q(i) + kTwoPi;
            double ref = 0.0;
            for (int m = -40; m <= 40; ++m)
                for (int n = -40; n <= 40; ++n) {
                    const double am = psi.amplitude(m).real(), an = psi.amplitude(n).real();
                    if (am * an == 0.0) continue;
                    ref += am * an / std::sqrt(std::numbers::pi) *
                           std::exp(-p * p + (m + n) * p - 0.5 * (m * m + n * n)) * std::cos((m - n) * q);
                }
            err = std::max(err, std::abs(f.at(j, i) - ref));
        }
    CHECK(err < 1e-6);
}

TEST_CASE("initial Husimi entropy is unity") {
    GridSpec spec{512, 2048, std::numbers::pi * kHbar, 8.0};
    const auto f = husimi_init(paper_packet(), spec, kHbar);
    CHECK(std::abs(f.mass() - 1.0) < 1e-12);
    CHECK(classical_entropy(f) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("narrow p-grid is rejected") {
    CHECK_THROWS_AS(husimi_init(paper_packet(), {64, 128, std::numbers::pi * kHbar, 1.0}, kHbar), NumericalError);
}

TEST_CASE("energy of the initial Husimi density") {
    const auto f = husimi_init(paper_packet(), small_grid(), kHbar);
    // momentum marginal is |a_n|^2 convolved with a Gaussian of variance hbar^2/2
    const auto m = oracle::lattice_gaussian_moments(1.0, std::numbers::pi);
    const double expect = 0.5 * kHbar * kHbar * (m.variance + m.mean * m.mean + 0.5);
    CHECK(classical_energy(f) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("marginals are normalized") {
    const auto f = husimi_init(paper_packet(), small_grid(), kHbar);
    const auto m = marginals(f);
    double i1 = 0.0, i2 = 0.0;
    for (double g : m.g1) i1 += g * f.dq();
    for (double g : m.g2) i2 += g * f.dp();
    CHECK(i1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(i2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform density entropy") {
    const GridSpec spec{32, 64, 0.0, 5.0};
    PhaseSpaceGrid f(spec, kHbar);
    std::fill(f.values().begin(), f.values().end(), 1.0);
    f.normalize();
    const double area = kTwoPi * 2.0 * spec.p_extent;
    CHECK(classical_entropy(f) == doctest::Approx(std::log(area / (kTwoPi * kHbar))).epsilon(1e-12));
}

TEST_CASE("smear keeps g2, conserves mass and raises entropy") {
    auto f = husimi_init(paper_packet(), small_grid(), kHbar);
    for (double eta : {0.0, 0.01, 1.0}) {
        const auto g = bath_drift_smear(f, 1.0, paper_bath(eta));
        CAPTURE(eta);
        CHECK(max_abs_diff(marginals(f).g2, marginals(g).g2) < 1e-10);
        CHECK(std::abs(g.mass() - 1.0) < 1e-12);
        CHECK(classical_entropy(g) >= classical_entropy(f) - 1e-8);
        CHECK(*std::min_element(g.values().begin(), g.values().end()) >= 0.0);
    }
}

TEST_CASE("zero coupling is a pure shear") {
    const GridSpec spec{512, 64, 0.0, 2.0};
    PhaseSpaceGrid f(spec, kHbar);
    for (int j = 0; j < f.np(); ++j)
        for (int i = 0; i < f.nq(); ++i) f.at(j, i) = 1.0 + 0.5 * std::cos(f.q(i));
    const auto g = bath_drift_smear(f, 1.0, paper_bath(0.0));
    double err = 0.0;
    for (int j = 0; j < f.np(); ++j)
        for (int i = 0; i < f.nq(); ++i) err = std::max(err, std::abs(g.at(j, i) - (1.0 + 0.5 * std::cos(f.q(i) - f.p(j)))));
    CHECK(err < 1e-4);
}

TEST_CASE("point mass spreads into a Gaussian of variance s/beta") {
    const auto bath = paper_bath(0.01);
    const double var = bath::s_variance(1.0, bath) / bath.beta;
    const GridSpec spec{1024, 9, 0.0, 1.0}; // middle row sits at p = 0
    PhaseSpaceGrid f(spec, kHbar);
    f.at(4, 0) = 1.0;
    const auto g = bath_drift_smear(f, 1.0, bath);
    const auto row = g.row(4);
    double total = 0.0, m2 = 0.0;
    for (int i = 0; i < g.nq(); ++i) {
        const double d = std::remainder(g.q(i), kTwoPi);
        total += row[i];
        m2 += row[i] * d * d;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m2 / total == doctest::Approx(var).epsilon(1e-3));
    const double peak = g.dq() / std::sqrt(kTwoPi * var);
    CHECK(row[0] == doctest::Approx(peak).epsilon(1e-3));
    const int k = static_cast<int>(std::round(std::sqrt(var) / g.dq()));
    CHECK(row[k] == doctest::Approx(peak * std::exp(-0.5 * std::pow(k * g.dq(), 2) / var)).epsilon(1e-3));
}

TEST_CASE("kick shift") {
    const auto f = bath_drift_smear(husimi_init(paper_packet(), small_grid(), kHbar), 1.0, paper_bath(0.01));
    CHECK(kick_shift(f, 0.0).values() == f.values());

    const auto g = kick_shift(f, 3.5);
    CHECK(std::abs(g.mass() - 1.0) < 1e-6);
    // sin q = 0 columns stay put
    double err = 0.0;
    for (int j = 0; j < f.np(); ++j) {
        err = std::max(err, std::abs(g.at(j, 0) - f.at(j, 0)));
        err = std::max(err, std::abs(g.at(j, f.nq() / 2) - f.at(j, f.nq() / 2)));
    }
    CHECK(err < 1e-12);
    CHECK(max_abs_diff(marginals(f).g1, marginals(g).g1) < 1e-4);
    // a column moves by -K sin q: momentum mean of column q = pi/2 drops by K
    auto column_mean = [](const PhaseSpaceGrid& h, int i) {
        double w = 0.0, s = 0.0;
        for (int j = 0; j < h.np(); ++j) {
            w += h.at(j, i);
            s += h.at(j, i) * h.p(j);
        }
        return s / w;
    };
    const int quarter = f.nq() / 4;
    CHECK(column_mean(g, quarter) - column_mean(f, quarter) == doctest::Approx(3.5).epsilon(1e-6));
}

TEST_CASE("kick past the grid edge is reported") {
    const auto f = husimi_init(paper_packet(), {64, 256, std::numbers::pi * kHbar, 5.0}, kHbar);
    CHECK_THROWS_AS(kick_shift(f, 4.0), NumericalError);
}

TEST_CASE("classical run records") {
    RunParams run;
    run.kicks = 6;
    NumericsParams num;
    num.nq = 256;
    num.np_grid = 1024;
    const auto cfg = validate({3.5, kHbar}, paper_bath(), num, run);
    const std::vector<SnapshotRequest> req{{0, false}, {1, true}, {3, false}};
    const auto r = run_classical(cfg, 6, req);
    REQUIRE(r.records.size() == 7);
    CHECK(r.records[0].entropy == doctest::Approx(1.0).epsilon(0.02));
    for (const auto& rec : r.records) {
        CHECK(std::abs(rec.mass - 1.0) < 1e-6);
        CHECK(rec.boundary_fraction < 1e-10);
        if (rec.kick > 0) CHECK(rec.smear_entropy_change >= -1e-8);
    }
    REQUIRE(r.snapshots.size() == 3);
    CHECK(r.snapshots[0].tag() == "0");
    CHECK(r.snapshots[1].tag() == "1-");
    CHECK(r.snapshots[2].tag() == "3+");
    // strong coupling nearly uniformizes q before the first kick
    double dev = 0.0;
    for (double g : r.snapshots[1].marginals.g1) dev = std::max(dev, std::abs(g * kTwoPi - 1.0));
    CHECK(dev < 0.05);
    CHECK(r.series().consistent());
}

TEST_CASE("without coupling or kicks g2 and energy are constant") {
    BathParams bath;
    bath.eta = 0.0;
    RunParams run;
    run.kicks = 4;
    NumericsParams num;
    num.nq = 128;
    num.np_grid = 512;
    const auto cfg = validate({0.0, kHbar}, bath, num, run);
    const std::vector<SnapshotRequest> req{{0, false}, {4, false}};
    const auto r = run_classical(cfg, 4, req);
    CHECK(max_abs_diff(r.snapshots[0].marginals.g2, r.snapshots[1].marginals.g2) < 1e-10);
    for (const auto& rec : r.records) CHECK(rec.energy == doctest::Approx(r.records[0].energy).epsilon(1e-12));
}
