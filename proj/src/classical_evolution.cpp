#include "rotorbath/classical_evolution.hpp"

#include "rotorbath/bath_kernels.hpp"
#include "rotorbath/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

namespace rotorbath::classical {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEntropyCutoff = 1e-30;
constexpr double kBoundaryLimit = 1e-10;
constexpr double kOutflowLimit = 1e-8;

// FFTW planning is not thread-safe.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// Circular convolution of rows of length n with a fixed real kernel.
class RowConvolver {
public:
    RowConvolver(std::span<const double> kernel) : n_(static_cast<int>(kernel.size())), spectrum_(n_ / 2 + 1) {
        real_ = fftw_alloc_real(static_cast<std::size_t>(n_));
        freq_ = fftw_alloc_complex(static_cast<std::size_t>(n_ / 2 + 1));
        {
            std::lock_guard lock(fftw_planner_mutex());
            forward_ = fftw_plan_dft_r2c_1d(n_, real_, freq_, FFTW_ESTIMATE);
            backward_ = fftw_plan_dft_c2r_1d(n_, freq_, real_, FFTW_ESTIMATE);
        }
        std::copy(kernel.begin(), kernel.end(), real_);
        fftw_execute(forward_);
        for (int k = 0; k <= n_ / 2; ++k) spectrum_[k] = {freq_[k][0] / n_, freq_[k][1] / n_};
    }
    ~RowConvolver() {
        {
            std::lock_guard lock(fftw_planner_mutex());
            fftw_destroy_plan(forward_);
            fftw_destroy_plan(backward_);
        }
        fftw_free(real_);
        fftw_free(freq_);
    }
    RowConvolver(const RowConvolver&) = delete;
    RowConvolver& operator=(const RowConvolver&) = delete;

    void apply(std::span<double> row) {
        std::copy(row.begin(), row.end(), real_);
        fftw_execute(forward_);
        for (int k = 0; k <= n_ / 2; ++k) {
            const std::complex<double> z = std::complex<double>(freq_[k][0], freq_[k][1]) * spectrum_[k];
            freq_[k][0] = z.real();
            freq_[k][1] = z.imag();
        }
        fftw_execute(backward_);
        std::copy(real_, real_ + n_, row.begin());
    }

private:
    int n_;
    std::vector<std::complex<double>> spectrum_;
    double* real_ = nullptr;
    fftw_complex* freq_ = nullptr;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

// Wrapped Gaussian of variance `var` sampled at the grid offsets, truncated at 8 sigma and
// normalized to unit sum.
std::vector<double> wrapped_gaussian(int nq, double dq, double var) {
    const double sigma = std::sqrt(var);
    const double reach = 8.0 * sigma;
    const int images = static_cast<int>(std::ceil(reach / kTwoPi)) + 1;
    std::vector<double> w(static_cast<std::size_t>(nq), 0.0);
    double total = 0.0;
    for (int j = 0; j < nq; ++j) {
        const double d = (j <= nq / 2 ? j : j - nq) * dq;
        double acc = 0.0;
        for (int m = -images; m <= images; ++m) {
            const double x = d + kTwoPi * m;
            if (std::abs(x) <= reach) acc += std::exp(-0.5 * x * x / var);
        }
        w[j] = acc;
        total += acc;
    }
    if (total == 0.0) {
        w.assign(w.size(), 0.0);
        w[0] = 1.0;
        return w;
    }
    for (auto& v : w) v /= total;
    return w;
}

} // namespace

PhaseSpaceGrid::PhaseSpaceGrid(const GridSpec& spec, double hbar)
    : nq_(spec.nq),
      np_(spec.np),
      hbar_(hbar),
      dq_(kTwoPi / spec.nq),
      dp_(2.0 * spec.p_extent / spec.np),
      p_min_(spec.p_center - spec.p_extent),
      values_(static_cast<std::size_t>(spec.nq) * spec.np, 0.0) {
    if (spec.nq < 8 || spec.np < 8 || !(spec.p_extent > 0.0))
        throw ConfigError("phase-space grid needs nq, np >= 8 and p_extent > 0");
}

double PhaseSpaceGrid::measure() const noexcept { return dq_ * dp_ / (kTwoPi * hbar_); }

double PhaseSpaceGrid::mass() const {
    double s = 0.0;
    for (const double v : values_) s += v;
    return s * measure();
}

double PhaseSpaceGrid::boundary_mass_fraction(int rows) const {
    rows = std::clamp(rows, 0, np_ / 2);
    double edge = 0.0;
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < nq_; ++i) edge += at(j, i) + at(np_ - 1 - j, i);
    const double total = mass() / measure();
    return total > 0.0 ? edge / total : 0.0;
}

void PhaseSpaceGrid::normalize() {
    const double m = mass();
    if (!(m > 0.0)) throw NumericalError("cannot normalize an empty phase-space distribution");
    for (auto& v : values_) v /= m;
}

PhaseSpaceGrid husimi_init(const quantum::WavePacket& psi, const GridSpec& spec, double hbar) {
    PhaseSpaceGrid f(spec, hbar);

    // Only momenta that carry amplitude contribute.
    double peak = 0.0;
    for (int l = -psi.l_max; l <= psi.l_max; ++l) peak = std::max(peak, std::abs(psi.amplitude(l)));
    std::vector<int> support;
    for (int l = -psi.l_max; l <= psi.l_max; ++l)
        if (std::abs(psi.amplitude(l)) > 1e-18 * peak) support.push_back(l);

    const int nq = f.nq();
    std::vector<std::complex<double>> fourier(support.size() * static_cast<std::size_t>(nq));
    for (std::size_t s = 0; s < support.size(); ++s)
        for (int i = 0; i < nq; ++i) fourier[s * nq + i] = std::polar(1.0, support[s] * f.q(i));

    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    std::vector<std::complex<double>> amp(static_cast<std::size_t>(nq));
    for (int j = 0; j < f.np(); ++j) {
        const double u = f.p(j) / hbar;
        std::fill(amp.begin(), amp.end(), std::complex<double>{});
        for (std::size_t s = 0; s < support.size(); ++s) {
            const double d = u - support[s];
            if (std::abs(d) > 40.0) continue;
            const std::complex<double> c = psi.amplitude(support[s]) * std::exp(-0.5 * d * d);
            for (int i = 0; i < nq; ++i) amp[i] += c * fourier[s * nq + i];
        }
        auto row = f.row(j);
        for (int i = 0; i < nq; ++i) row[i] = inv_sqrt_pi * std::norm(amp[i]);
    }
    f.normalize();
    if (const double edge = f.boundary_mass_fraction(); edge > kBoundaryLimit)
        throw NumericalError("p-grid too small: initial Husimi density has " + std::to_string(edge) +
                             " of its mass on the boundary rows");
    return f;
}

PhaseSpaceGrid bath_drift_smear(const PhaseSpaceGrid& f, double t, const BathParams& bath) {
    PhaseSpaceGrid out = f;
    const int nq = f.nq();
    const double rate = t + bath::drift_rate(t, bath);

    std::vector<double> shifted(static_cast<std::size_t>(nq));
    for (int j = 0; j < f.np(); ++j) {
        // new(q) = old(q - shift): fractional index i - shift/dq.
        const double offset = -f.p(j) * rate / f.dq();
        const double base = std::floor(offset);
        const double frac = offset - base;
        const int k0 = static_cast<int>(((static_cast<long long>(base) % nq) + nq) % nq);
        const auto src = f.row(j);
        for (int i = 0; i < nq; ++i) {
            int a = i + k0;
            if (a >= nq) a -= nq;
            const int b = a + 1 == nq ? 0 : a + 1;
            shifted[i] = (1.0 - frac) * src[a] + frac * src[b];
        }
        std::copy(shifted.begin(), shifted.end(), out.row(j).begin());
    }

    const double var = bath::s_variance(t, bath) / bath.beta;
    if (var > 0.0) {
        const auto kernel = wrapped_gaussian(nq, f.dq(), var);
        RowConvolver conv(kernel);
        for (int j = 0; j < f.np(); ++j) {
            auto row = out.row(j);
            conv.apply(row);
            for (auto& v : row) v = std::max(v, 0.0);
        }
    }
    return out;
}

PhaseSpaceGrid kick_shift(const PhaseSpaceGrid& f, double kick_strength) {
    if (kick_strength == 0.0) return f;
    const int nq = f.nq();
    const int np = f.np();

    // Per column: source row index j + base + frac.
    std::vector<int> base(static_cast<std::size_t>(nq));
    std::vector<double> frac(static_cast<std::size_t>(nq));
    for (int i = 0; i < nq; ++i) {
        const double offset = -kick_strength * std::sin(f.q(i)) / f.dp();
        const double fl = std::floor(offset);
        base[i] = static_cast<int>(fl);
        frac[i] = offset - fl;
    }

    PhaseSpaceGrid out = f;
    const double before = f.mass();
    for (int j = 0; j < np; ++j) {
        auto dst = out.row(j);
        for (int i = 0; i < nq; ++i) {
            const int a = j + base[i];
            const double lo = (a >= 0 && a < np) ? f.at(a, i) : 0.0;
            const double hi = (a + 1 >= 0 && a + 1 < np) ? f.at(a + 1, i) : 0.0;
            dst[i] = (1.0 - frac[i]) * lo + frac[i] * hi;
        }
    }
    const double after = out.mass();
    if (before > 0.0) {
        const double lost = (before - after) / before;
        if (lost > kOutflowLimit)
            throw NumericalError("p-grid too small: kick pushed " + std::to_string(lost) + " of the mass off the grid");
        const double scale = before / after;
        for (auto& v : out.values()) v *= scale;
    }
    return out;
}

double classical_entropy(const PhaseSpaceGrid& f) {
    double s = 0.0;
    for (const double v : f.values())
        if (v >= kEntropyCutoff) s -= v * std::log(v);
    return s * f.measure();
}

Marginals marginals(const PhaseSpaceGrid& f) {
    Marginals m;
    const double norm = 1.0 / (kTwoPi * f.hbar());
    m.q.resize(static_cast<std::size_t>(f.nq()));
    m.g1.assign(static_cast<std::size_t>(f.nq()), 0.0);
    m.p.resize(static_cast<std::size_t>(f.np()));
    m.g2.assign(static_cast<std::size_t>(f.np()), 0.0);
    for (int i = 0; i < f.nq(); ++i) m.q[i] = f.q(i);
    for (int j = 0; j < f.np(); ++j) {
        m.p[j] = f.p(j);
        const auto row = f.row(j);
        double row_sum = 0.0;
        for (int i = 0; i < f.nq(); ++i) {
            m.g1[i] += row[i];
            row_sum += row[i];
        }
        m.g2[j] = row_sum * f.dq() * norm;
    }
    for (auto& g : m.g1) g *= f.dp() * norm;
    return m;
}

double classical_energy(const PhaseSpaceGrid& f) {
    double e = 0.0;
    for (int j = 0; j < f.np(); ++j) {
        double row_sum = 0.0;
        for (const double v : f.row(j)) row_sum += v;
        e += row_sum * 0.5 * f.p(j) * f.p(j);
    }
    return e * f.measure();
}

std::string MarginalSnapshot::tag() const {
    if (kick == 0) return "0";
    return std::to_string(kick) + (before_kick ? "-" : "+");
}

EntropySeries ClassicalRun::series() const {
    EntropySeries s;
    s.label = "classical";
    for (const auto& r : records) {
        s.kicks.push_back(r.kick);
        s.entropy.push_back(r.entropy);
        s.energy.push_back(r.energy);
    }
    return s;
}

GridSpec grid_spec(const ValidatedConfig& cfg) {
    return {cfg.numerics().nq, cfg.numerics().np_grid, cfg.p_center(), cfg.p_extent()};
}

ClassicalRun run_classical(const ValidatedConfig& cfg, int n_kicks, std::span<const SnapshotRequest> snapshots) {
    const double hbar = cfg.rotor().hbar;
    const double kick = cfg.rotor().kick_strength;
    const auto wants = [&](int n, bool before) {
        return std::any_of(snapshots.begin(), snapshots.end(), [&](const SnapshotRequest& r) {
            return r.kick == n && (n == 0 || r.before_kick == before);
        });
    };

    const auto psi = quantum::make_wavepacket(hbar, cfg.p_center(), cfg.run().q_center, cfg.l_max(),
                                              cfg.run().packet_width);
    PhaseSpaceGrid f = husimi_init(psi, grid_spec(cfg), hbar);

    ClassicalRun run;
    run.records.reserve(static_cast<std::size_t>(n_kicks) + 1);
    double entropy = classical_entropy(f);
    run.records.push_back({0, entropy, classical_energy(f), f.mass(), f.boundary_mass_fraction(), 0.0});
    if (wants(0, false)) run.snapshots.push_back({0, false, marginals(f)});

    for (int n = 1; n <= n_kicks; ++n) {
        try {
            f = bath_drift_smear(f, 1.0, cfg.bath());
            const double smeared = classical_entropy(f);
            if (wants(n, true)) run.snapshots.push_back({n, true, marginals(f)});
            f = kick_shift(f, kick);
            const double after = classical_entropy(f);
            run.records.push_back(
                {n, after, classical_energy(f), f.mass(), f.boundary_mass_fraction(), smeared - entropy});
            entropy = after;
            if (wants(n, false)) run.snapshots.push_back({n, false, marginals(f)});
        } catch (const NumericalError& e) {
            throw NumericalError("classical run, kick " + std::to_string(n) + ": " + e.what());
        }
    }
    return run;
}

} // namespace rotorbath::classical
