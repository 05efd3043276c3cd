#include "rotorbath/quantum.hpp"

#include "rotorbath/bessel.hpp"
#include "rotorbath/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace rotorbath::quantum {

namespace {

constexpr double kTailLimit = 1e-14;
constexpr double kLeakLimit = 1e-6;
constexpr double kPositivityLimit = -1e-6;

// Y = U X for banded X (half bandwidth bx). Result has half bandwidth bx + w, clipped to the
// matrix.
Eigen::MatrixXcd banded_left_multiply(const KickMatrix& u, const Eigen::MatrixXcd& x, int bx) {
    const int n = static_cast<int>(x.rows());
    const int w = u.band_width();
    const int bout = std::min(n - 1, bx + w);
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
    for (int col = 0; col < n; ++col) {
        const int row_lo = std::max(0, col - bout);
        const int row_hi = std::min(n - 1, col + bout);
        const int m_col_lo = std::max(0, col - bx);
        const int m_col_hi = std::min(n - 1, col + bx);
        for (int row = row_lo; row <= row_hi; ++row) {
            const int m_lo = std::max(m_col_lo, row - w);
            const int m_hi = std::min(m_col_hi, row + w);
            Complex acc{};
            for (int m = m_lo; m <= m_hi; ++m) acc += u.element(row - m) * x(m, col);
            y(row, col) = acc;
        }
    }
    return y;
}

Eigen::VectorXd banded_eigenvalues(const Eigen::MatrixXcd& a, int kd) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    const lapack_int ldab = kd + 1;
    std::vector<lapack_complex_double> ab(static_cast<std::size_t>(ldab) * n);
    for (lapack_int j = 0; j < n; ++j) {
        for (lapack_int i = j; i <= std::min<lapack_int>(n - 1, j + kd); ++i) {
            const Complex z = a(i, j);
            ab[static_cast<std::size_t>(i - j) + static_cast<std::size_t>(j) * ldab] =
                lapack_make_complex_double(z.real(), z.imag());
        }
    }
    Eigen::VectorXd w(n);
    const lapack_int info =
        LAPACKE_zhbev(LAPACK_COL_MAJOR, 'N', 'L', n, kd, ab.data(), ldab, w.data(), nullptr, 1);
    if (info != 0) throw NumericalError("banded eigensolver failed (zhbev info=" + std::to_string(info) + ")");
    return w;
}

} // namespace

WavePacket make_wavepacket(double hbar, double p_center, double q_center, int l_max, double width) {
    const double l0 = p_center / hbar;
    WavePacket psi;
    psi.width = width;
    psi.b = Complex(2.0 * width * l0, -q_center);
    psi.l_max = l_max;
    psi.coeffs.resize(psi.dim());
    for (int l = -l_max; l <= l_max; ++l) {
        // -a l^2 + b l with the constant a l0^2 absorbed into the normalization.
        const double d = l - l0;
        psi.coeffs[l + l_max] = std::exp(-width * d * d) * std::polar(1.0, -q_center * l);
    }
    psi.coeffs /= psi.coeffs.norm();
    if (std::abs(psi.coeffs[0]) >= kTailLimit || std::abs(psi.coeffs[psi.dim() - 1]) >= kTailLimit)
        throw ConfigError("basis truncation: l_max = " + std::to_string(l_max) + " does not contain the packet");
    return psi;
}

DensityMatrix::DensityMatrix(int l_max)
    : l_max_(l_max), bandwidth_(0), rho_(Eigen::MatrixXcd::Zero(2 * l_max + 1, 2 * l_max + 1)) {}

void DensityMatrix::set_bandwidth(int b) { bandwidth_ = std::clamp(b, 0, static_cast<int>(dim()) - 1); }

double DensityMatrix::trace() const { return rho_.trace().real(); }

double DensityMatrix::hermiticity_error() const {
    const int n = static_cast<int>(dim());
    double err = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = std::max(0, j - bandwidth_); i <= j; ++i) err = std::max(err, std::abs(rho_(i, j) - std::conj(rho_(j, i))));
    return err;
}

DensityMatrix pure_density(const WavePacket& psi) {
    DensityMatrix rho(psi.l_max);
    rho.matrix() = psi.coeffs * psi.coeffs.adjoint();
    rho.set_bandwidth(psi.dim() - 1);
    return rho;
}

KickMatrix::KickMatrix(int dim, std::vector<Complex> band) : dim_(dim), band_(std::move(band)) {}

Eigen::MatrixXcd KickMatrix::dense() const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
        for (int i = 0; i < dim_; ++i) m(i, j) = element(i - j);
    return m;
}

KickMatrix kick_matrix(double kick_strength, double hbar, int l_max, double band_tol) {
    const double x = kick_strength / hbar;
    const int min_band = static_cast<int>(std::ceil(x)) + 40;
    int nu_hi = min_band + 20 + static_cast<int>(std::ceil(10.0 * std::cbrt(x)));
    std::vector<double> j = bessel_j_sequence(x, nu_hi);
    while (std::abs(j.back()) >= band_tol) {
        nu_hi *= 2;
        j = bessel_j_sequence(x, nu_hi);
    }
    int last = 0;
    for (int nu = 0; nu <= nu_hi; ++nu)
        if (std::abs(j[nu]) >= band_tol) last = nu;
    const int band = std::max(min_band, last);

    static constexpr Complex kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<Complex> entries(static_cast<std::size_t>(band) + 1);
    for (int nu = 0; nu <= band; ++nu) entries[nu] = kPowersOfI[nu % 4] * (nu <= nu_hi ? j[nu] : 0.0);
    return KickMatrix(2 * l_max + 1, std::move(entries));
}

DensityMatrix bath_step(const DensityMatrix& rho, const bath::BathKernels& kernels, double hbar) {
    const int n = static_cast<int>(rho.dim());
    const int l_max = rho.l_max();
    const int old_band = rho.bandwidth();

    // Factorized: exp(-i theta_m) exp(+i theta_n) exp(-a2 (m-n)^2), theta_m = c m^2.
    const double c = 0.5 * hbar * kernels.t + kernels.a1_coeff;
    std::vector<Complex> phase(n);
    for (int i = 0; i < n; ++i) {
        const double l = i - l_max;
        phase[i] = std::polar(1.0, -c * l * l);
    }
    std::vector<double> decay;
    decay.reserve(static_cast<std::size_t>(old_band) + 1);
    for (int k = 0; k <= old_band; ++k) {
        const double f = bath::decay_factor(kernels.a2_coeff * static_cast<double>(k) * k);
        if (f == 0.0) break;
        decay.push_back(f);
    }
    const int new_band = static_cast<int>(decay.size()) - 1;

    DensityMatrix out = rho;
    auto& m = out.matrix();
    for (int col = 0; col < n; ++col) {
        const int lo = std::max(0, col - old_band);
        const int hi = std::min(n - 1, col + old_band);
        for (int row = lo; row <= hi; ++row) {
            const int k = std::abs(row - col);
            if (k > new_band) {
                m(row, col) = 0.0;
            } else if (k > 0) {
                m(row, col) *= phase[row] * std::conj(phase[col]) * decay[k];
            }
        }
    }
    out.set_bandwidth(new_band);
    return out;
}

DensityMatrix bath_step(const DensityMatrix& rho, double t, double hbar, const BathParams& bath,
                        double product_tol) {
    return bath_step(rho, bath::evaluate(t, hbar, bath, product_tol), hbar);
}

double trim_coherences(DensityMatrix& rho, double tol) {
    const int n = static_cast<int>(rho.dim());
    const int band = rho.bandwidth();
    auto& m = rho.matrix();
    std::vector<double> weight(static_cast<std::size_t>(band) + 1, 0.0);
    for (int col = 0; col < n; ++col)
        for (int row = std::max(0, col - band); row <= std::min(n - 1, col + band); ++row)
            weight[std::abs(row - col)] += std::norm(m(row, col));

    double dropped = 0.0;
    int keep = band;
    while (keep > 0 && dropped + weight[keep] <= tol * tol) {
        dropped += weight[keep];
        --keep;
    }
    if (keep == band) return 0.0;
    for (int col = 0; col < n; ++col)
        for (int row = std::max(0, col - band); row <= std::min(n - 1, col + band); ++row)
            if (std::abs(row - col) > keep) m(row, col) = 0.0;
    rho.set_bandwidth(keep);
    return std::sqrt(dropped);
}

DensityMatrix conjugate_by_kick(const DensityMatrix& rho, const KickMatrix& u) {
    if (u.dim() != rho.dim()) throw std::invalid_argument("kick_step: dimension mismatch");
    const int n = static_cast<int>(rho.dim());
    const int w = u.band_width();
    const int b = rho.bandwidth();

    // rho' = T U^dagger with T = U rho, and rho'^dagger = U T^dagger.
    const Eigen::MatrixXcd t = banded_left_multiply(u, rho.matrix(), b);
    const int bt = std::min(n - 1, b + w);
    const Eigen::MatrixXcd t_adj = t.adjoint();
    const Eigen::MatrixXcd y = banded_left_multiply(u, t_adj, bt);

    DensityMatrix out(rho.l_max());
    out.matrix() = 0.5 * (y + y.adjoint());
    out.set_bandwidth(std::min(n - 1, bt + w));
    return out;
}

DensityMatrix kick_step(const DensityMatrix& rho, const KickMatrix& u) {
    DensityMatrix out = conjugate_by_kick(rho, u);
    const double drift = std::abs(out.trace() - rho.trace());
    if (drift > kLeakLimit)
        throw NumericalError("basis too small: kick leaked " + std::to_string(drift) +
                             " of the trace past |l| = " + std::to_string(rho.l_max()));
    return out;
}

Eigen::VectorXd eigenvalues(const DensityMatrix& rho) {
    const int n = static_cast<int>(rho.dim());
    const int b = rho.bandwidth();
    if (b == 0) {
        Eigen::VectorXd d = rho.matrix().diagonal().real();
        std::sort(d.begin(), d.end());
        return d;
    }
    if (b < n / 4) return banded_eigenvalues(rho.matrix(), b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    return solver.eigenvalues();
}

double entropy_from_eigenvalues(const Eigen::VectorXd& lambda, double eig_floor) {
    double s = 0.0;
    for (const double l : lambda) {
        if (l < kPositivityLimit)
            throw NumericalError("positivity violation: eigenvalue " + std::to_string(l));
        if (l > eig_floor) s -= l * std::log(l);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho, double eig_floor) {
    return entropy_from_eigenvalues(eigenvalues(rho), eig_floor);
}

double quantum_energy(const DensityMatrix& rho, double hbar) {
    double e = 0.0;
    for (int l = -rho.l_max(); l <= rho.l_max(); ++l) {
        const double p = hbar * l;
        e += rho(l, l).real() * 0.5 * p * p;
    }
    return e;
}

EntropySeries QuantumRun::series() const {
    EntropySeries s;
    s.label = "quantum";
    for (const auto& r : records) {
        s.kicks.push_back(r.kick);
        s.entropy.push_back(r.entropy);
        s.energy.push_back(r.energy);
    }
    return s;
}

QuantumRun run_quantum(const ValidatedConfig& cfg, int n_kicks) {
    const double hbar = cfg.rotor().hbar;
    const auto& num = cfg.numerics();
    const WavePacket psi =
        make_wavepacket(hbar, cfg.p_center(), cfg.run().q_center, cfg.l_max(), cfg.run().packet_width);
    DensityMatrix rho = pure_density(psi);

    QuantumRun run;
    run.records.reserve(static_cast<std::size_t>(n_kicks) + 1);
    {
        const Eigen::VectorXd ev = eigenvalues(rho);
        run.records.push_back({0, entropy_from_eigenvalues(ev, num.eig_floor), quantum_energy(rho, hbar),
                               rho.trace(), ev.minCoeff(), rho.hermiticity_error(), rho.bandwidth()});
    }

    const KickMatrix u = kick_matrix(cfg.rotor().kick_strength, hbar, cfg.l_max(), num.band_tol);
    const bath::KernelCache kernels(hbar, cfg.bath(), num.product_tol);
    const bath::BathKernels period = kernels.at(1.0);

    for (int n = 1; n <= n_kicks; ++n) {
        try {
            rho = bath_step(rho, period, hbar);
            trim_coherences(rho, num.coherence_tol);
            const Eigen::VectorXd ev = eigenvalues(rho);
            const double s = entropy_from_eigenvalues(ev, num.eig_floor);
            rho = kick_step(rho, u);
            run.records.push_back({n, s, quantum_energy(rho, hbar), rho.trace(), ev.minCoeff(),
                                   rho.hermiticity_error(), rho.bandwidth()});
        } catch (const NumericalError& e) {
            throw NumericalError("quantum run, kick " + std::to_string(n) + ": " + e.what());
        }
    }
    return run;
}

} // namespace rotorbath::quantum
