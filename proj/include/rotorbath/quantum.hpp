#pragma once

#include "rotorbath/bath_kernels.hpp"
#include "rotorbath/params.hpp"
#include "rotorbath/series.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace rotorbath::quantum {

using Complex = std::complex<double>;

// Momentum-basis amplitudes a_l = N exp(-a l^2 + b l), l in [-l_max, l_max].
struct WavePacket {
    double width = 0.5; // a
    Complex b;
    int l_max = 0;
    Eigen::VectorXcd coeffs; // coeffs[l + l_max]

    Complex amplitude(int l) const { return coeffs[l + l_max]; }
    int dim() const { return 2 * l_max + 1; }
};

// Packet centered at momentum p_center and angle q_center: Re b = 2 a p_center/hbar,
// Im b = -q_center. Throws ConfigError ("basis truncation") if |a_l| >= 1e-14 at l = +-l_max.
WavePacket make_wavepacket(double hbar, double p_center, double q_center, int l_max, double width = 0.5);

// Reduced density operator in the truncated momentum basis. Row/column index i holds
// momentum label l = i - l_max. Entries with |i - j| > bandwidth() are exactly zero.
class DensityMatrix {
public:
    explicit DensityMatrix(int l_max);

    int l_max() const noexcept { return l_max_; }
    Eigen::Index dim() const noexcept { return rho_.rows(); }

    // Access by momentum labels.
    Complex operator()(int m, int n) const { return rho_(m + l_max_, n + l_max_); }
    Complex& operator()(int m, int n) { return rho_(m + l_max_, n + l_max_); }

    const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }
    Eigen::MatrixXcd& matrix() noexcept { return rho_; }

    int bandwidth() const noexcept { return bandwidth_; }
    // Caller guarantees every entry outside the band is zero.
    void set_bandwidth(int b);

    double trace() const;
    // max |rho - rho^dagger|
    double hermiticity_error() const;

private:
    int l_max_;
    int bandwidth_;
    Eigen::MatrixXcd rho_;
};

DensityMatrix pure_density(const WavePacket& psi);

// Banded Toeplitz kick operator <l|U_k|m> = i^(l-m) J_(l-m)(K/hbar).
class KickMatrix {
public:
    KickMatrix(int dim, std::vector<Complex> band);

    int dim() const noexcept { return dim_; }
    int band_width() const noexcept { return static_cast<int>(band_.size()) - 1; }
    // Entry for offset l - m; symmetric in the offset.
    Complex element(int offset) const {
        const int k = offset < 0 ? -offset : offset;
        return k < static_cast<int>(band_.size()) ? band_[k] : Complex{};
    }
    Complex operator()(int row, int col) const { return element(row - col); }
    Eigen::MatrixXcd dense() const;

private:
    int dim_;
    std::vector<Complex> band_;
};

// Band runs to the last |J_nu| >= band_tol and never below ceil(K/hbar) + 40.
KickMatrix kick_matrix(double kick_strength, double hbar, int l_max, double band_tol);

// rho_mn -> exp[-i hbar (m^2-n^2) t/2 - i A1_mn - A2_mn] rho_mn with t = kernels.t.
DensityMatrix bath_step(const DensityMatrix& rho, const bath::BathKernels& kernels, double hbar);
DensityMatrix bath_step(const DensityMatrix& rho, double t, double hbar, const BathParams& bath,
                        double product_tol = 1e-12);

// Zeroes the outermost diagonals whose combined Frobenius norm is at most `tol` and narrows
// the recorded bandwidth. Returns the Frobenius norm removed.
double trim_coherences(DensityMatrix& rho, double tol);

// U rho U^dagger on the truncated basis, re-symmetrized as (X + X^dagger)/2. No leak check.
DensityMatrix conjugate_by_kick(const DensityMatrix& rho, const KickMatrix& u);

// conjugate_by_kick() that throws NumericalError if the trace changes by more than
// 1e-6 (probability pushed past the basis edge).
DensityMatrix kick_step(const DensityMatrix& rho, const KickMatrix& u);

// Ascending eigenvalues; banded storage is used when the bandwidth is small.
Eigen::VectorXd eigenvalues(const DensityMatrix& rho);

// -sum lambda ln lambda over eigenvalues above eig_floor. Throws NumericalError on an
// eigenvalue below -1e-6.
double entropy_from_eigenvalues(const Eigen::VectorXd& lambda, double eig_floor = 1e-14);
double von_neumann_entropy(const DensityMatrix& rho, double eig_floor = 1e-14);

// sum_m rho_mm (hbar m)^2 / 2
double quantum_energy(const DensityMatrix& rho, double hbar);

struct StepRecord {
    int kick = 0;
    double entropy = 0.0;
    double energy = 0.0;
    double trace = 1.0;
    double min_eigenvalue = 0.0;
    double hermiticity_error = 0.0;
    int bandwidth = 0;
};

struct QuantumRun {
    std::vector<StepRecord> records; // records[0] is the initial pure state
    EntropySeries series() const;
};

// Per kick: bath_step over one period, then the kick. The entropy of kick n is evaluated on
// the dephased state just before the kick; U_k is unitary, so this equals the entropy just
// after it up to the basis-edge leak.
QuantumRun run_quantum(const ValidatedConfig& cfg, int n_kicks);

} // namespace rotorbath::quantum
