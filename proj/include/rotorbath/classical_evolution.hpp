#pragma once

#include "rotorbath/params.hpp"
#include "rotorbath/quantum.hpp"
#include "rotorbath/series.hpp"

#include <span>
#include <string>
#include <vector>

namespace rotorbath::classical {

struct GridSpec {
    int nq = 512;
    int np = 4096;
    double p_center = 0.0;
    double p_extent = 10.0;
};

// Distribution f(q, p) on a cylinder. q is periodic with nq points at q_i = i * 2pi/nq;
// p has np cell centers over [p_center - p_extent, p_center + p_extent]. Storage is row-major
// with one row per momentum. The measure is dq dp / (2 pi hbar).
class PhaseSpaceGrid {
public:
    PhaseSpaceGrid(const GridSpec& spec, double hbar);

    int nq() const noexcept { return nq_; }
    int np() const noexcept { return np_; }
    double hbar() const noexcept { return hbar_; }
    double dq() const noexcept { return dq_; }
    double dp() const noexcept { return dp_; }
    double p_min() const noexcept { return p_min_; }
    double p_max() const noexcept { return p_min_ + np_ * dp_; }
    double q(int i) const noexcept { return i * dq_; }
    double p(int j) const noexcept { return p_min_ + (j + 0.5) * dp_; }
    double measure() const noexcept;

    double& at(int j, int i) { return values_[static_cast<std::size_t>(j) * nq_ + i]; }
    double at(int j, int i) const { return values_[static_cast<std::size_t>(j) * nq_ + i]; }
    std::span<double> row(int j) { return {values_.data() + static_cast<std::size_t>(j) * nq_, static_cast<std::size_t>(nq_)}; }
    std::span<const double> row(int j) const {
        return {values_.data() + static_cast<std::size_t>(j) * nq_, static_cast<std::size_t>(nq_)};
    }
    std::vector<double>& values() noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

    // sum f dq dp / (2 pi hbar)
    double mass() const;
    // Fraction of the mass held in the `rows` outermost rows on each side.
    double boundary_mass_fraction(int rows = 1) const;
    void normalize();

private:
    int nq_, np_;
    double hbar_, dq_, dp_, p_min_;
    std::vector<double> values_;
};

// Husimi distribution (1/sqrt(pi)) |sum_n a_n exp(-(p/hbar - n)^2/2) e^{i n q}|^2 of the packet,
// renormalized on the grid. Throws NumericalError if more than 1e-10 of the mass sits in the
// boundary rows.
PhaseSpaceGrid husimi_init(const quantum::WavePacket& psi, const GridSpec& spec, double hbar);

// Free streaming plus bath drift (q -> q + p t + drift_rate(t) p, linear interpolation), then a
// circular convolution of every q-row with the wrapped Gaussian of variance s(t)/beta.
PhaseSpaceGrid bath_drift_smear(const PhaseSpaceGrid& f, double t, const BathParams& bath);

// f(q, p) -> f(q, p - K sin q) by linear interpolation in p; mass is restored afterwards.
// Throws NumericalError if more than 1e-8 of the mass leaves the grid.
PhaseSpaceGrid kick_shift(const PhaseSpaceGrid& f, double kick_strength);

// -sum f ln f dq dp / (2 pi hbar); cells with f < 1e-30 contribute nothing.
double classical_entropy(const PhaseSpaceGrid& f);

struct Marginals {
    std::vector<double> q, g1; // g1(q) = int f dp / (2 pi hbar); uniform -> 1/(2pi)
    std::vector<double> p, g2; // g2(p) = int f dq / (2 pi hbar)
};
Marginals marginals(const PhaseSpaceGrid& f);

// sum f p^2/2 dq dp / (2 pi hbar)
double classical_energy(const PhaseSpaceGrid& f);

// Marginal snapshot taken at the start (kick 0), just before kick n (after the bath period),
// or just after kick n.
struct MarginalSnapshot {
    int kick = 0;
    bool before_kick = false;
    Marginals marginals;
    std::string tag() const;
};

struct SnapshotRequest {
    int kick = 0;
    bool before_kick = false;
};

struct ClassicalStepRecord {
    int kick = 0;
    double entropy = 0.0;
    double energy = 0.0;
    double mass = 1.0;
    double boundary_fraction = 0.0;
    double smear_entropy_change = 0.0; // S_H after the bath period minus S_H before it
};

struct ClassicalRun {
    std::vector<ClassicalStepRecord> records;
    std::vector<MarginalSnapshot> snapshots;
    EntropySeries series() const;
};

GridSpec grid_spec(const ValidatedConfig& cfg);

ClassicalRun run_classical(const ValidatedConfig& cfg, int n_kicks,
                           std::span<const SnapshotRequest> snapshots = {});

} // namespace rotorbath::classical
