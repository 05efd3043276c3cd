#pragma once

#include "rotorbath/params.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rotorbath::cli {

// Unvalidated parameter set as read from a config file and --set overrides.
struct ParamSet {
    RotorParams rotor;
    BathParams bath;
    NumericsParams numerics;
    RunParams run;
};

// Flat keys accepted in config files and by --set: K, hbar, eta, omega_c, beta, phi_prime,
// l_max, nq, np_grid, p_extent, band_tol, eig_floor, product_tol, coherence_tol, kicks,
// packet_width, p_center, q_center, fit_min, seed.
const std::vector<std::string>& config_keys();

// Throws ConfigError on unknown keys or values of the wrong type.
void apply_json(ParamSet& params, const nlohmann::json& j);
// "key=value"
void apply_override(ParamSet& params, std::string_view assignment);
// JSON object file; throws IoError if unreadable, ConfigError if malformed.
ParamSet load_config(const std::filesystem::path& path);

// Resolved snapshot of a validated config with the same flat keys.
nlohmann::json to_json(const ValidatedConfig& cfg);

// Shortest text that reads back to the same double, 17 significant digits at most.
std::string format_double(double x);

// Write to a sibling temporary file, then rename over `path`. Throws IoError.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

// Minimal CSV reader for files this tool wrote: header row plus numeric cells, with empty
// cells read as NaN.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    int column(std::string_view name) const; // -1 if absent
};
CsvTable read_csv(const std::filesystem::path& path);

// Worker cap from ROTORBATH_THREADS, else the hardware concurrency (at least 1).
int worker_count();

struct SimulateOptions {
    std::string mode = "both"; // quantum | classical | both
    std::filesystem::path out = "out";
};

struct SweepOptions {
    std::string param; // K | eta | hbar
    std::vector<double> values;
    std::string mode = "both";
    std::filesystem::path out = "out";
};

struct DiagnoseOptions {
    std::string what; // lyapunov | diffusion | marginals
    std::vector<std::string> times{"0", "1-", "1+"}; // marginal snapshots: n, n- or n+
    int steps = 100000;   // Lyapunov iterations
    int ensemble = 4000;  // diffusion ensemble
    int diffusion_steps = 200;
    std::filesystem::path out = "out";
};

// Each command returns the process exit code and reports problems on stderr.
// 0 success, 1 configuration error, 2 numerical failure, 3 I/O failure.
int cmd_simulate(const ParamSet& params, const SimulateOptions& opt);
int cmd_sweep(const ParamSet& params, const SweepOptions& opt);
int cmd_diagnose(const ParamSet& params, const DiagnoseOptions& opt);
int cmd_plot(const std::filesystem::path& run_dir);

// Full command line entry point.
int run(int argc, char** argv);

} // namespace rotorbath::cli
