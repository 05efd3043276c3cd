#include "rotorbath/analysis.hpp"
#include "rotorbath/classical_core.hpp"
#include "rotorbath/classical_evolution.hpp"
#include "rotorbath/cli.hpp"
#include "rotorbath/error.hpp"
#include "rotorbath/quantum.hpp"

#include "svg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#ifndef ROTORBATH_VERSION
#define ROTORBATH_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace rotorbath::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Maps the library's exception types onto exit codes.
template <class F>
int guarded(const char* what, F&& body) {
    try {
        body();
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << what << ": " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << what << ": " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << what << ": " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << what << ": " << e.what() << '\n';
        return 3;
    } catch (const fs::filesystem_error& e) {
        std::cerr << what << ": " << e.what() << '\n';
        return 3;
    }
}

ValidatedConfig validated(const ParamSet& p) { return validate(p.rotor, p.bath, p.numerics, p.run); }

void check_mode(const std::string& mode) {
    if (mode != "quantum" && mode != "classical" && mode != "both")
        throw ConfigError("mode must be quantum, classical or both, got '" + mode + "'");
}

std::string csv_cell(const std::vector<double>& v, std::size_t i) {
    return i < v.size() ? format_double(v[i]) : std::string{};
}

json fit_json(const EntropySeries& s, analysis::FitWindow w) {
    try {
        const auto fit = analysis::fit_growth(s, w);
        const auto energy = analysis::energy_growth(s, w);
        return {{"A", fit.A},
                {"B", fit.B},
                {"window", {fit.n_min, fit.n_max}},
                {"points", fit.points},
                {"residual_rms", fit.residual_rms},
                {"energy_slope", energy.slope}};
    } catch (const std::invalid_argument& e) {
        return {{"error", e.what()}};
    }
}

struct SimulationResult {
    std::optional<quantum::QuantumRun> quantum;
    std::optional<classical::ClassicalRun> classical;
};

SimulationResult simulate(const ValidatedConfig& cfg, const std::string& mode, bool parallel) {
    const int n = cfg.run().kicks;
    SimulationResult r;
    const bool want_q = mode != "classical", want_c = mode != "quantum";
    if (want_q && want_c && parallel) {
        auto q = std::async(std::launch::async, [&] { return quantum::run_quantum(cfg, n); });
        r.classical = classical::run_classical(cfg, n);
        r.quantum = q.get();
    } else {
        if (want_q) r.quantum = quantum::run_quantum(cfg, n);
        if (want_c) r.classical = classical::run_classical(cfg, n);
    }
    return r;
}

std::string entropy_csv(const SimulationResult& r, int kicks) {
    EntropySeries q, c;
    if (r.quantum) q = r.quantum->series();
    if (r.classical) c = r.classical->series();
    std::string out = "kick,S_quantum,S_classical,E_quantum,E_classical\n";
    for (int n = 0; n <= kicks; ++n) {
        const auto i = static_cast<std::size_t>(n);
        out += std::to_string(n) + ',' + csv_cell(q.entropy, i) + ',' + csv_cell(c.entropy, i) + ',' +
               csv_cell(q.energy, i) + ',' + csv_cell(c.energy, i) + '\n';
    }
    return out;
}

json fit_report(const ValidatedConfig& cfg, const SimulationResult& r) {
    const analysis::FitWindow w{cfg.run().fit_min, -1};
    json j;
    j["window"] = {w.n_min, cfg.run().kicks};
    j["predict_A"] = cfg.rotor().kick_strength > 0.0
                         ? json(analysis::predict_A(cfg.rotor().kick_strength, cfg.rotor().hbar))
                         : json(nullptr);
    if (r.quantum) {
        j["quantum"] = fit_json(r.quantum->series(), w);
        double trace = 0, herm = 0, min_eig = 0;
        for (const auto& rec : r.quantum->records) {
            trace = std::max(trace, std::abs(rec.trace - 1.0));
            herm = std::max(herm, rec.hermiticity_error);
            min_eig = std::min(min_eig, rec.min_eigenvalue);
        }
        j["quantum"]["checks"] = {{"max_trace_error", trace},
                                  {"max_hermiticity_error", herm},
                                  {"min_eigenvalue", min_eig},
                                  {"l_max", cfg.l_max()}};
    }
    if (r.classical) {
        j["classical"] = fit_json(r.classical->series(), w);
        double mass = 0, edge = 0, smear = 0;
        for (const auto& rec : r.classical->records) {
            mass = std::max(mass, std::abs(rec.mass - 1.0));
            edge = std::max(edge, rec.boundary_fraction);
            smear = std::min(smear, rec.smear_entropy_change);
        }
        j["classical"]["checks"] = {{"max_mass_drift", mass},
                                    {"max_boundary_fraction", edge},
                                    {"min_smear_entropy_change", smear}};
    }
    // Top-level fit mirrors the quantum run when present, else the classical one.
    const char* primary = r.quantum ? "quantum" : "classical";
    j["mode"] = primary;
    for (const char* key : {"A", "B", "residual_rms"})
        j[key] = j[primary].contains(key) ? j[primary][key] : json(nullptr);
    if (r.quantum && r.classical) {
        try {
            j["convergence_gap"] = analysis::convergence_metric(r.quantum->series(), r.classical->series(), w);
        } catch (const std::invalid_argument&) {
            j["convergence_gap"] = nullptr;
        }
    }
    return j;
}

json manifest(const std::string& subcommand, const json& config, const fs::path& out, unsigned long long seed,
              const std::string& started, const std::vector<std::string>& files, const json& extra = json::object()) {
    json m = {{"tool", "rotorbath"},
              {"version", ROTORBATH_VERSION},
              {"subcommand", subcommand},
              {"config", config},
              {"output_dir", fs::absolute(out).lexically_normal().string()},
              {"seed", seed},
              {"started", started},
              {"finished", utc_now()},
              {"files", files}};
    m.update(extra);
    return m;
}

// Runs one simulation into `out`. Exceptions propagate.
json simulate_into(const ValidatedConfig& cfg, const std::string& mode, const fs::path& out, bool parallel) {
    const std::string started = utc_now();
    const auto result = simulate(cfg, mode, parallel);
    const json fits = fit_report(cfg, result);
    write_atomic(out / "entropy.csv", entropy_csv(result, cfg.run().kicks));
    write_atomic(out / "fit.json", fits.dump(2) + "\n");
    write_atomic(out / "manifest.json",
                 manifest("simulate", to_json(cfg), out, cfg.run().seed, started,
                          {"entropy.csv", "fit.json", "manifest.json"}, {{"mode", mode}, {"notes", cfg.notes()}})
                         .dump(2) +
                     "\n");
    return fits;
}

std::string sweep_dir_name(const std::string& param, double value) { return param + "_" + format_double(value); }

} // namespace

int cmd_simulate(const ParamSet& params, const SimulateOptions& opt) {
    return guarded("simulate", [&] {
        check_mode(opt.mode);
        const auto cfg = validated(params);
        for (const auto& note : cfg.notes()) std::cerr << "note: " << note << '\n';
        const json fits = simulate_into(cfg, opt.mode, opt.out, worker_count() > 1);
        std::cout << "wrote " << (opt.out / "entropy.csv").string() << " (" << cfg.run().kicks + 1 << " rows)";
        if (!fits["B"].is_null()) std::cout << ", B = " << fits["B"].get<double>();
        std::cout << '\n';
    });
}

int cmd_sweep(const ParamSet& params, const SweepOptions& opt) {
    int worst = 0;
    const int rc = guarded("sweep", [&] {
        check_mode(opt.mode);
        if (opt.param != "K" && opt.param != "eta" && opt.param != "hbar")
            throw ConfigError("--param must be K, eta or hbar, got '" + opt.param + "'");
        if (opt.values.size() < 2) throw ConfigError("a sweep needs at least 2 values");

        const std::string started = utc_now();
        struct Outcome {
            int status = 0;
            std::string error;
            json fits;
            std::optional<ValidatedConfig> cfg;
        };
        std::vector<Outcome> outcomes(opt.values.size());

        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < opt.values.size(); i = next++) {
                ParamSet p = params;
                const double v = opt.values[i];
                if (opt.param == "K") p.rotor.kick_strength = v;
                if (opt.param == "eta") p.bath.eta = v;
                if (opt.param == "hbar") p.rotor.hbar = v;
                auto& o = outcomes[i];
                o.status = guarded(("sweep " + opt.param + "=" + format_double(v)).c_str(), [&] {
                    o.cfg = validated(p);
                    o.fits = simulate_into(*o.cfg, opt.mode, opt.out / sweep_dir_name(opt.param, v), false);
                });
                if (o.status != 0) o.error = "exit " + std::to_string(o.status);
            }
        };
        const int n_workers = std::min<int>(worker_count(), static_cast<int>(opt.values.size()));
        {
            std::vector<std::jthread> pool;
            for (int t = 1; t < n_workers; ++t) pool.emplace_back(worker);
            worker();
        }

        std::string csv = "value,status,A_quantum,B_quantum,A_classical,B_classical,predict_A,convergence_gap\n";
        auto field = [](const json& fits, const char* mode, const char* key) {
            if (fits.is_object() && fits.contains(mode) && fits[mode].contains(key)) return fits[mode][key].get<double>();
            return kNaN;
        };
        json runs = json::array();
        std::vector<analysis::KickFit> kq, kc;
        for (std::size_t i = 0; i < opt.values.size(); ++i) {
            const auto& o = outcomes[i];
            const double v = opt.values[i];
            const double pa = o.fits.is_object() && o.fits["predict_A"].is_number() ? o.fits["predict_A"].get<double>() : kNaN;
            const double gap =
                o.fits.is_object() && o.fits.contains("convergence_gap") && o.fits["convergence_gap"].is_number()
                    ? o.fits["convergence_gap"].get<double>()
                    : kNaN;
            csv += format_double(v) + ',' + std::to_string(o.status) + ',' + format_double(field(o.fits, "quantum", "A")) +
                   ',' + format_double(field(o.fits, "quantum", "B")) + ',' +
                   format_double(field(o.fits, "classical", "A")) + ',' +
                   format_double(field(o.fits, "classical", "B")) + ',' + format_double(pa) + ',' +
                   format_double(gap) + '\n';
            runs.push_back({{"value", v}, {"dir", sweep_dir_name(opt.param, v)}, {"status", o.status}});
            if (o.status != 0) {
                runs.back()["error"] = o.error;
                worst = worst == 0 ? o.status : worst;
                continue;
            }
            if (const double a = field(o.fits, "quantum", "A"); std::isfinite(a))
                kq.push_back({v, {a, field(o.fits, "quantum", "B"), 0, 0, 0.0, 0}});
            if (const double a = field(o.fits, "classical", "A"); std::isfinite(a))
                kc.push_back({v, {a, field(o.fits, "classical", "B"), 0, 0, 0.0, 0}});
        }
        write_atomic(opt.out / "sweep_summary.csv", csv);

        std::vector<std::string> files{"sweep_summary.csv", "sweep.json", "manifest.json"};
        json extra = {{"param", opt.param}, {"values", opt.values}, {"mode", opt.mode}};
        if (opt.param == "K") {
            json reg = json::object();
            for (auto [name, fits] : {std::pair{"quantum", &kq}, std::pair{"classical", &kc}}) {
                if (fits->size() < 4) {
                    reg[name] = {{"error", "need at least 4 successful kick strengths"}};
                    continue;
                }
                const auto line = analysis::regress_A_vs_lnK(*fits);
                reg[name] = {{"slope", line.slope}, {"intercept", line.intercept}, {"r2", line.r2}};
            }
            write_atomic(opt.out / "regression.json", reg.dump(2) + "\n");
            files.push_back("regression.json");
        }
        write_atomic(opt.out / "sweep.json", json{{"param", opt.param}, {"mode", opt.mode}, {"runs", runs}}.dump(2) + "\n");
        json base = json::object();
        for (const auto& o : outcomes)
            if (o.cfg) {
                base = to_json(*o.cfg);
                break;
            }
        write_atomic(opt.out / "manifest.json",
                     manifest("sweep", base, opt.out, params.run.seed, started, files, extra).dump(2) + "\n");
        std::cout << "wrote " << (opt.out / "sweep_summary.csv").string() << " (" << opt.values.size() << " values)\n";
    });
    return rc != 0 ? rc : worst;
}

int cmd_diagnose(const ParamSet& params, const DiagnoseOptions& opt) {
    return guarded("diagnose", [&] {
        const auto cfg = validated(params);
        const std::string started = utc_now();
        const double k = cfg.rotor().kick_strength;
        const auto seed = cfg.run().seed;
        std::vector<std::string> files;

        if (opt.what == "lyapunov") {
            const double lam = classical::lyapunov(k, opt.steps, seed);
            const json j = {{"K", k}, {"n_steps", opt.steps}, {"seed", seed}, {"lyapunov", lam},
                            {"large_K_estimate", k > 0.0 ? json(std::log(0.5 * k)) : json(nullptr)}};
            write_atomic(opt.out / "lyapunov.json", j.dump(2) + "\n");
            files.push_back("lyapunov.json");
            std::cout << "lyapunov(K=" << k << ") = " << lam << '\n';
        } else if (opt.what == "diffusion") {
            const double d = classical::diffusion_coefficient(k, opt.ensemble, opt.diffusion_steps, seed);
            const json j = {{"K", k}, {"ensemble", opt.ensemble}, {"n_steps", opt.diffusion_steps}, {"seed", seed},
                            {"diffusion", d}, {"quasilinear_estimate", 0.5 * k * k}};
            write_atomic(opt.out / "diffusion.json", j.dump(2) + "\n");
            files.push_back("diffusion.json");
            std::cout << "diffusion(K=" << k << ") = " << d << '\n';
        } else if (opt.what == "marginals") {
            std::vector<classical::SnapshotRequest> req;
            int last = 0;
            for (const auto& t : opt.times) {
                classical::SnapshotRequest r;
                std::string digits = t;
                if (!t.empty() && (t.back() == '-' || t.back() == '+')) {
                    r.before_kick = t.back() == '-';
                    digits.pop_back();
                }
                try {
                    std::size_t used = 0;
                    r.kick = std::stoi(digits, &used);
                    if (used != digits.size() || r.kick < 0) throw std::invalid_argument(t);
                } catch (const std::exception&) {
                    throw ConfigError("bad snapshot time '" + t + "' (use n, n- or n+)");
                }
                req.push_back(r);
                last = std::max(last, r.kick);
            }
            const auto run = classical::run_classical(cfg, last, req);
            json summary = json::array();
            for (const auto& snap : run.snapshots) {
                const std::string tag = snap.kick == 0 ? "0" : std::to_string(snap.kick) + (snap.before_kick ? "m" : "p");
                std::string q = "q,g1\n", p = "p,g2\n";
                double dev = 0.0;
                for (std::size_t i = 0; i < snap.marginals.q.size(); ++i) {
                    q += format_double(snap.marginals.q[i]) + ',' + format_double(snap.marginals.g1[i]) + '\n';
                    dev = std::max(dev, std::abs(snap.marginals.g1[i] * 2.0 * std::numbers::pi - 1.0));
                }
                for (std::size_t i = 0; i < snap.marginals.p.size(); ++i)
                    p += format_double(snap.marginals.p[i]) + ',' + format_double(snap.marginals.g2[i]) + '\n';
                write_atomic(opt.out / ("marginal_q_" + tag + ".csv"), q);
                write_atomic(opt.out / ("marginal_p_" + tag + ".csv"), p);
                files.push_back("marginal_q_" + tag + ".csv");
                files.push_back("marginal_p_" + tag + ".csv");
                summary.push_back({{"time", snap.tag()}, {"file_tag", tag}, {"g1_max_relative_deviation", dev}});
            }
            write_atomic(opt.out / "marginals.json", json{{"snapshots", summary}}.dump(2) + "\n");
            files.push_back("marginals.json");
            std::cout << "wrote " << run.snapshots.size() << " marginal snapshots to " << opt.out.string() << '\n';
        } else {
            throw ConfigError("unknown diagnostic '" + opt.what + "' (lyapunov, diffusion or marginals)");
        }
        files.push_back("manifest.json");
        write_atomic(opt.out / "manifest.json",
                     manifest("diagnose", to_json(cfg), opt.out, seed, started, files, {{"what", opt.what}}).dump(2) + "\n");
    });
}

namespace {

const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Plots for a rotorbath run or sweep directory. Usage: python3 plot.py [DIR]"""
import csv
import json
import math
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    return {k: [float(r[k]) if r[k] not in ("", "nan") else math.nan for r in rows] for k in rows[0]}


def entropy_axes(ax, data, label=""):
    n = data["kick"]
    for key, style in (("S_quantum", "-"), ("S_classical", "--")):
        if any(not math.isnan(v) for v in data[key]):
            ax.plot(n[1:], data[key][1:], style, label=(label + " " + key).strip())
    ax.set_xscale("log")
    ax.set_xlabel("kick n")
    ax.set_ylabel("entropy")


def main(root):
    if os.path.exists(os.path.join(root, "entropy.csv")):
        data = read(os.path.join(root, "entropy.csv"))
        fig, ax = plt.subplots()
        entropy_axes(ax, data)
        ax.legend()
        fig.savefig(os.path.join(root, "entropy.png"), dpi=120)
        fig, ax = plt.subplots()
        for key in ("E_quantum", "E_classical"):
            ax.plot(data["kick"], data[key], label=key)
        ax.set_xlabel("kick n")
        ax.set_ylabel("energy")
        ax.legend()
        fig.savefig(os.path.join(root, "energy.png"), dpi=120)
    if os.path.exists(os.path.join(root, "sweep.json")):
        with open(os.path.join(root, "sweep.json")) as fh:
            sweep = json.load(fh)
        fig, ax = plt.subplots()
        for run in sweep["runs"]:
            path = os.path.join(root, run["dir"], "entropy.csv")
            if run["status"] == 0 and os.path.exists(path):
                entropy_axes(ax, read(path), "%s=%g" % (sweep["param"], run["value"]))
        ax.legend(fontsize=7)
        fig.savefig(os.path.join(root, "sweep_entropy.png"), dpi=120)
        s = read(os.path.join(root, "sweep_summary.csv"))
        if sweep["param"] == "K":
            fig, ax = plt.subplots()
            lnk = [math.log(v) for v in s["value"]]
            ax.plot(lnk, s["A_quantum"], "o-", label="quantum")
            ax.plot(lnk, s["A_classical"], "s--", label="classical")
            ax.plot(lnk, s["predict_A"], ":", label="1/2 + ln(sqrt(pi)/hbar) + ln K")
            ax.set_xlabel("ln K")
            ax.set_ylabel("A")
            ax.legend()
            fig.savefig(os.path.join(root, "A_vs_lnK.png"), dpi=120)
        fig, ax = plt.subplots()
        ax.plot(s["value"], s["B_quantum"], "o-", label="quantum")
        ax.plot(s["value"], s["B_classical"], "s--", label="classical")
        ax.axhline(0.5, color="gray", lw=0.8)
        ax.set_xlabel(sweep["param"])
        ax.set_ylabel("B")
        ax.legend()
        fig.savefig(os.path.join(root, "B_vs_%s.png" % sweep["param"]), dpi=120)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__)))
)PY";

std::vector<double> column(const CsvTable& t, std::string_view name) {
    const int c = t.column(name);
    std::vector<double> v;
    if (c < 0) return v;
    for (const auto& row : t.rows) v.push_back(row[static_cast<std::size_t>(c)]);
    return v;
}

bool has_values(const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void add_entropy_series(LineChart& chart, const CsvTable& t, const std::string& prefix) {
    const auto n = column(t, "kick");
    for (const auto& [key, name, dashed] :
         {std::tuple{"S_quantum", "quantum", false}, std::tuple{"S_classical", "classical", true}}) {
        const auto s = column(t, key);
        if (has_values(s)) chart.series.push_back({prefix + name, n, s, dashed, false});
    }
}

} // namespace

int cmd_plot(const fs::path& run_dir) {
    return guarded("plot", [&] {
        if (!fs::is_directory(run_dir)) throw IoError(run_dir.string() + " is not a directory");
        const bool single = fs::exists(run_dir / "entropy.csv");
        const bool sweep = fs::exists(run_dir / "sweep_summary.csv") && fs::exists(run_dir / "sweep.json");
        if (!single && !sweep) throw IoError("no entropy.csv or sweep_summary.csv in " + run_dir.string());
        std::vector<std::string> written;

        if (single) {
            const auto t = read_csv(run_dir / "entropy.csv");
            LineChart s{"Entropy growth", "kick n", "entropy (nats)", true, {}};
            add_entropy_series(s, t, "");
            if (fs::exists(run_dir / "fit.json")) {
                std::ifstream in(run_dir / "fit.json");
                const json fit = json::parse(in);
                if (fit["predict_A"].is_number()) {
                    const double a = fit["predict_A"].get<double>();
                    ChartSeries law{"A_pred + (1/2) ln n", {}, {}, true, false};
                    for (const double n : column(t, "kick"))
                        if (n >= 1) {
                            law.x.push_back(n);
                            law.y.push_back(a + 0.5 * std::log(n));
                        }
                    s.series.push_back(std::move(law));
                }
            }
            write_atomic(run_dir / "entropy.svg", render_svg(s));
            LineChart e{"Energy growth", "kick n", "<E>", false, {}};
            const auto n = column(t, "kick");
            if (const auto v = column(t, "E_quantum"); has_values(v)) e.series.push_back({"quantum", n, v, false, false});
            if (const auto v = column(t, "E_classical"); has_values(v)) e.series.push_back({"classical", n, v, true, false});
            write_atomic(run_dir / "energy.svg", render_svg(e));
            written.insert(written.end(), {"entropy.svg", "energy.svg"});
        }

        if (sweep) {
            std::ifstream in(run_dir / "sweep.json");
            const json meta = json::parse(in);
            const std::string param = meta["param"].get<std::string>();
            LineChart overlay{"Entropy growth by " + param, "kick n", "entropy (nats)", true, {}};
            for (const auto& r : meta["runs"]) {
                const fs::path csv = run_dir / r["dir"].get<std::string>() / "entropy.csv";
                if (r["status"].get<int>() != 0 || !fs::exists(csv)) continue;
                add_entropy_series(overlay, read_csv(csv), param + "=" + format_double(r["value"].get<double>()) + " ");
            }
            write_atomic(run_dir / "sweep_entropy.svg", render_svg(overlay));
            written.push_back("sweep_entropy.svg");

            const auto t = read_csv(run_dir / "sweep_summary.csv");
            const auto v = column(t, "value");
            if (param == "K") {
                std::vector<double> lnk;
                for (const double k : v) lnk.push_back(std::log(k));
                LineChart a{"Intercept A against ln K", "ln K", "A", false, {}};
                a.series.push_back({"quantum", lnk, column(t, "A_quantum"), false, true});
                a.series.push_back({"classical", lnk, column(t, "A_classical"), true, true});
                a.series.push_back({"predicted", lnk, column(t, "predict_A"), true, false});
                write_atomic(run_dir / "A_vs_lnK.svg", render_svg(a));
                written.push_back("A_vs_lnK.svg");
            }
            LineChart b{"Slope B against " + param, param, "B", false, {}};
            b.series.push_back({"quantum", v, column(t, "B_quantum"), false, true});
            b.series.push_back({"classical", v, column(t, "B_classical"), true, true});
            b.series.push_back({"1/2", v, std::vector<double>(v.size(), 0.5), true, false});
            write_atomic(run_dir / ("B_vs_" + param + ".svg"), render_svg(b));
            written.push_back("B_vs_" + param + ".svg");
        }

        write_atomic(run_dir / "plot.py", kPlotScript);
        fs::permissions(run_dir / "plot.py", fs::perms::owner_exec | fs::perms::group_exec | fs::perms::others_exec,
                        fs::perm_options::add);
        written.push_back("plot.py");
        for (const auto& f : written) std::cout << "wrote " << (run_dir / f).string() << '\n';
    });
}

} // namespace rotorbath::cli
