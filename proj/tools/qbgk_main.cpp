#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbgk/bgk_dynamics.hpp"
#include "qbgk/config.hpp"
#include "qbgk/errors.hpp"
#include "qbgk/verify_suite.hpp"
#include "qbgk/version.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitRuntimeInfeasible = 3;
constexpr int kExitVerifyFailed = 4;

void print_error(int code, const char* kind, const std::string& reason, int species = -1,
                 int cell = -1) {
    json e;
    e["error"]["code"] = code;
    e["error"]["kind"] = kind;
    e["error"]["reason"] = reason;
    if (species >= 0) e["error"]["species"] = species + 1;
    if (cell >= 0) e["error"]["cell"] = cell;
    std::fprintf(stderr, "%s\n", e.dump().c_str());
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void apply_thread_env() {
    if (const char* env = std::getenv("THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) qbgk::set_max_threads(t);
    }
}

json residuals_json(const qbgk::ConstraintReport& rep) {
    json out;
    for (const auto& item : rep.residuals) out[item.name] = item.residual;
    out["max"] = rep.max_residual;
    return out;
}

json vec_json(const qbgk::Vec3& v) { return json::array({v[0], v[1], v[2]}); }

int cmd_solve_coeffs(const std::string& config_path, const std::string& out_dir) {
    const qbgk::CoeffProblemConfig cfg = qbgk::load_coeff_config(config_path);
    fs::create_directories(out_dir);

    json report;
    report["artifact_version"] = qbgk::kVersion;
    std::vector<std::string> reasons;

    const std::size_t ns = cfg.species.size();
    json intra_arr = json::array();
    std::vector<qbgk::IntraCoeffs> intra(ns);
    std::vector<bool> intra_ok(ns, false);
    for (std::size_t s = 0; s < ns; ++s) {
        const auto& sp = cfg.species[s];
        json entry;
        entry["feasible"] = qbgk::check_feasibility_intra(sp.mass, sp.stat, cfg.moments[s]);
        try {
            intra[s] = qbgk::solve_intra(sp.mass, sp.stat, cfg.moments[s]);
            intra_ok[s] = true;
            entry["a"] = intra[s].a;
            entry["b"] = vec_json(intra[s].b);
            entry["c"] = intra[s].c;
            entry["iterations"] = intra[s].iterations;
            entry["clamped"] = intra[s].clamped;
            entry["residuals"] = residuals_json(
                qbgk::verify_coeffs(intra[s], sp.mass, sp.stat, cfg.moments[s]));
        } catch (const qbgk::FeasibilityError& e) {
            reasons.push_back(e.reason() + " (species " + std::to_string(s + 1) + ")");
        }
        intra_arr.push_back(entry);
    }
    report["intra"] = intra_arr;

    bool inter_ok = ns < 2;
    if (ns == 2) {
        qbgk::MixtureProblem prob{cfg.species[0].mass, cfg.species[1].mass,
                                  cfg.species[0].stat, cfg.species[1].stat,
                                  cfg.moments[0],      cfg.moments[1]};
        json entry;
        entry["feasible"] = qbgk::check_feasibility_inter(prob);
        try {
            const qbgk::InterCoeffs inter = qbgk::solve_inter(prob);
            inter_ok = true;
            entry["a"] = inter.a;
            entry["b"] = vec_json(inter.b);
            entry["c12"] = inter.c12;
            entry["c21"] = inter.c21;
            entry["iterations"] = inter.iterations;
            entry["clamped"] = inter.clamped;
            entry["residuals"] = residuals_json(qbgk::verify_coeffs(inter, prob));
        } catch (const qbgk::FeasibilityError& e) {
            // The mixture-level diagnosis leads the report: intra failures
            // imply it whenever the energies degenerate jointly.
            reasons.insert(reasons.begin(), e.reason() + " (mixture)");
        }
        report["inter"] = entry;
    }

    const bool all_ok = inter_ok && std::all_of(intra_ok.begin(), intra_ok.end(),
                                                [](bool b) { return b; });
    if (!all_ok) report["infeasible_reasons"] = reasons;

    const fs::path report_path = fs::path(out_dir) / "report.json";
    {
        std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
        out << report.dump(2) << "\n";
        if (!out) throw qbgk::ConfigError("cannot write " + report_path.string());
    }
    qbgk::write_manifest(out_dir, {qbgk::kVersion, "solve-coeffs",
                                   qbgk::file_content_hash(config_path), utc_timestamp(),
                                   {report_path.filename().string()}});
    std::printf("report written to %s\n", report_path.string().c_str());

    if (!all_ok) {
        print_error(kExitInfeasible, "infeasible",
                    reasons.empty() ? "coefficient problem infeasible" : reasons.front());
        return kExitInfeasible;
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    const qbgk::SimConfig cfg = qbgk::load_sim_config(config_path);
    fs::create_directories(out_dir);

    qbgk::SimState state;
    try {
        state = qbgk::run(cfg);
    } catch (const qbgk::FeasibilityError& e) {
        print_error(kExitRuntimeInfeasible, "infeasible", e.reason(), e.species(), e.cell());
        return kExitRuntimeInfeasible;
    }

    std::vector<std::string> outputs;
    const fs::path csv_path = fs::path(out_dir) / "diagnostics.csv";
    qbgk::write_diagnostics_csv(csv_path.string(), state.diagnostics);
    outputs.push_back(csv_path.filename().string());

    for (int s = 0; s < state.species_count(); ++s) {
        const fs::path snap = fs::path(out_dir) / ("f" + std::to_string(s + 1) + ".qbgk");
        std::vector<const qbgk::DistributionField*> cells;
        for (const auto& f : state.fields[static_cast<std::size_t>(s)]) cells.push_back(&f);
        qbgk::save_snapshots(snap.string(), cells, state.grid);
        outputs.push_back(snap.filename().string());
    }
    qbgk::write_manifest(out_dir, {qbgk::kVersion, "simulate",
                                   qbgk::file_content_hash(config_path), utc_timestamp(),
                                   outputs});

    const auto& d = state.diagnostics;
    const auto& d0 = d.front();
    double mass1_drift = 0.0, mass2_drift = 0.0, p_drift = 0.0, e_drift = 0.0;
    const double pscale =
        std::sqrt(std::fmax(2.0 * d0.energy * (d0.mass1 + d0.mass2), 1e-300)) +
        qbgk::norm(d0.p);
    for (const auto& rec : d) {
        mass1_drift = std::fmax(mass1_drift, std::fabs(rec.mass1 - d0.mass1) /
                                                 std::fmax(d0.mass1, 1e-300));
        if (d0.mass2 > 0.0)
            mass2_drift = std::fmax(mass2_drift, std::fabs(rec.mass2 - d0.mass2) / d0.mass2);
        p_drift = std::fmax(p_drift, qbgk::norm(rec.p - d0.p) / pscale);
        e_drift = std::fmax(e_drift, std::fabs(rec.energy - d0.energy) /
                                         std::fmax(std::fabs(d0.energy), 1e-300));
    }
    std::printf("steps: %ld  t: %.17g\n", state.step, state.t);
    std::printf("final H: %.17g\n", d.back().H);
    std::printf("max drifts: mass1 %.3e  mass2 %.3e  momentum %.3e  energy %.3e\n",
                mass1_drift, mass2_drift, p_drift, e_drift);
    std::printf("outputs in %s\n", out_dir.c_str());
    return 0;
}

int cmd_verify(const std::string& level_str) {
    qbgk::VerifyLevel level;
    if (level_str == "quick")
        level = qbgk::VerifyLevel::quick;
    else if (level_str == "full")
        level = qbgk::VerifyLevel::full;
    else
        throw qbgk::ConfigError("verify level must be quick or full");

    const auto results = qbgk::run_verify_suite(level);
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::printf("%-30s %s  %6.2fs  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.seconds, r.detail.c_str());
        if (r.pass) ++passed;
    }
    std::printf("%zu/%zu checks passed\n", passed, results.size());
    if (passed != results.size()) {
        print_error(kExitVerifyFailed, "verify-failed",
                    std::to_string(results.size() - passed) + " check(s) failed");
        return kExitVerifyFailed;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();

    CLI::App app{"two-species quantum BGK solver"};
    app.set_version_flag("--version", qbgk::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string level = "quick";

    CLI::App* solve = app.add_subcommand("solve-coeffs",
                                         "solve equilibrium coefficients from moments");
    solve->add_option("config", config_path, "JSON config with species and moments")
        ->required();
    solve->add_option("--out", out_dir, "output directory");

    CLI::App* simulate = app.add_subcommand("simulate", "time-integrate the relaxation system");
    simulate->add_option("config", config_path, "JSON simulation config")->required();
    simulate->add_option("--out", out_dir, "output directory");

    CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");
    verify->add_option("--level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve_coeffs(config_path, out_dir);
        if (simulate->parsed()) return cmd_simulate(config_path, out_dir);
        return cmd_verify(level);
    } catch (const qbgk::ConfigError& e) {
        print_error(kExitConfig, "config", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        print_error(kExitConfig, "internal", e.what());
        return kExitConfig;
    }
}
