#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qbgk/bgk_dynamics.hpp"
#include "qbgk/config.hpp"
#include "qbgk/distributions.hpp"
#include "qbgk/errors.hpp"

using namespace qbgk;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("qbgk_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QBGK_CLI_PATH) + " " + args;
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kSymmetricCoeffs = R"({
  "species": [{"mass": 1.0, "statistics": "fermion"}, {"mass": 1.0, "statistics": "fermion"}],
  "moments": [{"N": 0.8, "P": [0.1, 0, 0], "E": 1.1}, {"N": 0.8, "P": [0.1, 0, 0], "E": 1.1}]
})";

// |P1+P2|^2 equals the mixture bound exactly: zero mixture internal energy.
const char* kMixtureInfeasible = R"({
  "species": [{"mass": 1.0, "statistics": "fermion"}, {"mass": 1.0, "statistics": "fermion"}],
  "moments": [{"N": 1.0, "P": [1.0, 0, 0], "E": 0.5}, {"N": 1.0, "P": [1.0, 0, 0], "E": 0.5}]
})";

const char* kSimZeroTime = R"({
  "species": [{"mass": 1.0, "statistics": "fermion"}, {"mass": 2.0, "statistics": "boson"}],
  "mode": "homogeneous",
  "grid": {"n": 16},
  "time": {"dt": 0.02, "t_end": 0.0},
  "init": {"type": "shifted_equilibria",
           "params": [{"a": 1.0, "b": [0.05, 0, 0], "c": 0.3},
                      {"a": 1.0, "b": [0, 0, 0], "c": 0.4}]}
})";

const char* kSimShort = R"({
  "species": [{"mass": 1.0, "statistics": "fermion"}, {"mass": 2.0, "statistics": "fermion"}],
  "mode": "homogeneous",
  "grid": {"n": 16},
  "time": {"dt": 0.02, "t_end": 0.3, "diag_every": 3},
  "init": {"type": "shifted_equilibria",
           "params": [{"a": 1.0, "b": [0.05, 0, 0], "c": 0.3},
                      {"a": 1.0, "b": [-0.05, 0, 0], "c": 0.2}]}
})";

}  // namespace

TEST_CASE("solve-coeffs: symmetric species collapse in the report") {
    TempDir dir;
    write_file(dir.path / "cfg.json", kSymmetricCoeffs);
    const int code = run_cli("solve-coeffs " + (dir.path / "cfg.json").string() + " --out " +
                             (dir.path / "out").string() + " > /dev/null 2>&1");
    CHECK(code == 0);
    const json rep = json::parse(read_file(dir.path / "out" / "report.json"));
    const double c1 = rep["intra"][0]["c"].get<double>();
    const double c12 = rep["inter"]["c12"].get<double>();
    const double c21 = rep["inter"]["c21"].get<double>();
    CHECK(std::fabs(c12 - c1) < 1e-10);
    CHECK(std::fabs(c21 - c1) < 1e-10);
    CHECK(rep["inter"]["residuals"]["max"].get<double>() <= 1e-8);
    CHECK(rep["inter"]["feasible"].get<bool>());

    const json manifest = json::parse(read_file(dir.path / "out" / "manifest.json"));
    CHECK(manifest["subcommand"] == "solve-coeffs");
    CHECK(manifest["config_hash"].get<std::string>().starts_with("fnv1a:"));
    CHECK(manifest.contains("timestamp_utc"));
}

TEST_CASE("solve-coeffs: infeasible mixture exits 2 with the documented reason") {
    TempDir dir;
    write_file(dir.path / "cfg.json", kMixtureInfeasible);
    const std::string err_file = (dir.path / "stderr.txt").string();
    const int code = run_cli("solve-coeffs " + (dir.path / "cfg.json").string() + " --out " +
                             (dir.path / "out").string() + " > /dev/null 2> " + err_file);
    CHECK(code == 2);
    const std::string err = read_file(err_file);
    CHECK(err.find("nonpositive mixture internal energy") != std::string::npos);
    // report still written, carrying the reasons
    const json rep = json::parse(read_file(dir.path / "out" / "report.json"));
    CHECK(rep.contains("infeasible_reasons"));
}

TEST_CASE("malformed config exits 1") {
    TempDir dir;
    write_file(dir.path / "bad.json", "{ not json");
    CHECK(run_cli("solve-coeffs " + (dir.path / "bad.json").string() + " > /dev/null 2>&1") == 1);
    CHECK(run_cli("simulate " + (dir.path / "missing.json").string() + " > /dev/null 2>&1") == 1);
}

TEST_CASE("simulate: zero-time run writes the initial condition") {
    TempDir dir;
    write_file(dir.path / "sim.json", kSimZeroTime);
    const int code = run_cli("simulate " + (dir.path / "sim.json").string() + " --out " +
                             (dir.path / "out").string() + " > /dev/null 2>&1");
    CHECK(code == 0);

    const SnapshotRecord rec = load_snapshot((dir.path / "out" / "f1.qbgk").string());
    const MomentumGrid grid(rec.p_max, rec.n);
    const DistributionField expect =
        eval_equilibrium(1.0, {0.05, 0, 0}, 0.3, 1.0, Statistics::fermion, grid);
    CHECK(rec.field.values == expect.values);

    const std::string csv = read_file(dir.path / "out" / "diagnostics.csv");
    CHECK(csv.starts_with("t,mass1,mass2,px,py,pz,energy,H,maxf1,maxf2\n"));
}

TEST_CASE("simulate: identical configs produce bit-identical outputs") {
    TempDir dir;
    write_file(dir.path / "sim.json", kSimShort);
    CHECK(run_cli("simulate " + (dir.path / "sim.json").string() + " --out " +
                  (dir.path / "a").string() + " > /dev/null 2>&1") == 0);
    CHECK(run_cli("simulate " + (dir.path / "sim.json").string() + " --out " +
                  (dir.path / "b").string() + " > /dev/null 2>&1") == 0);
    CHECK(read_file(dir.path / "a" / "diagnostics.csv") ==
          read_file(dir.path / "b" / "diagnostics.csv"));
    CHECK(read_file(dir.path / "a" / "f1.qbgk") == read_file(dir.path / "b" / "f1.qbgk"));
    CHECK(read_file(dir.path / "a" / "f2.qbgk") == read_file(dir.path / "b" / "f2.qbgk"));

    // THREADS cap must not change results either
    CHECK(run_cli("simulate " + (dir.path / "sim.json").string() + " --out " +
                  (dir.path / "c").string() + " > /dev/null 2>&1 ") == 0);
    const int code = std::system(("THREADS=1 " + std::string(QBGK_CLI_PATH) + " simulate " +
                                  (dir.path / "sim.json").string() + " --out " +
                                  (dir.path / "d").string() + " > /dev/null 2>&1")
                                     .c_str());
    CHECK(WEXITSTATUS(code) == 0);
    CHECK(read_file(dir.path / "c" / "f1.qbgk") == read_file(dir.path / "d" / "f1.qbgk"));
}

TEST_CASE("simulate: H column is non-increasing in the CSV") {
    TempDir dir;
    write_file(dir.path / "sim.json", kSimShort);
    CHECK(run_cli("simulate " + (dir.path / "sim.json").string() + " --out " +
                  (dir.path / "out").string() + " > /dev/null 2>&1") == 0);
    std::istringstream csv(read_file(dir.path / "out" / "diagnostics.csv"));
    std::string line;
    std::getline(csv, line);  // header
    double prev_h = 0.0;
    bool first = true;
    while (std::getline(csv, line)) {
        std::istringstream row(line);
        std::string field;
        double h = 0.0;
        for (int col = 0; col <= 7; ++col) {
            std::getline(row, field, ',');
            if (col == 7) h = std::stod(field);
        }
        if (!first) CHECK(h <= prev_h + 1e-14 * std::fabs(prev_h));
        prev_h = h;
        first = false;
    }
}

TEST_CASE("config parser diagnostics") {
    CHECK_THROWS_AS(parse_sim_config("{}"), ConfigError);
    CHECK_THROWS_AS(parse_coeff_config(R"({"species": []})"), ConfigError);
    CHECK_THROWS_AS(
        parse_coeff_config(
            R"({"species": [{"mass": 1, "statistics": "quark"}], "moments": [{"N":1,"E":1}]})"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_coeff_config(
            R"({"species": [{"mass": 1, "statistics": "fermion"}], "moments": [{"N":-1,"E":1}]})"),
        ConfigError);
    const SimConfig cfg = parse_sim_config(kSimShort);
    CHECK(cfg.species.size() == 2);
    CHECK(cfg.species[1].mass == 2.0);
    CHECK(cfg.dt == 0.02);
    CHECK(cfg.diag_every == 3);
    CHECK(cfg.relax.discrete_consistent);
}

TEST_CASE("simulate: runtime infeasibility exits 3 with context") {
    TempDir dir;
    // Condensed Bose state: far denser than any positive fugacity allows.
    const MomentumGrid grid(4.0, 8);
    DistributionField f{std::vector<double>(grid.size(), 0.0), Statistics::boson, 1.0};
    const int mid = grid.n() / 2;
    for (int k = mid - 1; k <= mid; ++k)
        for (int j = mid - 1; j <= mid; ++j)
            for (int i = mid - 1; i <= mid; ++i) f.values[grid.index(i, j, k)] = 100.0;
    save_snapshot((dir.path / "cold.qbgk").string(), f, grid);

    write_file(dir.path / "sim.json", std::string(R"({
  "species": [{"mass": 1.0, "statistics": "boson"}],
  "mode": "homogeneous",
  "time": {"dt": 0.01, "t_end": 0.1},
  "init": {"type": "snapshot", "files": [")") +
                                          (dir.path / "cold.qbgk").string() + R"("]}
})");
    const std::string err_file = (dir.path / "stderr.txt").string();
    const int code = run_cli("simulate " + (dir.path / "sim.json").string() + " --out " +
                             (dir.path / "out").string() + " > /dev/null 2> " + err_file);
    CHECK(code == 3);
    const std::string err = read_file(err_file);
    CHECK(err.find("\"code\":3") != std::string::npos);
    CHECK(err.find("at step 1") != std::string::npos);
}

TEST_CASE("verify: tampered tolerance exits 4") {
    const int code = std::system(("QBGK_VERIFY_TAMPER=1 " + std::string(QBGK_CLI_PATH) +
                                  " verify --level quick > /dev/null 2>&1")
                                     .c_str());
    CHECK(WEXITSTATUS(code) == 4);
}
