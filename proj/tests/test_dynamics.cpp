#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>

#include "qbgk/bgk_dynamics.hpp"
#include "qbgk/errors.hpp"

using namespace qbgk;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

SimConfig two_fermion_config() {
    SimConfig cfg;
    cfg.mode = SimMode::homogeneous;
    cfg.dt = 0.02;
    cfg.t_end = 1.0;
    cfg.grid.n = 16;
    cfg.species = {{1.0, Statistics::fermion}, {2.0, Statistics::fermion}};
    cfg.init.kind = InitSpec::Kind::shifted_equilibria;
    cfg.init.params = {{1.0, {0.05, 0, 0}, 0.3}, {1.0, {-0.05, 0, 0}, 0.2}};
    cfg.diag_every = 1;
    return cfg;
}

}  // namespace

TEST_CASE("relaxation conserves invariants and dissipates H") {
    const SimConfig cfg = two_fermion_config();
    const SimState st = run(cfg);
    const auto& d = st.diagnostics;
    REQUIRE(d.size() > 10);
    const auto& d0 = d.front();
    const double pscale = std::sqrt(2.0 * d0.energy * (d0.mass1 + 2.0 * d0.mass2));
    for (const auto& r : d) {
        CHECK(rel(r.mass1, d0.mass1) < 1e-12);
        CHECK(rel(r.mass2, d0.mass2) < 1e-12);
        CHECK(rel(r.energy, d0.energy) < 1e-12);
        CHECK(norm(r.p - d0.p) / pscale < 1e-12);
        CHECK(r.maxf1 < 1.0);
        CHECK(r.maxf2 < 1.0);
    }
    // strict decrease away from equilibrium, tolerance-band monotone overall
    CHECK(d[1].H < d[0].H);
    for (std::size_t i = 1; i < d.size(); ++i)
        CHECK(d[i].H <= d[i - 1].H + 1e-14 * std::fabs(d[i - 1].H));
}

TEST_CASE("a state at the joint equilibrium is a fixed point") {
    SimConfig cfg = two_fermion_config();
    cfg.init.params = {{1.2, {0.1, 0, 0}, 0.4}, {1.2, {0.1, 0, 0}, 0.7}};
    cfg.t_end = 0.1;
    const SimState st = run(cfg);
    const auto& d = st.diagnostics;
    CHECK(rel(d.back().mass1, d.front().mass1) < 1e-13);
    CHECK(std::fabs(d.back().H - d.front().H) < 1e-12 * std::fabs(d.front().H));
    // the fields themselves barely move
    SimState fresh = make_initial_state(cfg);
    double dev = 0.0;
    for (std::size_t i = 0; i < fresh.grid.size(); ++i)
        dev = std::fmax(dev, std::fabs(fresh.fields[0][0].values[i] -
                                       st.fields[0][0].values[i]));
    CHECK(dev < 1e-12);
}

TEST_CASE("single-species relaxation stays within the fermion bound") {
    SimConfig cfg;
    cfg.mode = SimMode::homogeneous;
    cfg.dt = 0.05;
    cfg.t_end = 1.0;
    cfg.grid.n = 16;
    cfg.species = {{1.0, Statistics::fermion}};
    cfg.init.kind = InitSpec::Kind::shifted_equilibria;
    const double c999 = std::log(1.0 / 0.999 - 1.0);
    cfg.init.params = {{1.0, {0, 0, 0}, c999}};
    const SimState st = run(cfg);
    for (const auto& r : st.diagnostics) {
        CHECK(r.maxf1 < 1.0);
        CHECK(r.maxf1 > 0.9);
        CHECK(rel(r.mass1, st.diagnostics.front().mass1) < 1e-12);
        CHECK(r.mass2 == 0.0);
    }
}

TEST_CASE("infeasible moments abort with cell context") {
    // Dense cold Bose gas beyond the condensation boundary.
    SimConfig cfg;
    cfg.mode = SimMode::homogeneous;
    cfg.species = {{1.0, Statistics::boson}};
    cfg.dt = 0.01;
    cfg.t_end = 0.1;

    SimState st;
    st.grid = MomentumGrid(4.0, 8);
    st.nx = 1;
    DistributionField f{std::vector<double>(st.grid.size(), 0.0), Statistics::boson, 1.0};
    const int mid = st.grid.n() / 2;
    for (int k = mid - 1; k <= mid; ++k)
        for (int j = mid - 1; j <= mid; ++j)
            for (int i = mid - 1; i <= mid; ++i) f.values[st.grid.index(i, j, k)] = 100.0;
    st.fields.push_back({f});
    st.warm.resize(1);

    try {
        relax_step(st, cfg, cfg.dt);
        FAIL("expected FeasibilityError");
    } catch (const FeasibilityError& e) {
        CHECK(e.cell() == 0);
        CHECK(e.species() == 0);
        CHECK(std::string(e.what()).find("condensation") != std::string::npos);
    }
}

TEST_CASE("run annotates infeasibility with the step index") {
    // Same condensed Bose state entering through the snapshot loader.
    const MomentumGrid grid(4.0, 8);
    DistributionField f{std::vector<double>(grid.size(), 0.0), Statistics::boson, 1.0};
    const int mid = grid.n() / 2;
    for (int k = mid - 1; k <= mid; ++k)
        for (int j = mid - 1; j <= mid; ++j)
            for (int i = mid - 1; i <= mid; ++i) f.values[grid.index(i, j, k)] = 100.0;
    const std::string path =
        (std::filesystem::temp_directory_path() / "qbgk_condensed.qbgk").string();
    save_snapshot(path, f, grid);

    SimConfig cfg;
    cfg.mode = SimMode::homogeneous;
    cfg.species = {{1.0, Statistics::boson}};
    cfg.dt = 0.01;
    cfg.t_end = 0.1;
    cfg.init.kind = InitSpec::Kind::snapshot;
    cfg.init.snapshot_files = {path};
    try {
        run(cfg);
        FAIL("expected FeasibilityError");
    } catch (const FeasibilityError& e) {
        CHECK(std::string(e.what()).find("at step 1") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("zero-time run returns the initial state verbatim") {
    SimConfig cfg = two_fermion_config();
    cfg.t_end = 0.0;
    const SimState st = run(cfg);
    CHECK(st.step == 0);
    CHECK(st.diagnostics.size() == 1);
    const SimState fresh = make_initial_state(cfg);
    CHECK(std::memcmp(st.fields[0][0].values.data(), fresh.fields[0][0].values.data(),
                      st.grid.size() * sizeof(double)) == 0);
}

// Transport fixtures use dyadic numbers: p_max = 8, n = 16 gives dp = 1 and
// a fastest node at px = 7.5; dx = 1.875 and dt = 0.25 give Courant exactly 1.
namespace {

SimConfig slab_config(int nx, double dt) {
    SimConfig cfg;
    cfg.mode = SimMode::slab1d;
    cfg.dt = dt;
    cfg.t_end = dt;
    cfg.nx = nx;
    cfg.x_length = 1.875 * nx;
    cfg.grid.n = 16;
    cfg.grid.p_max = 8.0;
    cfg.species = {{1.0, Statistics::fermion}};
    return cfg;
}

SimState pulse_state(const SimConfig& cfg, std::size_t node, const std::vector<int>& cells) {
    SimState st;
    st.grid = MomentumGrid(cfg.grid.p_max, cfg.grid.n);
    st.nx = cfg.nx;
    st.dx = cfg.x_length / cfg.nx;
    std::vector<DistributionField> fields;
    for (int ix = 0; ix < cfg.nx; ++ix)
        fields.push_back({std::vector<double>(st.grid.size(), 0.0), Statistics::fermion, 1.0});
    for (int c : cells) fields[static_cast<std::size_t>(c)].values[node] = 1.0;
    st.fields.push_back(std::move(fields));
    st.warm.resize(static_cast<std::size_t>(cfg.nx));
    return st;
}

double total_mass(const SimState& st) {
    double mass = 0.0;
    for (const auto& cell : st.fields[0])
        for (double v : cell.values) mass += v;
    return mass * st.grid.cell_volume() * st.dx;
}

}  // namespace

TEST_CASE("transport: spatially uniform states are unchanged bitwise") {
    SimConfig cfg = slab_config(6, 0.1);
    SimState st = pulse_state(cfg, 0, {});
    for (auto& cell : st.fields[0])
        for (std::size_t i = 0; i < cell.values.size(); ++i)
            cell.values[i] = 1e-3 * static_cast<double>(i % 7);
    const std::vector<double> before = st.fields[0][2].values;
    transport_step(st, cfg, cfg.dt);
    CHECK(std::memcmp(before.data(), st.fields[0][2].values.data(),
                      before.size() * sizeof(double)) == 0);
}

TEST_CASE("transport: unit Courant number shifts exactly one cell per step") {
    SimConfig cfg = slab_config(8, 0.25);
    const MomentumGrid grid(cfg.grid.p_max, cfg.grid.n);
    const std::size_t fast_node = grid.index(15, 4, 4);  // px = 7.5, Courant = 1
    SimState st = pulse_state(cfg, fast_node, {2, 3});

    transport_step(st, cfg, cfg.dt);
    for (int ix = 0; ix < 8; ++ix) {
        const double expect = (ix == 3 || ix == 4) ? 1.0 : 0.0;
        CHECK(st.fields[0][static_cast<std::size_t>(ix)].values[fast_node] == expect);
    }
    // one full period returns the pulse bitwise
    for (int s = 1; s < 8; ++s) transport_step(st, cfg, cfg.dt);
    for (int ix = 0; ix < 8; ++ix) {
        const double expect = (ix == 2 || ix == 3) ? 1.0 : 0.0;
        CHECK(st.fields[0][static_cast<std::size_t>(ix)].values[fast_node] == expect);
    }

    // negative-velocity node shifts the other way
    const std::size_t back_node = grid.index(0, 4, 4);  // px = -7.5
    SimState sb = pulse_state(cfg, back_node, {5});
    transport_step(sb, cfg, cfg.dt);
    CHECK(sb.fields[0][4].values[back_node] == 1.0);
    CHECK(sb.fields[0][5].values[back_node] == 0.0);
}

TEST_CASE("transport conserves mass to round-off over a full period") {
    SimConfig cfg = slab_config(8, 0.125);  // Courant 1/2 at the fastest node
    const MomentumGrid grid(cfg.grid.p_max, cfg.grid.n);
    SimState st = pulse_state(cfg, grid.index(15, 4, 4), {1, 2, 3});
    st.fields[0][2].values[grid.index(12, 7, 3)] = 0.8;  // second velocity for variety
    const double mass0 = total_mass(st);
    for (int s = 0; s < 32; ++s) transport_step(st, cfg, cfg.dt);
    CHECK(rel(total_mass(st), mass0) < 1e-13);
    for (const auto& cell : st.fields[0])
        for (double v : cell.values) CHECK(v >= 0.0);
}

TEST_CASE("transport rejects CFL violations and wrong modes") {
    SimConfig cfg = slab_config(4, 0.5);  // Courant 2 at the fastest node
    SimState st = pulse_state(cfg, 0, {0});
    CHECK_THROWS_AS(transport_step(st, cfg, cfg.dt), DomainError);

    SimConfig homog = two_fermion_config();
    SimState hs = make_initial_state(homog);
    CHECK_THROWS_AS(transport_step(hs, homog, 0.01), DomainError);
}

TEST_CASE("slab run with a cosine density perturbation conserves invariants") {
    SimConfig cfg;
    cfg.mode = SimMode::slab1d;
    cfg.dt = 0.05;
    cfg.t_end = 1.0;
    cfg.nx = 8;
    cfg.x_length = 40.0;
    cfg.grid.n = 16;
    cfg.species = {{1.0, Statistics::fermion}, {2.0, Statistics::fermion}};
    cfg.init.kind = InitSpec::Kind::cosine_perturbation;
    cfg.init.params = {{1.0, {0, 0, 0}, 0.5}, {1.0, {0, 0, 0}, 0.4}};
    cfg.init.amplitude = 0.2;
    cfg.init.mode = 1;
    cfg.diag_every = 4;
    const SimState st = run(cfg);
    const auto& d = st.diagnostics;
    const auto& d0 = d.front();
    for (const auto& r : d) {
        CHECK(rel(r.mass1, d0.mass1) < 1e-12);
        CHECK(rel(r.mass2, d0.mass2) < 1e-12);
        CHECK(rel(r.energy, d0.energy) < 1e-11);
        CHECK(r.maxf1 < 1.0);
    }
    // relaxation dissipates the summed H even with transport active
    CHECK(d.back().H < d.front().H);
}

TEST_CASE("strang splitting runs and conserves mass") {
    SimConfig cfg;
    cfg.mode = SimMode::slab1d;
    cfg.splitting = Splitting::strang;
    cfg.dt = 0.05;
    cfg.t_end = 0.5;
    cfg.nx = 4;
    cfg.x_length = 20.0;
    cfg.grid.n = 16;
    cfg.species = {{1.0, Statistics::fermion}, {2.0, Statistics::fermion}};
    cfg.init.kind = InitSpec::Kind::cosine_perturbation;
    cfg.init.params = {{1.0, {0, 0, 0}, 0.5}, {1.0, {0, 0, 0}, 0.4}};
    cfg.init.amplitude = 0.1;
    const SimState st = run(cfg);
    CHECK(rel(st.diagnostics.back().mass1, st.diagnostics.front().mass1) < 1e-12);
}

TEST_CASE("config validation rejects malformed setups") {
    SimConfig cfg = two_fermion_config();
    cfg.dt = 0.0;
    CHECK_THROWS_AS(make_initial_state(cfg), ConfigError);

    cfg = two_fermion_config();
    cfg.init.params[0].a = -1.0;
    CHECK_THROWS_AS(make_initial_state(cfg), ConfigError);

    cfg = two_fermion_config();
    cfg.species[1].stat = Statistics::boson;
    cfg.init.params[1].c = -0.5;
    CHECK_THROWS_AS(make_initial_state(cfg), ConfigError);

    // cosine amplitude that would break the fermion bound
    SimConfig slab;
    slab.mode = SimMode::slab1d;
    slab.dt = 0.01;
    slab.t_end = 0.1;
    slab.nx = 4;
    slab.x_length = 20.0;
    slab.grid.n = 16;
    slab.species = {{1.0, Statistics::fermion}};
    slab.init.kind = InitSpec::Kind::cosine_perturbation;
    slab.init.params = {{1.0, {0, 0, 0}, -6.0}};
    slab.init.amplitude = 0.5;
    CHECK_THROWS_AS(make_initial_state(slab), ConfigError);

    // CFL gate at configuration time
    SimConfig cflbad = slab_config(4, 10.0);
    cflbad.init.kind = InitSpec::Kind::shifted_equilibria;
    cflbad.init.params = {{1.0, {0, 0, 0}, 0.5}};
    CHECK_THROWS_AS(make_initial_state(cflbad), ConfigError);
}
