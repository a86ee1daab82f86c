// Benchmark comparing the serial reference kernels with the OpenMP ones.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "qbgk/bgk_dynamics.hpp"
#include "qbgk/distributions.hpp"
#include "qbgk/kernels.hpp"

using namespace qbgk;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const double s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (s < best) best = s;
    }
    return best;
}

void report(const char* name, double serial_s, double parallel_s) {
    std::printf("%-18s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n", name,
                1e3 * serial_s, 1e3 * parallel_s, serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
    int n = 64;
    if (argc > 1) n = std::atoi(argv[1]);
    if (const char* env = std::getenv("THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) set_max_threads(t);
    }
    std::printf("grid n = %d (%zu nodes), threads = %d\n", n, MomentumGrid(8.0, n).size(),
                max_threads());

    MomentumGrid grid(8.0, n);
    std::vector<double> buf(grid.size()), ma(grid.size()), mb(grid.size());
    kernels::eval_equilibrium(buf.data(), grid, 1.0, Statistics::fermion, 1.0,
                              {0.1, 0.0, 0.0}, 0.3, Exec::serial);
    ma = buf;
    mb = buf;

    const int reps = 5;
    report("eval_equilibrium",
           time_best_of(reps, [&] {
               kernels::eval_equilibrium(buf.data(), grid, 1.0, Statistics::fermion, 1.0,
                                         {0.1, 0.0, 0.0}, 0.3, Exec::serial);
           }),
           time_best_of(reps, [&] {
               kernels::eval_equilibrium(buf.data(), grid, 1.0, Statistics::fermion, 1.0,
                                         {0.1, 0.0, 0.0}, 0.3, Exec::parallel);
           }));
    report("reduce_moments",
           time_best_of(reps, [&] { kernels::reduce_moments(buf.data(), grid, Exec::serial); }),
           time_best_of(reps,
                        [&] { kernels::reduce_moments(buf.data(), grid, Exec::parallel); }));
    report("reduce_entropy",
           time_best_of(reps,
                        [&] {
                            kernels::reduce_entropy(buf.data(), Statistics::fermion, grid,
                                                    Exec::serial);
                        }),
           time_best_of(reps, [&] {
               kernels::reduce_entropy(buf.data(), Statistics::fermion, grid, Exec::parallel);
           }));
    report("relax_combine",
           time_best_of(reps,
                        [&] {
                            kernels::relax_combine(buf.data(), ma.data(), mb.data(), 0.98,
                                                   0.01, 0.01, grid, Exec::serial);
                        }),
           time_best_of(reps, [&] {
               kernels::relax_combine(buf.data(), ma.data(), mb.data(), 0.98, 0.01, 0.01,
                                      grid, Exec::parallel);
           }));

    // Whole relaxation step (coefficient solves + attractor updates).
    SimConfig cfg;
    cfg.mode = SimMode::homogeneous;
    cfg.dt = 0.01;
    cfg.t_end = 0.01;
    cfg.grid.n = n >= 48 ? 32 : n;
    cfg.species = {{1.0, Statistics::fermion}, {2.0, Statistics::fermion}};
    cfg.init.kind = InitSpec::Kind::shifted_equilibria;
    cfg.init.params = {{1.0, {0.05, 0.0, 0.0}, 0.3}, {1.0, {-0.05, 0.0, 0.0}, 0.2}};
    SimState state = make_initial_state(cfg);
    relax_step(state, cfg, cfg.dt);  // warm path primed
    std::printf("relax_step (n=%d, warm): %.3f ms\n", cfg.grid.n,
                1e3 * time_best_of(reps, [&] { relax_step(state, cfg, cfg.dt); }));
    return 0;
}
