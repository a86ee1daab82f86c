#include "qbgk/bgk_dynamics.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "qbgk/errors.hpp"

namespace qbgk {

namespace {

struct UpdateWeights {
    double decay = 0.0;
    double w_intra = 0.0;
    double w_inter = 0.0;
};

UpdateWeights update_weights(const RelaxOptions& relax, bool two_species, double dt) {
    const double nu_i = relax.nu_intra;
    const double nu_e = two_species ? relax.nu_inter : 0.0;
    const double nu = nu_i + nu_e;
    UpdateWeights w;
    w.decay = std::exp(-nu * dt);
    const double gain = 1.0 - w.decay;
    w.w_intra = gain * nu_i / nu;
    w.w_inter = gain * nu_e / nu;
    return w;
}

SpeciesMoments weighted_moments(const kernels::RawMoments& raw, double cell_volume,
                                double mass) {
    SpeciesMoments mom;
    mom.N = cell_volume * raw.n;
    mom.P = {cell_volume * raw.px, cell_volume * raw.py, cell_volume * raw.pz};
    mom.E = cell_volume * raw.e2 / (2.0 * mass);
    return mom;
}

// Coefficient solve + attractor update for one spatial cell. `ma`/`mb` are
// caller-provided n^3 scratch buffers.
void relax_cell(SimState& state, const SimConfig& cfg, int cell, const UpdateWeights& w,
                double* ma, double* mb, Exec exec) {
    const MomentumGrid& grid = state.grid;
    const bool two = state.species_count() == 2;
    const double m1 = cfg.species[0].mass;
    const Statistics tau1 = cfg.species[0].stat;

    DistributionField& f1 = state.fields[0][cell];
    const kernels::RawMoments raw1 = kernels::reduce_moments(f1.values.data(), grid, exec);
    kernels::RawMoments raw2;
    double m2 = 0.0;
    Statistics tau2 = Statistics::fermion;
    if (two) {
        m2 = cfg.species[1].mass;
        tau2 = cfg.species[1].stat;
        raw2 = kernels::reduce_moments(state.fields[1][cell].values.data(), grid, exec);
    }

    SimState::WarmStart& warm = state.warm[static_cast<std::size_t>(cell)];
    IntraCoeffs i1, i2;
    InterCoeffs inter;
    bool have = false;
    if (cfg.relax.discrete_consistent && warm.valid) {
        try {
            i1 = refine_intra_discrete(grid, m1, tau1, raw1, warm.intra1, exec);
            if (two) {
                i2 = refine_intra_discrete(grid, m2, tau2, raw2, warm.intra2, exec);
                inter = refine_inter_discrete(grid, m1, tau1, m2, tau2, raw1, raw2,
                                              warm.inter, exec);
            }
            have = true;
        } catch (const ConvergenceError&) {
            have = false;  // reseed from the continuum solution below
        }
    }
    if (!have) {
        const double vol = grid.cell_volume();
        const SpeciesMoments mom1 = weighted_moments(raw1, vol, m1);
        try {
            i1 = solve_intra(m1, tau1, mom1);
        } catch (const FeasibilityError& e) {
            throw e.with_context(0, cell);
        }
        if (two) {
            const SpeciesMoments mom2 = weighted_moments(raw2, vol, m2);
            try {
                i2 = solve_intra(m2, tau2, mom2);
            } catch (const FeasibilityError& e) {
                throw e.with_context(1, cell);
            }
            try {
                inter = solve_inter({m1, m2, tau1, tau2, mom1, mom2});
            } catch (const FeasibilityError& e) {
                throw e.with_context(-1, cell);
            }
        }
        if (cfg.relax.discrete_consistent) {
            i1 = refine_intra_discrete(grid, m1, tau1, raw1, i1, exec);
            if (two) {
                i2 = refine_intra_discrete(grid, m2, tau2, raw2, i2, exec);
                inter = refine_inter_discrete(grid, m1, tau1, m2, tau2, raw1, raw2, inter,
                                              exec);
            }
        }
    }
    warm.intra1 = i1;
    warm.intra2 = i2;
    warm.inter = inter;
    warm.valid = true;

    kernels::eval_equilibrium(ma, grid, m1, tau1, i1.a, i1.b, i1.c, exec);
    if (two) kernels::eval_equilibrium(mb, grid, m1, tau1, inter.a, inter.b, inter.c12, exec);
    kernels::relax_combine(f1.values.data(), ma, two ? mb : ma, w.decay, w.w_intra,
                           two ? w.w_inter : 0.0, grid, exec);

    if (two) {
        DistributionField& f2 = state.fields[1][cell];
        kernels::eval_equilibrium(ma, grid, m2, tau2, i2.a, i2.b, i2.c, exec);
        kernels::eval_equilibrium(mb, grid, m2, tau2, inter.a, inter.b, inter.c21, exec);
        kernels::relax_combine(f2.values.data(), ma, mb, w.decay, w.w_intra, w.w_inter,
                               grid, exec);
    }
}

void validate_config(const SimConfig& cfg) {
    if (cfg.species.empty() || cfg.species.size() > 2)
        throw ConfigError("config: one or two species required");
    for (const SpeciesSpec& s : cfg.species)
        if (!(s.mass > 0.0)) throw ConfigError("config: species mass must be positive");
    if (!(cfg.dt > 0.0)) throw ConfigError("config: dt must be positive");
    if (!(cfg.t_end >= 0.0)) throw ConfigError("config: t_end must be nonnegative");
    if (cfg.diag_every < 1) throw ConfigError("config: diag_every must be >= 1");
    if (!(cfg.relax.nu_intra >= 0.0) || !(cfg.relax.nu_inter >= 0.0) ||
        !(cfg.relax.nu_intra + cfg.relax.nu_inter > 0.0))
        throw ConfigError("config: relaxation frequencies must be nonnegative with positive sum");
    if (cfg.mode == SimMode::homogeneous) {
        if (cfg.nx != 1) throw ConfigError("config: homogeneous mode runs a single cell");
    } else {
        if (cfg.nx < 1) throw ConfigError("config: slab1d needs nx >= 1");
        if (!(cfg.x_length > 0.0)) throw ConfigError("config: x_length must be positive");
    }
}

}  // namespace

SimState make_initial_state(const SimConfig& cfg) {
    validate_config(cfg);
    const std::size_t ns = cfg.species.size();

    SimState state;
    state.nx = cfg.mode == SimMode::slab1d ? cfg.nx : 1;

    if (cfg.init.kind == InitSpec::Kind::snapshot) {
        if (cfg.mode != SimMode::homogeneous)
            throw ConfigError("config: snapshot initial condition requires homogeneous mode");
        if (cfg.init.snapshot_files.size() != ns)
            throw ConfigError("config: one snapshot file per species required");
        std::vector<SnapshotRecord> recs;
        for (const std::string& path : cfg.init.snapshot_files)
            recs.push_back(load_snapshot(path));
        for (std::size_t s = 1; s < ns; ++s)
            if (recs[s].n != recs[0].n || recs[s].p_max != recs[0].p_max)
                throw ConfigError("config: snapshot grids disagree between species");
        if (cfg.grid.p_max > 0.0 && cfg.grid.p_max != recs[0].p_max)
            throw ConfigError("config: grid.p_max conflicts with snapshot header");
        state.grid = MomentumGrid(recs[0].p_max, recs[0].n);
        for (std::size_t s = 0; s < ns; ++s) {
            if (recs[s].field.mass != cfg.species[s].mass ||
                recs[s].field.tau != cfg.species[s].stat)
                throw ConfigError("config: snapshot species header conflicts with config");
            state.fields.push_back({std::move(recs[s].field)});
        }
    } else {
        if (cfg.init.params.size() != ns)
            throw ConfigError("config: one equilibrium parameter set per species required");
        std::vector<MomentumGrid::SpeciesExtent> ext;
        for (std::size_t s = 0; s < ns; ++s) {
            const EquilibriumInit& p = cfg.init.params[s];
            if (!(p.a > 0.0)) throw ConfigError("config: equilibrium scale a must be positive");
            if (is_boson(cfg.species[s].stat) && !(p.c > 0.0))
                throw ConfigError("config: Bose equilibrium requires c > 0");
            ext.push_back({cfg.species[s].mass, p.a, norm(p.b)});
        }
        const double p_max = cfg.grid.p_max > 0.0
                                 ? cfg.grid.p_max
                                 : MomentumGrid::adequate_p_max(ext);
        state.grid = MomentumGrid(p_max, cfg.grid.n);

        double cos_peak = 1.0;
        if (cfg.init.kind == InitSpec::Kind::cosine_perturbation) {
            if (cfg.mode != SimMode::slab1d)
                throw ConfigError("config: cosine perturbation requires slab1d mode");
            if (!(std::fabs(cfg.init.amplitude) < 1.0))
                throw ConfigError("config: cosine amplitude must satisfy |A| < 1");
            if (cfg.init.mode < 1) throw ConfigError("config: cosine mode must be >= 1");
            cos_peak = 1.0 + std::fabs(cfg.init.amplitude);
        }

        for (std::size_t s = 0; s < ns; ++s) {
            const EquilibriumInit& p = cfg.init.params[s];
            DistributionField base = eval_equilibrium(p.a, p.b, p.c, cfg.species[s].mass,
                                                      cfg.species[s].stat, state.grid);
            if (is_fermion(cfg.species[s].stat) && cfg.init.kind ==
                InitSpec::Kind::cosine_perturbation) {
                const double peak = max_occupancy(base, state.grid) * cos_peak;
                if (!(peak < 1.0))
                    throw ConfigError("config: cosine perturbation breaks the fermion bound");
            }
            std::vector<DistributionField> cells;
            cells.reserve(static_cast<std::size_t>(state.nx));
            for (int ix = 0; ix < state.nx; ++ix) {
                DistributionField f = base;
                if (cfg.init.kind == InitSpec::Kind::cosine_perturbation) {
                    const double phase = 2.0 * std::numbers::pi * cfg.init.mode *
                                         (ix + 0.5) / state.nx;
                    const double factor = 1.0 + cfg.init.amplitude * std::cos(phase);
                    for (double& v : f.values) v *= factor;
                }
                cells.push_back(std::move(f));
            }
            state.fields.push_back(std::move(cells));
        }
    }

    if (cfg.mode == SimMode::slab1d) {
        state.dx = cfg.x_length / cfg.nx;
        double min_mass = cfg.species[0].mass;
        for (const SpeciesSpec& s : cfg.species) min_mass = std::fmin(min_mass, s.mass);
        const double cfl = cfg.dt * state.grid.p_max() / (min_mass * state.dx);
        if (cfl > 1.0 + 1e-12)
            throw ConfigError("config: CFL = dt p_max / (min(m) dx) exceeds 1");
    }

    state.warm.assign(static_cast<std::size_t>(state.nx), {});
    return state;
}

void relax_step(SimState& state, const SimConfig& cfg, double dt) {
    const UpdateWeights w = update_weights(cfg.relax, state.species_count() == 2, dt);
    const int nx = state.nx;
    const std::size_t len = state.grid.size();

    if (nx == 1) {
        std::vector<double> ma(len), mb(len);
        relax_cell(state, cfg, 0, w, ma.data(), mb.data(), default_exec());
        return;
    }

    // Parallel over cells with serial kernels inside; each cell is
    // independent, so scheduling cannot affect results.
    std::exception_ptr first_error;
    int first_error_cell = nx;
    std::mutex error_mutex;
#if defined(QBGK_HAVE_OPENMP)
#pragma omp parallel num_threads(max_threads())
#endif
    {
        std::vector<double> ma(len), mb(len);
#if defined(QBGK_HAVE_OPENMP)
#pragma omp for schedule(static)
#endif
        for (int cell = 0; cell < nx; ++cell) {
            try {
                relax_cell(state, cfg, cell, w, ma.data(), mb.data(), Exec::serial);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (cell < first_error_cell) {
                    first_error_cell = cell;
                    first_error = std::current_exception();
                }
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

void transport_step(SimState& state, const SimConfig& cfg, double dt) {
    if (cfg.mode != SimMode::slab1d)
        throw DomainError("transport_step requires slab1d mode");
    const MomentumGrid& grid = state.grid;
    const int n = grid.n();
    const int nx = state.nx;
    const double dx = state.dx;

    for (int s = 0; s < state.species_count(); ++s) {
        const double m = cfg.species[static_cast<std::size_t>(s)].mass;
        const double vmax = (grid.p_max() - 0.5 * grid.dp()) / m;
        if (vmax * dt / dx > 1.0 + 1e-12)
            throw DomainError("transport_step: CFL condition violated");
    }

    const std::size_t len = grid.size();
    for (int s = 0; s < state.species_count(); ++s) {
        std::vector<DistributionField>& cells = state.fields[static_cast<std::size_t>(s)];
        const double m = cfg.species[static_cast<std::size_t>(s)].mass;
        const double dt_dx = dt / dx;
#if defined(QBGK_HAVE_OPENMP)
#pragma omp parallel num_threads(max_threads())
#endif
        {
            std::vector<double> col(static_cast<std::size_t>(nx));
#if defined(QBGK_HAVE_OPENMP)
#pragma omp for schedule(static)
#endif
            for (long node = 0; node < static_cast<long>(len); ++node) {
                const int i = static_cast<int>(node % n);
                const double cou = (grid.coord(i) / m) * dt_dx;
                for (int ix = 0; ix < nx; ++ix)
                    col[static_cast<std::size_t>(ix)] = cells[static_cast<std::size_t>(ix)]
                                                            .values[static_cast<std::size_t>(node)];
                if (cou >= 0.0) {
                    for (int ix = 0; ix < nx; ++ix) {
                        const int left = ix == 0 ? nx - 1 : ix - 1;
                        cells[static_cast<std::size_t>(ix)].values[static_cast<std::size_t>(node)] =
                            col[static_cast<std::size_t>(ix)] -
                            cou * (col[static_cast<std::size_t>(ix)] -
                                   col[static_cast<std::size_t>(left)]);
                    }
                } else {
                    for (int ix = 0; ix < nx; ++ix) {
                        const int right = ix == nx - 1 ? 0 : ix + 1;
                        cells[static_cast<std::size_t>(ix)].values[static_cast<std::size_t>(node)] =
                            col[static_cast<std::size_t>(ix)] -
                            cou * (col[static_cast<std::size_t>(right)] -
                                   col[static_cast<std::size_t>(ix)]);
                    }
                }
            }
        }
    }
}

DiagnosticsRecord measure(const SimState& state) {
    DiagnosticsRecord rec;
    rec.t = state.t;
    const double cell_w = state.nx > 1 ? state.dx : 1.0;
    const Exec exec = state.nx == 1 ? default_exec() : Exec::serial;
    const bool two = state.species_count() == 2;
    const double vol = state.grid.cell_volume();

    for (int cell = 0; cell < state.nx; ++cell) {
        const DistributionField& f1 = state.fields[0][static_cast<std::size_t>(cell)];
        const kernels::RawMoments r1 =
            kernels::reduce_moments(f1.values.data(), state.grid, exec);
        rec.mass1 += cell_w * vol * r1.n;
        rec.p[0] += cell_w * vol * r1.px;
        rec.p[1] += cell_w * vol * r1.py;
        rec.p[2] += cell_w * vol * r1.pz;
        rec.energy += cell_w * vol * r1.e2 / (2.0 * f1.mass);
        rec.H += cell_w * vol *
                 kernels::reduce_entropy(f1.values.data(), f1.tau, state.grid, exec);
        rec.maxf1 = std::fmax(rec.maxf1, kernels::reduce_max(f1.values.data(), state.grid, exec));
        if (two) {
            const DistributionField& f2 = state.fields[1][static_cast<std::size_t>(cell)];
            const kernels::RawMoments r2 =
                kernels::reduce_moments(f2.values.data(), state.grid, exec);
            rec.mass2 += cell_w * vol * r2.n;
            rec.p[0] += cell_w * vol * r2.px;
            rec.p[1] += cell_w * vol * r2.py;
            rec.p[2] += cell_w * vol * r2.pz;
            rec.energy += cell_w * vol * r2.e2 / (2.0 * f2.mass);
            rec.H += cell_w * vol *
                     kernels::reduce_entropy(f2.values.data(), f2.tau, state.grid, exec);
            rec.maxf2 =
                std::fmax(rec.maxf2, kernels::reduce_max(f2.values.data(), state.grid, exec));
        }
    }
    return rec;
}

SimState run(const SimConfig& cfg) {
    SimState state = make_initial_state(cfg);
    state.diagnostics.push_back(measure(state));

    while (cfg.t_end - state.t > 0.5 * cfg.dt) {
        const double remaining = cfg.t_end - state.t;
        const double dt = remaining < 1.5 * cfg.dt ? remaining : cfg.dt;
        try {
            if (cfg.mode == SimMode::slab1d) {
                if (cfg.splitting == Splitting::strang) {
                    transport_step(state, cfg, 0.5 * dt);
                    relax_step(state, cfg, dt);
                    transport_step(state, cfg, 0.5 * dt);
                } else {
                    transport_step(state, cfg, dt);
                    relax_step(state, cfg, dt);
                }
            } else {
                relax_step(state, cfg, dt);
            }
        } catch (const FeasibilityError& e) {
            throw FeasibilityError(e.reason() + " at step " + std::to_string(state.step + 1) +
                                       ", t = " + std::to_string(state.t + dt),
                                   e.species(), e.cell());
        }
        state.t += dt;
        ++state.step;
        if (state.step % cfg.diag_every == 0) state.diagnostics.push_back(measure(state));
    }
    if (state.diagnostics.empty() || state.diagnostics.back().t != state.t)
        state.diagnostics.push_back(measure(state));
    return state;
}

}  // namespace qbgk
