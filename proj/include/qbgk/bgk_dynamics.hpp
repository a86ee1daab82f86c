#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbgk/diagnostics.hpp"
#include "qbgk/discrete_solver.hpp"
#include "qbgk/distributions.hpp"
#include "qbgk/equilibrium_solver.hpp"

namespace qbgk {

enum class SimMode { homogeneous, slab1d };
enum class Splitting { lie, strang };

struct SpeciesSpec {
    double mass = 1.0;
    Statistics stat = Statistics::fermion;
};

/// One species' equilibrium parameters for the built-in initial conditions.
struct EquilibriumInit {
    double a = 1.0;
    Vec3 b{0.0, 0.0, 0.0};
    double c = 0.0;
};

struct InitSpec {
    enum class Kind { shifted_equilibria, cosine_perturbation, snapshot };
    Kind kind = Kind::shifted_equilibria;
    std::vector<EquilibriumInit> params;        // per species
    double amplitude = 0.0;                     // cosine_perturbation
    int mode = 1;                               // cosine_perturbation
    std::vector<std::string> snapshot_files;    // per species
};

struct RelaxOptions {
    // ON: refine coefficients against grid sums so the update conserves the
    // discrete invariants to round-off. OFF: continuum coefficients only.
    bool discrete_consistent = true;
    double nu_intra = 1.0;
    double nu_inter = 1.0;
};

struct GridSpec {
    int n = 32;
    double p_max = 0.0;  // 0 = auto-size from the tail-adequacy bound
};

struct SimConfig {
    SimMode mode = SimMode::homogeneous;
    double dt = 0.01;
    double t_end = 1.0;
    int nx = 1;             // slab1d spatial cells
    double x_length = 1.0;  // slab1d periodic domain length
    GridSpec grid;
    std::vector<SpeciesSpec> species;  // one or two entries
    InitSpec init;
    int diag_every = 1;
    RelaxOptions relax;
    Splitting splitting = Splitting::lie;
};

/// Spatial array of per-species occupancy fields plus the diagnostics series.
struct SimState {
    double t = 0.0;
    long step = 0;
    MomentumGrid grid{1.0, 4};
    int nx = 1;
    double dx = 0.0;
    // fields[s][cell]: species s in spatial cell `cell`.
    std::vector<std::vector<DistributionField>> fields;
    std::vector<DiagnosticsRecord> diagnostics;

    // Previous-step coefficients, used to seed the discrete refinement.
    struct WarmStart {
        IntraCoeffs intra1, intra2;
        InterCoeffs inter;
        bool valid = false;
    };
    std::vector<WarmStart> warm;

    int species_count() const { return static_cast<int>(fields.size()); }
};

/// Validates the configuration and evaluates the initial condition.
SimState make_initial_state(const SimConfig& cfg);

/// One relaxation step: per cell and species, recompute moments, solve the
/// intra and inter coefficient problems (discrete-consistent by default),
/// and apply the exact frozen-attractor update
/// f <- e^{-(nu_i+nu_e) dt} f + (1 - e^{-(nu_i+nu_e) dt}) (nu_i M_ii + nu_e M_ij)/(nu_i+nu_e).
void relax_step(SimState& state, const SimConfig& cfg, double dt);

/// First-order upwind advection along x with periodic boundaries.
/// Requires slab1d mode and node Courant numbers <= 1.
void transport_step(SimState& state, const SimConfig& cfg, double dt);

/// Global invariants, entropy and occupancy maxima of the state.
DiagnosticsRecord measure(const SimState& state);

/// Alternates transport (slab1d) and relaxation until t_end, recording
/// diagnostics every diag_every steps. Errors carry step and time context.
SimState run(const SimConfig& cfg);

}  // namespace qbgk
