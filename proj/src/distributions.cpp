#include "qbgk/distributions.hpp"

#include "qbgk/errors.hpp"

namespace qbgk {

DistributionField eval_equilibrium(double a, const Vec3& b, double c, double m,
                                   Statistics tau, const MomentumGrid& grid, Exec exec) {
    if (!(a > 0.0)) throw DomainError("eval_equilibrium: scale a must be positive");
    if (!(m > 0.0)) throw DomainError("eval_equilibrium: mass must be positive");
    if (is_boson(tau) && !(c > 0.0))
        throw DomainError("eval_equilibrium: Bose equilibrium requires c > 0");
    DistributionField field;
    field.tau = tau;
    field.mass = m;
    field.values.resize(grid.size());
    kernels::eval_equilibrium(field.values.data(), grid, m, tau, a, b, c, exec);
    return field;
}

SpeciesMoments discrete_moments(const DistributionField& field, const MomentumGrid& grid,
                                Exec exec) {
    if (field.values.size() != grid.size())
        throw DomainError("discrete_moments: field size does not match grid");
    const kernels::RawMoments raw = kernels::reduce_moments(field.values.data(), grid, exec);
    const double w = grid.cell_volume();
    SpeciesMoments mom;
    mom.N = w * raw.n;
    mom.P = {w * raw.px, w * raw.py, w * raw.pz};
    mom.E = w * raw.e2 / (2.0 * field.mass);
    return mom;
}

double h_functional(const DistributionField& f1, const DistributionField& f2,
                    const MomentumGrid& grid, Exec exec) {
    for (const DistributionField* f : {&f1, &f2}) {
        if (f->values.size() != grid.size())
            throw DomainError("h_functional: field size does not match grid");
        if (is_fermion(f->tau) &&
            kernels::reduce_max(f->values.data(), grid, exec) > 1.0 + 1e-12)
            throw DomainError("h_functional: fermion occupancy exceeds 1");
    }
    const double s = kernels::reduce_entropy(f1.values.data(), f1.tau, grid, exec) +
                     kernels::reduce_entropy(f2.values.data(), f2.tau, grid, exec);
    return grid.cell_volume() * s;
}

double max_occupancy(const DistributionField& field, const MomentumGrid& grid, Exec exec) {
    if (field.values.size() != grid.size())
        throw DomainError("max_occupancy: field size does not match grid");
    return kernels::reduce_max(field.values.data(), grid, exec);
}

}  // namespace qbgk
