#pragma once

#include <string>
#include <vector>

#include "qbgk/momentum_grid.hpp"
#include "qbgk/statistics.hpp"

namespace qbgk {

/// Per-node occupancy values of one species on a momentum grid.
/// Invariants: values >= 0, and < 1 for fermions.
struct DistributionField {
    std::vector<double> values;
    Statistics tau = Statistics::fermion;
    double mass = 1.0;
};

/// Binary snapshot: 8-byte magic, u32 version, u32 n, f64 p_max, f64 mass,
/// i32 tau, then n^3 doubles in x-fastest order; all scalars little-endian.
/// A file may hold several consecutive records (one per spatial cell).
struct SnapshotRecord {
    DistributionField field;
    double p_max = 0.0;
    int n = 0;
};

void save_snapshot(const std::string& path, const DistributionField& field,
                   const MomentumGrid& grid);

/// Write multiple records (cell-major) into one file.
void save_snapshots(const std::string& path, const std::vector<const DistributionField*>& fields,
                    const MomentumGrid& grid);

SnapshotRecord load_snapshot(const std::string& path, std::size_t record_index = 0);

std::size_t snapshot_record_count(const std::string& path);

}  // namespace qbgk
