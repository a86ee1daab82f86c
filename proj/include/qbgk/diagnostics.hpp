#pragma once

#include <string>
#include <vector>

#include "qbgk/moments.hpp"

namespace qbgk {

/// One diagnostics sample: global invariants and entropy of the state.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass1 = 0.0;
    double mass2 = 0.0;
    Vec3 p{0.0, 0.0, 0.0};
    double energy = 0.0;
    double H = 0.0;
    double maxf1 = 0.0;
    double maxf2 = 0.0;
};

/// UTF-8 CSV with header t,mass1,mass2,px,py,pz,energy,H,maxf1,maxf2 and
/// 17-significant-digit values (locale-independent).
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& series);

std::string diagnostics_csv_text(const std::vector<DiagnosticsRecord>& series);

}  // namespace qbgk
