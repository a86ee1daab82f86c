#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbgk/bgk_dynamics.hpp"
#include "qbgk/equilibrium_solver.hpp"

namespace qbgk {

/// Inputs of the coefficient-solving subcommand: species plus their moments.
struct CoeffProblemConfig {
    std::vector<SpeciesSpec> species;       // one or two
    std::vector<SpeciesMoments> moments;    // matching species
};

/// Parse a JSON config file. Throws ConfigError with a descriptive message.
SimConfig load_sim_config(const std::string& path);
CoeffProblemConfig load_coeff_config(const std::string& path);

/// Same parsers on in-memory text (used by tests).
SimConfig parse_sim_config(const std::string& text);
CoeffProblemConfig parse_coeff_config(const std::string& text);

/// FNV-1a 64-bit hash of a file's bytes, rendered as "fnv1a:<hex>".
std::string file_content_hash(const std::string& path);

/// Run manifest written atomically alongside every output set.
struct RunManifest {
    std::string artifact_version;
    std::string subcommand;
    std::string config_hash;
    std::string timestamp_utc;
    std::vector<std::string> outputs;
};

/// Writes <dir>/manifest.json via a temporary file plus rename.
void write_manifest(const std::string& dir, const RunManifest& manifest);

}  // namespace qbgk
