#include "qbgk/config.hpp"

#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qbgk/errors.hpp"
#include "qbgk/version.hpp"

namespace qbgk {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config is not valid JSON");
    return j;
}

Statistics parse_statistics(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "fermion") return Statistics::fermion;
    if (s == "boson") return Statistics::boson;
    throw ConfigError("statistics must be \"fermion\" or \"boson\"");
}

std::vector<SpeciesSpec> parse_species(const json& j) {
    if (!j.contains("species") || !j["species"].is_array() || j["species"].empty() ||
        j["species"].size() > 2)
        throw ConfigError("config requires a \"species\" array with one or two entries");
    std::vector<SpeciesSpec> out;
    for (const json& s : j["species"]) {
        SpeciesSpec spec;
        if (!s.contains("mass") || !s.contains("statistics"))
            throw ConfigError("each species needs \"mass\" and \"statistics\"");
        spec.mass = s["mass"].get<double>();
        spec.stat = parse_statistics(s["statistics"]);
        if (!(spec.mass > 0.0)) throw ConfigError("species mass must be positive");
        out.push_back(spec);
    }
    return out;
}

Vec3 parse_vec3(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(std::string(what) + " must be a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

SimConfig parse_sim_config(const std::string& text) {
    const json j = parse_json(text);
    SimConfig cfg;
    cfg.species = parse_species(j);

    if (j.contains("mode")) {
        const std::string m = j["mode"].get<std::string>();
        if (m == "homogeneous")
            cfg.mode = SimMode::homogeneous;
        else if (m == "slab1d")
            cfg.mode = SimMode::slab1d;
        else
            throw ConfigError("mode must be \"homogeneous\" or \"slab1d\"");
    }

    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (g.contains("n")) cfg.grid.n = g["n"].get<int>();
        if (g.contains("p_max")) cfg.grid.p_max = g["p_max"].get<double>();
    }

    if (!j.contains("time")) throw ConfigError("config requires a \"time\" section");
    const json& t = j["time"];
    if (!t.contains("dt") || !t.contains("t_end"))
        throw ConfigError("\"time\" requires \"dt\" and \"t_end\"");
    cfg.dt = t["dt"].get<double>();
    cfg.t_end = t["t_end"].get<double>();
    if (t.contains("diag_every")) cfg.diag_every = t["diag_every"].get<int>();

    if (cfg.mode == SimMode::slab1d) {
        if (!j.contains("space")) throw ConfigError("slab1d mode requires a \"space\" section");
        const json& s = j["space"];
        if (!s.contains("nx") || !s.contains("x_length"))
            throw ConfigError("\"space\" requires \"nx\" and \"x_length\"");
        cfg.nx = s["nx"].get<int>();
        cfg.x_length = s["x_length"].get<double>();
    }

    if (!j.contains("init")) throw ConfigError("config requires an \"init\" section");
    const json& init = j["init"];
    const std::string kind = init.value("type", "");
    if (kind == "shifted_equilibria" || kind == "cosine_perturbation") {
        cfg.init.kind = kind == "shifted_equilibria" ? InitSpec::Kind::shifted_equilibria
                                                     : InitSpec::Kind::cosine_perturbation;
        if (!init.contains("params") || !init["params"].is_array() ||
            init["params"].size() != cfg.species.size())
            throw ConfigError("init.params must list one parameter set per species");
        for (const json& p : init["params"]) {
            EquilibriumInit e;
            e.a = p.at("a").get<double>();
            e.b = p.contains("b") ? parse_vec3(p["b"], "init b") : Vec3{0.0, 0.0, 0.0};
            e.c = p.at("c").get<double>();
            cfg.init.params.push_back(e);
        }
        if (cfg.init.kind == InitSpec::Kind::cosine_perturbation) {
            cfg.init.amplitude = init.value("amplitude", 0.0);
            cfg.init.mode = init.value("mode", 1);
        }
    } else if (kind == "snapshot") {
        cfg.init.kind = InitSpec::Kind::snapshot;
        if (!init.contains("files") || !init["files"].is_array() ||
            init["files"].size() != cfg.species.size())
            throw ConfigError("init.files must list one snapshot per species");
        for (const json& f : init["files"]) cfg.init.snapshot_files.push_back(f.get<std::string>());
    } else {
        throw ConfigError(
            "init.type must be \"shifted_equilibria\", \"cosine_perturbation\" or \"snapshot\"");
    }

    if (j.contains("relax")) {
        const json& r = j["relax"];
        cfg.relax.discrete_consistent = r.value("discrete_consistent", true);
        cfg.relax.nu_intra = r.value("nu_intra", 1.0);
        cfg.relax.nu_inter = r.value("nu_inter", 1.0);
    }
    if (j.contains("splitting")) {
        const std::string s = j["splitting"].get<std::string>();
        if (s == "lie")
            cfg.splitting = Splitting::lie;
        else if (s == "strang")
            cfg.splitting = Splitting::strang;
        else
            throw ConfigError("splitting must be \"lie\" or \"strang\"");
    }
    return cfg;
}

CoeffProblemConfig parse_coeff_config(const std::string& text) {
    const json j = parse_json(text);
    CoeffProblemConfig cfg;
    cfg.species = parse_species(j);
    if (!j.contains("moments") || !j["moments"].is_array() ||
        j["moments"].size() != cfg.species.size())
        throw ConfigError("config requires \"moments\" matching the species list");
    for (const json& m : j["moments"]) {
        SpeciesMoments mom;
        mom.N = m.at("N").get<double>();
        mom.P = m.contains("P") ? parse_vec3(m["P"], "moment P") : Vec3{0.0, 0.0, 0.0};
        mom.E = m.at("E").get<double>();
        if (!(mom.N > 0.0)) throw ConfigError("moment N must be positive");
        if (!(mom.E > 0.0)) throw ConfigError("moment E must be positive");
        cfg.moments.push_back(mom);
    }
    return cfg;
}

SimConfig load_sim_config(const std::string& path) { return parse_sim_config(read_file(path)); }

CoeffProblemConfig load_coeff_config(const std::string& path) {
    return parse_coeff_config(read_file(path));
}

std::string file_content_hash(const std::string& path) {
    const std::string bytes = read_file(path);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_manifest(const std::string& dir, const RunManifest& manifest) {
    json j;
    j["artifact_version"] = manifest.artifact_version.empty() ? kVersion
                                                              : manifest.artifact_version;
    j["subcommand"] = manifest.subcommand;
    j["config_hash"] = manifest.config_hash;
    j["timestamp_utc"] = manifest.timestamp_utc;
    j["outputs"] = manifest.outputs;

    namespace fs = std::filesystem;
    const fs::path target = fs::path(dir) / "manifest.json";
    const fs::path tmp = fs::path(dir) / "manifest.json.tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write manifest in " + dir);
        out << j.dump(2) << "\n";
    }
    fs::rename(tmp, target);
}

}  // namespace qbgk
