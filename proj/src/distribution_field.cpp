#include "qbgk/distribution_field.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "qbgk/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts unsupported");

namespace qbgk {

namespace {

constexpr char kMagic[8] = {'Q', 'B', 'G', 'K', 'F', 'L', 'D', '\0'};
constexpr std::uint32_t kVersion = 1;

struct Header {
    char magic[8];
    std::uint32_t version;
    std::uint32_t n;
    double p_max;
    double mass;
    std::int32_t tau;
};

std::size_t record_bytes(std::uint32_t n) {
    return sizeof(Header) + static_cast<std::size_t>(n) * n * n * sizeof(double);
}

void write_record(std::ofstream& out, const DistributionField& field,
                  const MomentumGrid& grid) {
    if (field.values.size() != grid.size())
        throw ConfigError("snapshot: field size does not match grid");
    Header h{};
    std::memcpy(h.magic, kMagic, sizeof(kMagic));
    h.version = kVersion;
    h.n = static_cast<std::uint32_t>(grid.n());
    h.p_max = grid.p_max();
    h.mass = field.mass;
    h.tau = static_cast<std::int32_t>(field.tau);
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    out.write(reinterpret_cast<const char*>(field.values.data()),
              static_cast<std::streamsize>(field.values.size() * sizeof(double)));
}

}  // namespace

void save_snapshot(const std::string& path, const DistributionField& field,
                   const MomentumGrid& grid) {
    save_snapshots(path, {&field}, grid);
}

void save_snapshots(const std::string& path, const std::vector<const DistributionField*>& fields,
                    const MomentumGrid& grid) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open snapshot file for writing: " + path);
    for (const DistributionField* f : fields) write_record(out, *f, grid);
    out.flush();
    if (!out) throw ConfigError("snapshot write failed: " + path);
}

SnapshotRecord load_snapshot(const std::string& path, std::size_t record_index) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open snapshot file: " + path);

    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, sizeof(kMagic)) != 0)
        throw ConfigError("not a field snapshot file: " + path);
    if (h.version != kVersion) throw ConfigError("unsupported snapshot version");

    if (record_index > 0) {
        in.seekg(static_cast<std::streamoff>(record_index * record_bytes(h.n)));
        in.read(reinterpret_cast<char*>(&h), sizeof(h));
        if (!in || std::memcmp(h.magic, kMagic, sizeof(kMagic)) != 0)
            throw ConfigError("snapshot record index out of range");
    }

    if (h.n < 4 || h.n % 2 != 0 || !(h.p_max > 0.0) || !(h.mass > 0.0) ||
        (h.tau != 1 && h.tau != -1))
        throw ConfigError("snapshot header is invalid");

    SnapshotRecord rec;
    rec.n = static_cast<int>(h.n);
    rec.p_max = h.p_max;
    rec.field.tau = h.tau == 1 ? Statistics::fermion : Statistics::boson;
    rec.field.mass = h.mass;
    const std::size_t count = static_cast<std::size_t>(h.n) * h.n * h.n;
    rec.field.values.resize(count);
    in.read(reinterpret_cast<char*>(rec.field.values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw ConfigError("snapshot truncated: " + path);

    for (double v : rec.field.values) {
        if (!(v >= 0.0)) throw ConfigError("snapshot contains negative occupancy");
        if (rec.field.tau == Statistics::fermion && v > 1.0 + 1e-12)
            throw ConfigError("snapshot violates the fermion occupancy bound");
    }
    return rec;
}

std::size_t snapshot_record_count(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open snapshot file: " + path);
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, sizeof(kMagic)) != 0)
        throw ConfigError("not a field snapshot file: " + path);
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    const std::size_t rb = record_bytes(h.n);
    if (bytes % rb != 0) throw ConfigError("snapshot file has a partial record");
    return bytes / rb;
}

}  // namespace qbgk
