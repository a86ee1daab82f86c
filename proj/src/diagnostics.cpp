#include "qbgk/diagnostics.hpp"

#include <charconv>
#include <fstream>

#include "qbgk/errors.hpp"

namespace qbgk {

namespace {

void append_value(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    out.append(buf, res.ptr);
}

}  // namespace

std::string diagnostics_csv_text(const std::vector<DiagnosticsRecord>& series) {
    std::string out = "t,mass1,mass2,px,py,pz,energy,H,maxf1,maxf2\n";
    for (const DiagnosticsRecord& r : series) {
        const double cols[10] = {r.t,    r.mass1, r.mass2, r.p[0],  r.p[1],
                                 r.p[2], r.energy, r.H,     r.maxf1, r.maxf2};
        for (int i = 0; i < 10; ++i) {
            if (i) out.push_back(',');
            append_value(out, cols[i]);
        }
        out.push_back('\n');
    }
    return out;
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& series) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open diagnostics file for writing: " + path);
    const std::string text = diagnostics_csv_text(series);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw ConfigError("diagnostics write failed: " + path);
}

}  // namespace qbgk
