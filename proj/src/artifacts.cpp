#include "elscat/artifacts.hpp"

#include <json.hpp>

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

static_assert(std::endian::native == std::endian::little,
              "raw artifacts are little-endian; big-endian hosts need swaps");

namespace elscat {

std::uint32_t crc32(const void* data, std::size_t n) {
    static const std::array<std::uint32_t, 256> table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) crc = table[(crc ^ p[i]) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string field_raw_bytes(const NodalVectorField& f) {
    return std::string(reinterpret_cast<const char*>(f.v.data()),
                       f.v.size() * sizeof(cplx));
}

std::string field_sidecar(const NodalVectorField& f) {
    std::string s;
    s += "d " + std::to_string(f.grid.d) + "\n";
    s += "N " + std::to_string(f.grid.N) + "\n";
    s += "R " + format_double(f.grid.R) + "\n";
    s += "components " + std::to_string(f.grid.d) + "\n";
    s += "encoding f64le re,im interleaved per component, components per node\n";
    s += "node_order axis-major over centered indices, ascending\n";
    return s;
}

namespace {

void append_node_row(std::string& out, int d, const std::array<int, 3>& idx, const Vec& x,
                     const cplx* vals) {
    for (int a = 0; a < d; ++a) {
        out += std::to_string(idx[std::size_t(a)]);
        out += ',';
    }
    for (int a = 0; a < d; ++a) {
        out += format_double(x[std::size_t(a)]);
        out += ',';
    }
    for (int c = 0; c < d; ++c) {
        if (c) out += ',';
        out += format_double(vals[c].real());
        out += ',';
        out += format_double(vals[c].imag());
    }
    out += '\n';
}

std::string node_header(int d) {
    std::string h;
    for (int a = 0; a < d; ++a) h += "j" + std::to_string(a) + ",";
    for (int a = 0; a < d; ++a) h += "x" + std::to_string(a) + ",";
    for (int c = 0; c < d; ++c) {
        if (c) h += ',';
        h += "re" + std::to_string(c) + ",im" + std::to_string(c);
    }
    h += '\n';
    return h;
}

} // namespace

std::string field_csv(const NodalVectorField& f) {
    const GridSpec& g = f.grid;
    std::string out = node_header(g.d);
    for (std::size_t node = 0; node < g.node_count(); ++node) {
        std::array<int, 3> idx = g.centered_of(node);
        append_node_row(out, g.d, idx, g.coords_of(node), f.v.data() + node * std::size_t(g.d));
    }
    return out;
}

InnerBlock extract_inner(const NodalVectorField& f, double rho) {
    const GridSpec& g = f.grid;
    if (!(rho > 0.0) || !(rho < g.R))
        throw std::invalid_argument("inner radius must lie inside the cell");
    const double h = g.h();
    const int M = int(std::floor(rho / h + 1e-12));
    InnerBlock b;
    b.d = g.d;
    b.side = 2 * M + 1;
    b.h = h;
    b.rho = rho;
    const std::size_t count = std::size_t(std::pow(double(b.side), g.d)) * std::size_t(g.d);
    b.v.reserve(count);
    std::array<int, 3> idx{};
    // Axis-major ascending over the sub-block, matching the full layout.
    if (g.d == 2) {
        for (int j0 = -M; j0 <= M; ++j0)
            for (int j1 = -M; j1 <= M; ++j1) {
                idx = {j0, j1, 0};
                std::size_t node = g.index_of(idx);
                for (int c = 0; c < 2; ++c) b.v.push_back(f.at(node, c));
            }
    } else {
        for (int j0 = -M; j0 <= M; ++j0)
            for (int j1 = -M; j1 <= M; ++j1)
                for (int j2 = -M; j2 <= M; ++j2) {
                    idx = {j0, j1, j2};
                    std::size_t node = g.index_of(idx);
                    for (int c = 0; c < 3; ++c) b.v.push_back(f.at(node, c));
                }
    }
    return b;
}

std::string inner_raw_bytes(const InnerBlock& b) {
    return std::string(reinterpret_cast<const char*>(b.v.data()), b.v.size() * sizeof(cplx));
}

std::string inner_sidecar(const InnerBlock& b) {
    std::string s;
    s += "d " + std::to_string(b.d) + "\n";
    s += "side " + std::to_string(b.side) + "\n";
    s += "h " + format_double(b.h) + "\n";
    s += "rho " + format_double(b.rho) + "\n";
    s += "components " + std::to_string(b.d) + "\n";
    s += "encoding f64le re,im interleaved per component, components per node\n";
    s += "node_order axis-major, centered indices -M..M ascending, side = 2M+1\n";
    return s;
}

std::string inner_csv(const InnerBlock& b) {
    std::string out = node_header(b.d);
    const int M = (b.side - 1) / 2;
    std::size_t node = 0;
    auto emit = [&](const std::array<int, 3>& idx) {
        Vec x{idx[0] * b.h, idx[1] * b.h, idx[2] * b.h};
        append_node_row(out, b.d, idx, x, b.v.data() + node * std::size_t(b.d));
        ++node;
    };
    if (b.d == 2) {
        for (int j0 = -M; j0 <= M; ++j0)
            for (int j1 = -M; j1 <= M; ++j1) emit({j0, j1, 0});
    } else {
        for (int j0 = -M; j0 <= M; ++j0)
            for (int j1 = -M; j1 <= M; ++j1)
                for (int j2 = -M; j2 <= M; ++j2) emit({j0, j1, j2});
    }
    return out;
}

std::string matrix_csv(const std::vector<double>& omegas, const std::vector<double>& angles,
                       const std::vector<double>& values) {
    if (values.size() != omegas.size() * angles.size())
        throw std::invalid_argument("matrix size does not match the axes");
    std::string out = "omega";
    for (double a : angles) {
        out += ',';
        out += format_double(a);
    }
    out += '\n';
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        out += format_double(omegas[i]);
        for (std::size_t j = 0; j < angles.size(); ++j) {
            out += ',';
            out += format_double(values[i * angles.size() + j]);
        }
        out += '\n';
    }
    return out;
}

std::string matrix_raw_bytes(const std::vector<double>& values) {
    return std::string(reinterpret_cast<const char*>(values.data()),
                       values.size() * sizeof(double));
}

std::string pgm16(std::size_t rows, std::size_t cols, const std::vector<double>& values,
                  double* lo_out, double* hi_out) {
    if (values.size() != rows * cols)
        throw std::invalid_argument("matrix size does not match the image shape");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : values)
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    bool flat = !(hi > lo); // all-equal or no finite cells
    if (!std::isfinite(lo)) lo = 0.0;
    if (!std::isfinite(hi)) hi = 0.0;
    if (lo_out) *lo_out = lo;
    if (hi_out) *hi_out = hi;

    std::string out = "P5\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n65535\n";
    out.reserve(out.size() + 2 * values.size());
    for (double v : values) {
        unsigned val = 0;
        if (std::isfinite(v) && !flat)
            val = unsigned(std::lround((v - lo) / (hi - lo) * 65535.0));
        out += char((val >> 8) & 0xFF); // most significant byte first
        out += char(val & 0xFF);
    }
    return out;
}

std::string axis_csv(const std::string& name, const std::vector<double>& values) {
    std::string out = name + "\n";
    for (double v : values) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

ArtifactWriter::ArtifactWriter(const std::string& dir) : dir_(dir) {
    if (dir_.empty())
        throw std::invalid_argument("output directory is not set (config outputs.directory or --output)");
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw io_error("cannot create output directory " + dir_ + ": " + ec.message());
}

void ArtifactWriter::write(const std::string& name, const std::string& bytes) {
    std::filesystem::path p = std::filesystem::path(dir_) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw io_error("cannot open " + p.string() + " for writing");
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw io_error("failed writing " + p.string());
    entries_.push_back({name, bytes.size(), crc32(bytes.data(), bytes.size())});
}

void ArtifactWriter::finish(const std::string& command, const std::string& canonical_config_json,
                            const std::string& run_info_json) {
    nlohmann::json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["command"] = command;
    m["config"] = nlohmann::json::parse(canonical_config_json);
    m["run"] = nlohmann::json::parse(run_info_json);
    nlohmann::json files = nlohmann::json::array();
    for (const Entry& e : entries_) {
        char crc[16];
        std::snprintf(crc, sizeof crc, "%08x", e.crc);
        files.push_back({{"file", e.name}, {"bytes", e.bytes}, {"crc32", crc}});
    }
    m["outputs"] = files;
    std::string text = m.dump(2);
    text += '\n';
    std::filesystem::path p = std::filesystem::path(dir_) / "manifest.json";
    std::ofstream out(p, std::ios::binary);
    if (!out) throw io_error("cannot open " + p.string() + " for writing");
    out.write(text.data(), std::streamsize(text.size()));
    if (!out) throw io_error("failed writing " + p.string());
}

} // namespace elscat
