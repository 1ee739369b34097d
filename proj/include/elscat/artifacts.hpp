#pragma once

#include "elscat/core.hpp"
#include "elscat/grid_spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace elscat {

inline constexpr const char* kToolName = "elscat";
inline constexpr const char* kToolVersion = "1.0.0";

// Standard reflected CRC-32 (polynomial 0xEDB88320), as used by gzip.
std::uint32_t crc32(const void* data, std::size_t n);

// Raw field bytes: little-endian f64 pairs (re, im) per component,
// components interleaved per node, nodes in axis-major centered order.
std::string field_raw_bytes(const NodalVectorField& f);

// Text sidecar describing the raw layout.
std::string field_sidecar(const NodalVectorField& f);

// One row per node: centered indices, coordinates, then re/im per
// component. Callers enforce any size policy; full precision.
std::string field_csv(const NodalVectorField& f);

// Axis-aligned restriction to the closed cube |x|_inf <= rho: the block of
// nodes with every centered index in [-M, M], M = floor(rho/h).
struct InnerBlock {
    int d = 0;
    int side = 0;     // nodes per axis, 2M+1
    double h = 0.0;
    double rho = 0.0;
    std::vector<cplx> v; // axis-major ascending, component-interleaved
};

InnerBlock extract_inner(const NodalVectorField& f, double rho);
std::string inner_raw_bytes(const InnerBlock& b);
std::string inner_sidecar(const InnerBlock& b);
std::string inner_csv(const InnerBlock& b);

// Row-major real matrix as CSV: header "omega,<a_0>,<a_1>,...", one row
// per omega. NaN cells print as nan.
std::string matrix_csv(const std::vector<double>& omegas, const std::vector<double>& angles,
                       const std::vector<double>& values);

std::string matrix_raw_bytes(const std::vector<double>& values);

// Binary 16-bit PGM (big-endian samples per the format), linear min-max
// over finite cells; non-finite cells map to 0. Returns the bounds used.
std::string pgm16(std::size_t rows, std::size_t cols, const std::vector<double>& values,
                  double* lo_out, double* hi_out);

// One number per line, full precision.
std::string axis_csv(const std::string& name, const std::vector<double>& values);

// Collects files for one run directory, then writes manifest.json with
// the canonical config, tool version and per-file size/crc32.
class ArtifactWriter {
public:
    explicit ArtifactWriter(const std::string& dir);
    void write(const std::string& name, const std::string& bytes);
    // Extra manifest fields for this run (JSON text of an object).
    void finish(const std::string& command, const std::string& canonical_config_json,
                const std::string& run_info_json);
    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    struct Entry {
        std::string name;
        std::size_t bytes;
        std::uint32_t crc;
    };
    std::vector<Entry> entries_;
};

std::string format_double(double v); // %.17g, shared by all CSV writers

} // namespace elscat
