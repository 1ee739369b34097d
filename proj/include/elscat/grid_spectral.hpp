#pragma once

#include "elscat/core.hpp"
#include "elscat/green_kernel.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace elscat {

// Uniform tensor grid on the periodicity cell [-R, R)^d with N nodes per
// axis (N even), node spacing h = 2R/N. Nodes carry centered integer
// indices j in [-N/2, N/2)^d, coordinates x = j*h, and are stored in
// axis-major order with ascending centered index, axis 0 slowest.
struct GridSpec {
    int d = 0;
    double R = 0.0;
    int N = 0;

    double h() const { return 2.0 * R / N; }
    int half() const { return N / 2; }

    std::size_t node_count() const {
        std::size_t n = 1;
        for (int i = 0; i < d; ++i) n *= std::size_t(N);
        return n;
    }

    // storage index of a centered multi-index
    std::size_t index_of(const std::array<int, 3>& j) const {
        std::size_t s = 0;
        for (int i = 0; i < d; ++i) s = s * std::size_t(N) + std::size_t(j[i] + half());
        return s;
    }

    std::array<int, 3> centered_of(std::size_t s) const {
        std::array<int, 3> j{};
        for (int i = d - 1; i >= 0; --i) {
            j[i] = int(s % std::size_t(N)) - half();
            s /= std::size_t(N);
        }
        return j;
    }

    Vec coords_of(std::size_t s) const {
        const auto j = centered_of(s);
        Vec x{};
        for (int i = 0; i < d; ++i) x[i] = j[i] * h();
        return x;
    }

    bool operator==(const GridSpec&) const = default;
};

GridSpec build_grid(int d, double R, int N);

// Complex d-vector samples on the grid nodes; node-major storage with the
// d components of one node adjacent.
struct NodalVectorField {
    GridSpec grid;
    std::vector<cplx> v;

    NodalVectorField() = default;
    explicit NodalVectorField(const GridSpec& g)
        : grid(g), v(g.node_count() * std::size_t(g.d)) {}

    cplx& at(std::size_t node, int comp) { return v[node * grid.d + comp]; }
    const cplx& at(std::size_t node, int comp) const { return v[node * grid.d + comp]; }
};

// Trigonometric coefficients indexed by centered frequencies j in
// [-N/2, N/2)^d, with the same storage layout as the nodal fields. The
// values are plain forward-DFT sums X(j) = sum_n x(n) e^{-2 pi i n.j / N}
// over centered node indices n; no h^d or 1/N^d factor is folded in.
struct SpectralVectorField {
    GridSpec grid;
    std::vector<cplx> c;

    SpectralVectorField() = default;
    explicit SpectralVectorField(const GridSpec& g)
        : grid(g), c(g.node_count() * std::size_t(g.d)) {}

    cplx& at(std::size_t freq, int comp) { return c[freq * grid.d + comp]; }
    const cplx& at(std::size_t freq, int comp) const { return c[freq * grid.d + comp]; }
};

// Fourier multipliers of the truncated periodized kernel: one d x d complex
// matrix per centered frequency, m(j) = h^d * DFT(kernel samples)(j) with
// the origin sample zeroed. Applying IDFT o m(j) o DFT to nodal values is
// the fully discrete convolution operator.
struct KernelSpectrum {
    GridSpec grid;
    LameParams params{};
    CutoffSpec cutoff{};
    std::vector<cplx> m; // frequency-major, d*d row-major blocks

    const cplx* block(std::size_t freq) const {
        return m.data() + freq * std::size_t(grid.d) * std::size_t(grid.d);
    }
    cplx entry(std::size_t freq, int r, int c) const {
        return block(freq)[r * grid.d + c];
    }
};

SpectralVectorField to_spectral(const NodalVectorField& f);
NodalVectorField from_spectral(const SpectralVectorField& s);

// Samples a pointwise field on the grid. Evaluation failures are rethrown
// with the offending node's coordinates in the message.
NodalVectorField interpolate(const GridSpec& g,
                             const std::function<CVec(const Vec&)>& f);

// Multipliers of the cutoff-truncated Lame kernel on this grid. The grid
// and cutoff must share the same cell half-width R.
KernelSpectrum build_kernel_spectrum(const LameParams& p, const CutoffSpec& c,
                                     const GridSpec& g);

// Same transform pipeline for an arbitrary matrix-valued kernel sampler
// (row-major 3-stride entries, d x d used); params and cutoff are recorded
// as metadata. The origin sample is forced to zero like the Lame path.
KernelSpectrum build_kernel_spectrum_custom(
    const GridSpec& g, const LameParams& p, const CutoffSpec& c,
    const std::function<std::array<cplx, 9>(const Vec&)>& kernel);

// Nodal values of the discrete convolution: IDFT(m(j) * DFT(w)(j)).
NodalVectorField convolve(const KernelSpectrum& k, const NodalVectorField& w);

// Dyadic-band summary of multiplier decay. Band k covers 2^k <= |j| <
// 2^{k+1} (Euclidean index norm) and is reported only when it fits inside
// the ball |j| <= N/2, so bands are comparable across resolutions. stat is
// the band maximum of |m(j)| |j|^2 / log|j|, the natural normalization for
// a kernel whose coefficients decay like log|j|/|j|^2.
struct DecayBand {
    int k = 0;
    double lo = 0.0, hi = 0.0;
    double max_abs = 0.0;
    double stat = 0.0;
};

struct DecayReport {
    std::vector<DecayBand> bands;
    double max_stat = 0.0;
};

DecayReport decay_report(const KernelSpectrum& k);

// Norms used for convergence reporting: node-wise Euclidean magnitude,
// maximum for linf and h^{d/2}-weighted root-sum-square for l2.
double linf_norm(const NodalVectorField& f);
double l2_norm(const NodalVectorField& f);

} // namespace elscat
