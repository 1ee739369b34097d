#include "elscat/grid_spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

// DFT conventions. The transforms are taken over centered indices, while
// FFTW works on [0, N)^d, so samples are routed through the standard
// wraparound shift q -> (q + N/2) mod N per axis, which places the origin
// node at storage 0 and turns the centered DFT into a plain one with no
// phase ramps. The map is an involution for even N, so the same routine
// shifts both directions.
//
// Plans are created once per (d, N, sign) with FFTW_ESTIMATE so repeated
// runs pick identical algorithms and stay bitwise reproducible;
// FFTW_UNALIGNED lets the cached plans execute on arbitrary caller buffers.

namespace elscat {

namespace {

class PlanCache {
public:
    static void exec(int d, int N, int sign, cplx* in, cplx* out) {
        fftw_execute_dft(instance().get(d, N, sign),
                         reinterpret_cast<fftw_complex*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    }

private:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    fftw_plan get(int d, int N, int sign) {
        std::lock_guard<std::mutex> lock(mtx_);
        const auto key = std::tuple{d, N, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t n = 1;
        for (int i = 0; i < d; ++i) n *= std::size_t(N);
        fftw_complex* buf = fftw_alloc_complex(n);
        if (!buf) throw std::bad_alloc();
        int dims[3] = {N, N, N};
        fftw_plan p = fftw_plan_dft(d, dims, buf, buf, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

    std::mutex mtx_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

// Walk the grid in transform order (origin at linear index 0) and hand the
// matching centered-layout offset to `op`. The per-axis wraparound map is an
// involution for even N, so the same walk serves gather and scatter.
template <typename Op>
void for_shifted(const GridSpec& g, Op&& op) {
    const int N = g.N;
    const int half = N / 2;
    auto map = [&](int q) { return (q + half) % N; };
    if (g.d == 2) {
        std::size_t b = 0;
        for (int q0 = 0; q0 < N; ++q0) {
            const std::size_t row = std::size_t(map(q0)) * N;
            for (int q1 = 0; q1 < N; ++q1) op(b++, row + map(q1));
        }
    } else {
        std::size_t b = 0;
        for (int q0 = 0; q0 < N; ++q0)
            for (int q1 = 0; q1 < N; ++q1) {
                const std::size_t row = (std::size_t(map(q0)) * N + map(q1)) * N;
                for (int q2 = 0; q2 < N; ++q2) op(b++, row + map(q2));
            }
    }
}

void gather(const GridSpec& g, const cplx* field, int ncomp, int comp, cplx* buf) {
    for_shifted(g, [&](std::size_t b, std::size_t f) {
        buf[b] = field[f * ncomp + comp];
    });
}

void scatter(const GridSpec& g, const cplx* buf, int ncomp, int comp, cplx* field,
             double scale = 1.0) {
    for_shifted(g, [&](std::size_t b, std::size_t f) {
        field[f * ncomp + comp] = buf[b] * scale;
    });
}

} // namespace

GridSpec build_grid(int d, double R, int N) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("build_grid: dimension must be 2 or 3");
    if (!(R > 0.0)) throw std::invalid_argument("build_grid: R must be positive");
    if (N < 4 || N % 2 != 0)
        throw std::invalid_argument("build_grid: N must be even and at least 4");
    return {d, R, N};
}

SpectralVectorField to_spectral(const NodalVectorField& f) {
    const GridSpec& g = f.grid;
    SpectralVectorField s(g);
    const std::size_t n = g.node_count();
    std::vector<cplx> in(n), out(n);
    for (int c = 0; c < g.d; ++c) {
        gather(g, f.v.data(), g.d, c, in.data());
        PlanCache::exec(g.d, g.N, FFTW_FORWARD, in.data(), out.data());
        scatter(g, out.data(), g.d, c, s.c.data());
    }
    return s;
}

NodalVectorField from_spectral(const SpectralVectorField& s) {
    const GridSpec& g = s.grid;
    NodalVectorField f(g);
    const std::size_t n = g.node_count();
    const double scale = 1.0 / double(n);
    std::vector<cplx> in(n), out(n);
    for (int c = 0; c < g.d; ++c) {
        gather(g, s.c.data(), g.d, c, in.data());
        PlanCache::exec(g.d, g.N, FFTW_BACKWARD, in.data(), out.data());
        scatter(g, out.data(), g.d, c, f.v.data(), scale);
    }
    return f;
}

NodalVectorField interpolate(const GridSpec& g,
                             const std::function<CVec(const Vec&)>& f) {
    NodalVectorField out(g);
    const std::size_t n = g.node_count();
    for (std::size_t s = 0; s < n; ++s) {
        const Vec x = g.coords_of(s);
        CVec val;
        try {
            val = f(x);
        } catch (const std::exception& e) {
            std::string where = "(";
            for (int i = 0; i < g.d; ++i)
                where += (i ? ", " : "") + std::to_string(x[i]);
            throw std::runtime_error("interpolate: evaluation failed at node " +
                                     where + "): " + e.what());
        }
        for (int c = 0; c < g.d; ++c) out.at(s, c) = val[c];
    }
    return out;
}

KernelSpectrum build_kernel_spectrum_custom(
    const GridSpec& g, const LameParams& p, const CutoffSpec& c,
    const std::function<std::array<cplx, 9>(const Vec&)>& kernel) {
    const int d = g.d;
    const std::size_t n = g.node_count();
    const std::size_t dd = std::size_t(d) * d;

    // sample in transform layout (origin at index 0), one matrix per node
    std::vector<cplx> samples(n * dd);
    const int N = g.N, half = g.N / 2;
    auto fill = [&](std::size_t lin, const std::array<int, 3>& q) {
        Vec x{};
        for (int i = 0; i < d; ++i) {
            const int j = q[i] < half ? q[i] : q[i] - N;
            x[i] = j * g.h();
        }
        bool origin = true;
        for (int i = 0; i < d; ++i) origin = origin && x[i] == 0.0;
        if (origin) return; // kernel value at the singular point is defined as 0
        const auto k = kernel(x);
        for (int r = 0; r < d; ++r)
            for (int cc = 0; cc < d; ++cc)
                samples[lin * dd + r * d + cc] = k[r * 3 + cc];
    };
    if (d == 2) {
        std::size_t lin = 0;
        for (int q0 = 0; q0 < N; ++q0)
            for (int q1 = 0; q1 < N; ++q1) fill(lin++, {q0, q1, 0});
    } else {
        std::size_t lin = 0;
        for (int q0 = 0; q0 < N; ++q0)
            for (int q1 = 0; q1 < N; ++q1)
                for (int q2 = 0; q2 < N; ++q2) fill(lin++, {q0, q1, q2});
    }

    KernelSpectrum ks;
    ks.grid = g;
    ks.params = p;
    ks.cutoff = c;
    ks.m.assign(n * dd, cplx{});

    double hd = 1.0;
    for (int i = 0; i < d; ++i) hd *= g.h();

    std::vector<cplx> in(n), out(n);
    for (int r = 0; r < d; ++r)
        for (int cc = r; cc < d; ++cc) {
            for (std::size_t s = 0; s < n; ++s) in[s] = samples[s * dd + r * d + cc];
            PlanCache::exec(d, N, FFTW_FORWARD, in.data(), out.data());
            // scatter with the h^d quadrature weight into centered order
            scatter(g, out.data(), int(dd), r * d + cc, ks.m.data(), hd);
            if (cc != r)
                for (std::size_t s = 0; s < n; ++s)
                    ks.m[s * dd + cc * d + r] = ks.m[s * dd + r * d + cc];
        }
    return ks;
}

KernelSpectrum build_kernel_spectrum(const LameParams& p, const CutoffSpec& c,
                                     const GridSpec& g) {
    p.validate();
    c.validate();
    if (c.R != g.R)
        throw std::invalid_argument(
            "build_kernel_spectrum: cutoff R must match the grid half-width");
    // The scattered field is represented as minus the convolution of the
    // outgoing tensor with Q u, so the discrete kernel is the negated
    // truncation. Keeping the sign here lets the system read I - conv(Q .)
    // while the manufactured identity f = v - g holds exactly.
    return build_kernel_spectrum_custom(
        g, p, c, [&](const Vec& x) -> std::array<cplx, 9> {
            std::array<cplx, 9> a = truncated_kernel(p, c, g.d, x).a;
            for (cplx& e : a) e = -e;
            return a;
        });
}

NodalVectorField convolve(const KernelSpectrum& k, const NodalVectorField& w) {
    const GridSpec& g = w.grid;
    if (!(k.grid == g))
        throw std::invalid_argument("convolve: spectrum and field grids differ");
    const int d = g.d;
    const std::size_t n = g.node_count();
    const std::size_t dd = std::size_t(d) * d;
    const int N = g.N;

    std::vector<std::vector<cplx>> fhat(d, std::vector<cplx>(n));
    std::vector<cplx> in(n);
    for (int c = 0; c < d; ++c) {
        gather(g, w.v.data(), d, c, in.data());
        PlanCache::exec(d, N, FFTW_FORWARD, in.data(), fhat[c].data());
    }

    // multiply by m(j); the multipliers are stored in centered order, the
    // transform buffers in origin-at-zero order, so walk via the shift map
    std::vector<std::vector<cplx>> ghat(d, std::vector<cplx>(n));
    for_shifted(g, [&](std::size_t blin, std::size_t flin) {
        const cplx* mb = k.m.data() + flin * dd;
        for (int r = 0; r < d; ++r) {
            cplx acc = 0;
            for (int cc = 0; cc < d; ++cc) acc += mb[r * d + cc] * fhat[cc][blin];
            ghat[r][blin] = acc;
        }
    });

    NodalVectorField outf(g);
    const double scale = 1.0 / double(n);
    std::vector<cplx> out(n);
    for (int c = 0; c < d; ++c) {
        PlanCache::exec(d, N, FFTW_BACKWARD, ghat[c].data(), out.data());
        scatter(g, out.data(), d, c, outf.v.data(), scale);
    }
    return outf;
}

DecayReport decay_report(const KernelSpectrum& k) {
    const GridSpec& g = k.grid;
    const int d = g.d;
    const std::size_t dd = std::size_t(d) * d;

    int kmax = 0;
    while ((1 << (kmax + 2)) <= g.N / 2) ++kmax; // largest k with 2^{k+1} <= N/2
    DecayReport rep;
    if (kmax < 1) return rep;
    rep.bands.resize(kmax);
    for (int b = 1; b <= kmax; ++b) {
        rep.bands[b - 1].k = b;
        rep.bands[b - 1].lo = double(1 << b);
        rep.bands[b - 1].hi = double(1 << (b + 1));
    }

    const std::size_t n = g.node_count();
    for (std::size_t s = 0; s < n; ++s) {
        const auto j = g.centered_of(s);
        double jj = 0;
        for (int i = 0; i < d; ++i) jj += double(j[i]) * j[i];
        const double aj = std::sqrt(jj);
        if (aj < 2.0) continue;
        const int b = int(std::floor(std::log2(aj)));
        if (b < 1 || b > kmax) continue;
        double ma = 0;
        const cplx* mb = k.m.data() + s * dd;
        for (std::size_t e = 0; e < dd; ++e) ma = std::max(ma, std::abs(mb[e]));
        auto& band = rep.bands[b - 1];
        band.max_abs = std::max(band.max_abs, ma);
        const double stat = ma * jj / std::log(aj);
        band.stat = std::max(band.stat, stat);
        rep.max_stat = std::max(rep.max_stat, stat);
    }
    return rep;
}

double linf_norm(const NodalVectorField& f) {
    const int d = f.grid.d;
    double m = 0;
    const std::size_t n = f.grid.node_count();
    for (std::size_t s = 0; s < n; ++s) {
        double a = 0;
        for (int c = 0; c < d; ++c) a += std::norm(f.at(s, c));
        m = std::max(m, a);
    }
    return std::sqrt(m);
}

double l2_norm(const NodalVectorField& f) {
    double acc = 0;
    for (const cplx& z : f.v) acc += std::norm(z);
    double hd = 1.0;
    for (int i = 0; i < f.grid.d; ++i) hd *= f.grid.h();
    return std::sqrt(hd * acc);
}

} // namespace elscat
