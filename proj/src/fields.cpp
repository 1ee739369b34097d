#include "elscat/fields.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; big-endian hosts need swaps");

namespace elscat {

namespace {

void check_unit(const Vec& u, int d, const char* what) {
    double n = norm2(u, d);
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + " must be a unit vector");
    for (int c = d; c < 3; ++c)
        if (u[c] != 0.0)
            throw std::invalid_argument(std::string(what) + " has components beyond the dimension");
}

} // namespace

Vec perp2d(const Vec& theta) { return Vec{-theta[1], theta[0], 0.0}; }

IncidentWave make_incident(WaveKind kind, const Vec& theta, const Vec& pol,
                           double omega, int d) {
    if (d != 2 && d != 3) throw std::invalid_argument("dimension must be 2 or 3");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("frequency must be positive");
    check_unit(theta, d, "propagation direction");
    IncidentWave w;
    w.kind = kind;
    w.theta = theta;
    w.omega = omega;
    if (kind == WaveKind::P) {
        w.pol = theta;
    } else {
        check_unit(pol, d, "polarization");
        if (std::abs(dot(pol, theta, d)) > 1e-12)
            throw std::invalid_argument("S polarization must be orthogonal to the propagation direction");
        w.pol = pol;
    }
    return w;
}

CVec eval_incident(const LameParams& p, const IncidentWave& w, int d, const Vec& x) {
    p.validate();
    if (d != 2 && d != 3) throw std::invalid_argument("dimension must be 2 or 3");
    if (w.omega != p.omega)
        throw std::invalid_argument("incident wave frequency does not match the medium");
    Wavenumbers k = wavenumbers(p);
    double kk = (w.kind == WaveKind::P) ? k.kp : k.ks;
    cplx phase = std::exp(cplx(0.0, kk * dot(w.theta, x, d)));
    CVec out{};
    for (int c = 0; c < d; ++c) out[c] = phase * w.pol[c];
    return out;
}

Potential make_potential(const GridSpec& g, double rho,
                         const std::function<std::array<double, 9>(const Vec&)>& fn) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("support radius must be positive");
    if (!(rho < g.R / 2.0))
        throw std::invalid_argument("support radius must be below half the cell radius");
    const int d = g.d;
    const std::size_t n = g.node_count();
    Potential Q;
    Q.grid = g;
    Q.rho = rho;
    Q.q.assign(n * std::size_t(d) * std::size_t(d), 0.0);
    for (std::size_t node = 0; node < n; ++node) {
        Vec x = g.coords_of(node);
        if (norm2(x, d) > rho) continue;
        std::array<double, 9> b = fn(x);
        bool nonzero = false;
        double* dst = Q.q.data() + node * std::size_t(d) * std::size_t(d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                double v = b[std::size_t(r) * 3 + std::size_t(c)];
                if (!std::isfinite(v)) {
                    std::ostringstream os;
                    os << "potential sample not finite at node " << node;
                    throw std::invalid_argument(os.str());
                }
                dst[r * d + c] = v;
                if (v != 0.0) nonzero = true;
            }
        if (nonzero) Q.support.push_back(node);
    }
    return Q;
}

Potential zero_potential(const GridSpec& g, double rho) {
    return make_potential(g, rho, [](const Vec&) { return std::array<double, 9>{}; });
}

Potential experiment2_potential(const GridSpec& g, double rho) {
    if (g.d != 2) throw std::invalid_argument("this contrast is two-dimensional");
    if (!(rho >= 0.8)) throw std::invalid_argument("support radius must cover the contrast (>= 0.8)");
    return make_potential(g, rho, [](const Vec& x) {
        double r = std::hypot(x[0], x[1]);
        double q = 0.0;
        if (r > 0.6 && r < 0.8) q += 1.0;
        if (std::abs(x[0]) + std::abs(x[1]) < 0.2) q += 1.2;
        std::array<double, 9> b{};
        b[0] = q;
        b[4] = q;
        return b;
    });
}

ManufacturedCase manufactured_case(const LameParams& p, const GridSpec& g) {
    p.validate();
    if (g.d != 2) throw std::invalid_argument("the closed-form case is two-dimensional");
    if (!(g.R > 2.0)) throw std::invalid_argument("cell radius must exceed twice the unit support");
    const double mu = p.mu, lm = p.lambda + p.mu, w2 = p.omega * p.omega;

    auto bump = [](const Vec& x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        CVec out{};
        if (r2 < 1.0) {
            double w = 1.0 - r2;
            double pw = w * w * w * w;
            out[0] = pw;
            out[1] = pw;
        }
        return out;
    };
    // Second derivatives of (1-r^2)^4: d_ad_b = -8 delta_ab w^3 + 48 x_a x_b w^2.
    auto v_exact = [mu, lm, w2](const Vec& x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        CVec out{};
        if (r2 < 1.0) {
            double w = 1.0 - r2;
            double w2p = w * w, w3 = w2p * w, w4 = w2p * w2p;
            double s = x[0] + x[1];
            for (int a = 0; a < 2; ++a) {
                double lap = -16.0 * w3 + 48.0 * r2 * w2p;
                double gdiv = -8.0 * w3 + 48.0 * x[a] * s * w2p;
                out[a] = mu * lap + lm * gdiv + w2 * w4;
            }
        }
        return out;
    };
    auto f = [bump, v_exact](const Vec& x) {
        CVec b = bump(x), v = v_exact(x);
        CVec out{};
        for (int c = 0; c < 2; ++c) out[c] = v[c] - b[c];
        return out;
    };

    ManufacturedCase mc;
    mc.Q = make_potential(g, 1.0, [](const Vec&) {
        std::array<double, 9> b{};
        b[0] = 1.0;
        b[4] = 1.0;
        return b;
    });
    mc.bump = bump;
    mc.v_exact = v_exact;
    mc.f = f;
    return mc;
}

NodalVectorField apply_potential(const Potential& Q, const NodalVectorField& w) {
    if (!(Q.grid == w.grid)) throw std::invalid_argument("potential and field grids differ");
    const int d = Q.grid.d;
    NodalVectorField out;
    out.grid = Q.grid;
    out.v.assign(w.v.size(), cplx(0.0, 0.0));
    for (std::size_t node : Q.support) {
        const double* b = Q.block(node);
        for (int r = 0; r < d; ++r) {
            cplx acc(0.0, 0.0);
            for (int c = 0; c < d; ++c) acc += b[r * d + c] * w.at(node, c);
            out.at(node, r) = acc;
        }
    }
    return out;
}

void save_potential(const Potential& Q, const std::string& base) {
    {
        std::ofstream meta(base + ".qmeta");
        if (!meta) throw io_error("cannot open " + base + ".qmeta for writing");
        meta.precision(17);
        meta << "d " << Q.grid.d << "\n"
             << "N " << Q.grid.N << "\n"
             << "R " << Q.grid.R << "\n"
             << "rho " << Q.rho << "\n";
        if (!meta) throw io_error("failed writing " + base + ".qmeta");
    }
    std::ofstream bin(base + ".qbin", std::ios::binary);
    if (!bin) throw io_error("cannot open " + base + ".qbin for writing");
    bin.write(reinterpret_cast<const char*>(Q.q.data()),
              std::streamsize(Q.q.size() * sizeof(double)));
    if (!bin) throw io_error("failed writing " + base + ".qbin");
}

Potential load_potential(const std::string& base) {
    std::ifstream meta(base + ".qmeta");
    if (!meta) throw io_error("cannot open " + base + ".qmeta");
    int d = 0, N = 0;
    double R = 0.0, rho = 0.0;
    std::string key;
    bool got_d = false, got_n = false, got_r = false, got_rho = false;
    while (meta >> key) {
        if (key == "d" && (meta >> d)) got_d = true;
        else if (key == "N" && (meta >> N)) got_n = true;
        else if (key == "R" && (meta >> R)) got_r = true;
        else if (key == "rho" && (meta >> rho)) got_rho = true;
        else throw invalid_format("unrecognized key in " + base + ".qmeta: " + key);
    }
    if (!(got_d && got_n && got_r && got_rho))
        throw invalid_format("incomplete metadata in " + base + ".qmeta");
    GridSpec g = build_grid(d, R, N);

    std::ifstream bin(base + ".qbin", std::ios::binary);
    if (!bin) throw io_error("cannot open " + base + ".qbin");
    Potential Q;
    Q.grid = g;
    Q.rho = rho;
    Q.q.assign(g.node_count() * std::size_t(d) * std::size_t(d), 0.0);
    bin.read(reinterpret_cast<char*>(Q.q.data()),
             std::streamsize(Q.q.size() * sizeof(double)));
    if (std::size_t(bin.gcount()) != Q.q.size() * sizeof(double))
        throw invalid_format(base + ".qbin is shorter than the grid requires");
    char extra;
    if (bin.read(&extra, 1))
        throw invalid_format(base + ".qbin is longer than the grid requires");

    if (!(rho > 0.0) || !(rho < R / 2.0))
        throw invalid_format("support radius in " + base + ".qmeta is out of range");
    const std::size_t bs = std::size_t(d) * std::size_t(d);
    for (std::size_t node = 0; node < g.node_count(); ++node) {
        bool nonzero = false;
        for (std::size_t k = 0; k < bs; ++k) {
            double v = Q.q[node * bs + k];
            if (!std::isfinite(v)) throw invalid_format("non-finite entry in " + base + ".qbin");
            if (v != 0.0) nonzero = true;
        }
        if (!nonzero) continue;
        if (norm2(g.coords_of(node), d) > rho)
            throw invalid_format("nonzero entry outside the declared support in " + base + ".qbin");
        Q.support.push_back(node);
    }
    return Q;
}

} // namespace elscat
