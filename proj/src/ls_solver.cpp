#include "elscat/ls_solver.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <mutex>
#include <tuple>

namespace elscat {

namespace {

double vec_norm(const std::vector<cplx>& a) {
    double s = 0.0;
    for (const cplx& z : a) s += std::norm(z);
    return std::sqrt(s);
}

cplx vec_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

void check_finite(const std::vector<cplx>& a, const char* what) {
    for (const cplx& z : a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw numeric_fault(std::string(what) + " produced a non-finite value");
}

} // namespace

IterativeResult iterative_solve(const LinearOp& A, const std::vector<cplx>& b,
                                const SolverConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (cfg.restart < 1) throw std::invalid_argument("restart length must be at least 1");
    if (cfg.max_iterations < 1) throw std::invalid_argument("iteration budget must be at least 1");
    check_finite(b, "right-hand side");

    const std::size_t n = b.size();
    IterativeResult res;
    res.x.assign(n, cplx(0.0, 0.0));

    const double normb = vec_norm(b);
    if (normb == 0.0) {
        res.converged = true;
        return res;
    }

    const int m = cfg.restart;
    std::vector<std::vector<cplx>> V(std::size_t(m) + 1);
    std::vector<cplx> H(std::size_t(m + 1) * std::size_t(m), cplx(0.0, 0.0));
    std::vector<cplx> cs(std::size_t(m), cplx(0.0, 0.0));
    std::vector<cplx> sn(std::size_t(m), cplx(0.0, 0.0));
    std::vector<cplx> g(std::size_t(m) + 1, cplx(0.0, 0.0));
    std::vector<cplx> w(n), r(n);
    auto Hat = [&](int i, int j) -> cplx& { return H[std::size_t(i) * std::size_t(m) + std::size_t(j)]; };

    int total = 0;
    bool stagnated = false;
    while (true) {
        A(res.x, r);
        check_finite(r, "system operator");
        if (r.size() != n) throw std::invalid_argument("operator changed the vector size");
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        double beta = vec_norm(r);
        res.residual = beta / normb;
        if (res.residual <= cfg.tol) {
            res.converged = true;
            return res;
        }
        if (total >= cfg.max_iterations || stagnated) {
            res.breakdown = stagnated && !res.converged;
            return res;
        }

        V[0] = r;
        for (std::size_t i = 0; i < n; ++i) V[0][i] /= beta;
        std::fill(g.begin(), g.end(), cplx(0.0, 0.0));
        g[0] = beta;

        int k = 0;
        bool lucky = false;
        for (; k < m && total < cfg.max_iterations; ++k) {
            A(V[std::size_t(k)], w);
            check_finite(w, "system operator");
            double col = 0.0;
            for (int i = 0; i <= k; ++i) {
                cplx hik = vec_dot(V[std::size_t(i)], w);
                Hat(i, k) = hik;
                col += std::norm(hik);
                for (std::size_t t = 0; t < n; ++t) w[t] -= hik * V[std::size_t(i)][t];
            }
            double h1 = vec_norm(w);
            Hat(k + 1, k) = h1;
            if (h1 <= 1e-14 * std::sqrt(col) || h1 == 0.0) {
                lucky = true;
            } else {
                V[std::size_t(k) + 1] = w;
                for (std::size_t t = 0; t < n; ++t) V[std::size_t(k) + 1][t] /= h1;
            }

            for (int i = 0; i < k; ++i) {
                cplx a = Hat(i, k), bb = Hat(i + 1, k);
                Hat(i, k) = std::conj(cs[std::size_t(i)]) * a + std::conj(sn[std::size_t(i)]) * bb;
                Hat(i + 1, k) = -sn[std::size_t(i)] * a + cs[std::size_t(i)] * bb;
            }
            cplx a = Hat(k, k);
            double bmag = std::abs(Hat(k + 1, k));
            double denom = std::sqrt(std::norm(a) + bmag * bmag);
            if (denom == 0.0) {
                cs[std::size_t(k)] = 1.0;
                sn[std::size_t(k)] = 0.0;
            } else {
                cs[std::size_t(k)] = a / denom;
                sn[std::size_t(k)] = Hat(k + 1, k) / denom;
            }
            Hat(k, k) = std::conj(cs[std::size_t(k)]) * a +
                        std::conj(sn[std::size_t(k)]) * Hat(k + 1, k);
            Hat(k + 1, k) = cplx(0.0, 0.0);
            cplx gk = g[std::size_t(k)];
            g[std::size_t(k)] = std::conj(cs[std::size_t(k)]) * gk;
            g[std::size_t(k) + 1] = -sn[std::size_t(k)] * gk;

            ++total;
            double est = std::abs(g[std::size_t(k) + 1]) / normb;
            res.history.push_back(est);
            if (est <= cfg.tol || lucky) {
                ++k;
                break;
            }
        }

        // Back-substitute the k x k triangular system and update x.
        std::vector<cplx> y(std::size_t(k), cplx(0.0, 0.0));
        for (int i = k - 1; i >= 0; --i) {
            cplx s = g[std::size_t(i)];
            for (int j = i + 1; j < k; ++j) s -= Hat(i, j) * y[std::size_t(j)];
            cplx hii = Hat(i, i);
            if (hii == cplx(0.0, 0.0)) throw numeric_fault("singular projected system in the iteration");
            y[std::size_t(i)] = s / hii;
        }
        for (int j = 0; j < k; ++j)
            for (std::size_t t = 0; t < n; ++t) res.x[t] += y[std::size_t(j)] * V[std::size_t(j)][t];

        if (lucky) stagnated = true;
        res.iterations = total;
    }
}

NodalVectorField apply_system(const KernelSpectrum& k, const Potential& Q,
                              const NodalVectorField& v) {
    if (!(k.grid == Q.grid) || !(k.grid == v.grid))
        throw std::invalid_argument("spectrum, potential and field grids differ");
    NodalVectorField qv = apply_potential(Q, v);
    NodalVectorField kqv = convolve(k, qv);
    NodalVectorField out;
    out.grid = v.grid;
    out.v.resize(v.v.size());
    for (std::size_t i = 0; i < v.v.size(); ++i) out.v[i] = v.v[i] - kqv.v[i];
    return out;
}

NodalVectorField build_rhs(const KernelSpectrum& k, const Potential& Q,
                           const LameParams& p, const IncidentWave& w) {
    if (!(k.grid == Q.grid))
        throw std::invalid_argument("spectrum and potential grids differ");
    const GridSpec& g = k.grid;
    NodalVectorField ui;
    ui.grid = g;
    ui.v.assign(g.node_count() * std::size_t(g.d), cplx(0.0, 0.0));
    // Only nodes in the support contribute to Q u_inc.
    for (std::size_t node : Q.support) {
        CVec val = eval_incident(p, w, g.d, g.coords_of(node));
        for (int c = 0; c < g.d; ++c) ui.at(node, c) = val[std::size_t(c)];
    }
    NodalVectorField qu = apply_potential(Q, ui);
    return convolve(k, qu);
}

SystemSolve solve_system(const KernelSpectrum& k, const Potential& Q,
                         const NodalVectorField& rhs, const SolverConfig& cfg) {
    if (!(k.grid == Q.grid) || !(k.grid == rhs.grid))
        throw std::invalid_argument("spectrum, potential and field grids differ");
    LinearOp op = [&](const std::vector<cplx>& xin, std::vector<cplx>& xout) {
        NodalVectorField vin;
        vin.grid = rhs.grid;
        vin.v = xin;
        NodalVectorField vout = apply_system(k, Q, vin);
        xout = std::move(vout.v);
    };
    IterativeResult it = iterative_solve(op, rhs.v, cfg);
    SystemSolve out;
    out.v.grid = rhs.grid;
    out.v.v = std::move(it.x);
    out.converged = it.converged;
    out.breakdown = it.breakdown;
    out.iterations = it.iterations;
    out.residual = it.residual;
    out.history = std::move(it.history);
    return out;
}

namespace {

struct SpectrumKey {
    int d, N;
    double R, lambda, mu, omega, rho;
    bool operator==(const SpectrumKey&) const = default;
};

} // namespace

std::shared_ptr<const KernelSpectrum> cached_kernel_spectrum(const LameParams& p,
                                                             const CutoffSpec& c,
                                                             const GridSpec& g) {
    static std::mutex mtx;
    static std::list<std::pair<SpectrumKey, std::shared_ptr<const KernelSpectrum>>> cache;
    SpectrumKey key{g.d, g.N, g.R, p.lambda, p.mu, p.omega, c.rho};
    {
        std::lock_guard<std::mutex> lock(mtx);
        for (auto it = cache.begin(); it != cache.end(); ++it) {
            if (it->first == key) {
                cache.splice(cache.begin(), cache, it);
                return cache.front().second;
            }
        }
    }
    auto spec = std::make_shared<KernelSpectrum>(build_kernel_spectrum(p, c, g));
    std::lock_guard<std::mutex> lock(mtx);
    for (auto it = cache.begin(); it != cache.end(); ++it) {
        if (it->first == key) {
            cache.splice(cache.begin(), cache, it);
            return cache.front().second;
        }
    }
    cache.emplace_front(key, spec);
    if (cache.size() > 4) cache.pop_back();
    return spec;
}

SolveResult solve_scattering(const LameParams& p, const CutoffSpec& c,
                             const GridSpec& g, const Potential& Q,
                             const IncidentWave& w, const SolverConfig& cfg) {
    p.validate();
    c.validate();
    if (!(Q.grid == g)) throw std::invalid_argument("potential grid does not match the request");
    if (!(Q.rho <= c.rho))
        throw std::invalid_argument("potential support exceeds the kernel cutoff plateau");
    std::shared_ptr<const KernelSpectrum> spec = cached_kernel_spectrum(p, c, g);
    NodalVectorField rhs = build_rhs(*spec, Q, p, w);
    SystemSolve sys = solve_system(*spec, Q, rhs, cfg);

    SolveResult out;
    out.v = std::move(sys.v);
    out.converged = sys.converged;
    out.breakdown = sys.breakdown;
    out.iterations = sys.iterations;
    out.residual = sys.residual;
    out.residual_history = std::move(sys.history);

    out.u.grid = g;
    out.u.v.resize(out.v.v.size());
    const std::size_t nodes = g.node_count();
    for (std::size_t node = 0; node < nodes; ++node) {
        CVec inc = eval_incident(p, w, g.d, g.coords_of(node));
        for (int comp = 0; comp < g.d; ++comp)
            out.u.at(node, comp) = inc[std::size_t(comp)] + out.v.at(node, comp);
    }
    return out;
}

std::vector<CVec> evaluate_exterior(const LameParams& p, const Potential& Q,
                                    const NodalVectorField& u,
                                    const std::vector<Vec>& points) {
    p.validate();
    if (!(Q.grid == u.grid)) throw std::invalid_argument("potential and field grids differ");
    const GridSpec& g = Q.grid;
    const int d = g.d;
    for (const Vec& x : points)
        if (!(norm2(x, d) > Q.rho))
            throw std::domain_error("exterior evaluation point lies inside the support ball");

    NodalVectorField qu = apply_potential(Q, u);
    const double hd = std::pow(g.h(), d);

    std::vector<CVec> out(points.size(), CVec{});
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const Vec& x = points[pi];
        CVec acc{};
        for (std::size_t node : Q.support) {
            Vec y = g.coords_of(node);
            Vec diff{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
            GreenMatrix G = green_tensor(p, d, diff);
            for (int r = 0; r < d; ++r) {
                cplx s(0.0, 0.0);
                for (int c = 0; c < d; ++c) s += G(r, c) * qu.at(node, c);
                acc[std::size_t(r)] += s;
            }
        }
        // same orientation as the solve: v = -Phi * (Q u)
        for (int r = 0; r < d; ++r) out[pi][std::size_t(r)] = -hd * acc[std::size_t(r)];
    }
    return out;
}

std::vector<CVec> evaluate_exterior(const LameParams& p, const Potential& Q,
                                    const NodalVectorField& v,
                                    const IncidentWave& w,
                                    const std::vector<Vec>& points) {
    const GridSpec& g = Q.grid;
    NodalVectorField u;
    u.grid = g;
    u.v.resize(v.v.size());
    for (std::size_t node = 0; node < g.node_count(); ++node) {
        CVec inc = eval_incident(p, w, g.d, g.coords_of(node));
        for (int c = 0; c < g.d; ++c) u.at(node, c) = inc[std::size_t(c)] + v.at(node, c);
    }
    return evaluate_exterior(p, Q, u, points);
}

ConvergenceTable convergence_study(const LameParams& p, const CutoffSpec& c,
                                   double R, const std::vector<int>& Ns,
                                   const SolverConfig& cfg) {
    p.validate();
    c.validate();
    if (Ns.empty()) throw std::invalid_argument("at least one grid size is required");
    ConvergenceTable table;
    for (int N : Ns) {
        GridSpec g = build_grid(2, R, N);
        ManufacturedCase mc = manufactured_case(p, g);
        NodalVectorField rhs = interpolate(g, mc.f);
        std::shared_ptr<const KernelSpectrum> spec = cached_kernel_spectrum(p, c, g);
        SystemSolve sys = solve_system(*spec, mc.Q, rhs, cfg);
        if (!sys.converged) table.all_converged = false;

        // Interior error against the closed-form field.
        double linf = 0.0, l2sq = 0.0;
        const double hd = std::pow(g.h(), 2);
        for (std::size_t node = 0; node < g.node_count(); ++node) {
            Vec x = g.coords_of(node);
            if (norm2(x, 2) > mc.Q.rho) continue;
            CVec ex = mc.v_exact(x);
            double e2 = 0.0;
            for (int comp = 0; comp < 2; ++comp)
                e2 += std::norm(sys.v.at(node, comp) - ex[std::size_t(comp)]);
            linf = std::max(linf, std::sqrt(e2));
            l2sq += hd * e2;
        }
        table.rows.push_back({N, g.h(), linf, std::sqrt(l2sq)});
    }
    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
        double dh = std::log(table.rows[i].h / table.rows[i + 1].h);
        table.order_linf.push_back(std::log(table.rows[i].err_linf / table.rows[i + 1].err_linf) / dh);
        table.order_l2.push_back(std::log(table.rows[i].err_l2 / table.rows[i + 1].err_l2) / dh);
    }
    return table;
}

std::vector<cplx> dense_assemble(const KernelSpectrum& k, const Potential& Q) {
    if (!(k.grid == Q.grid)) throw std::invalid_argument("spectrum and potential grids differ");
    const GridSpec& g = k.grid;
    const std::size_t dim = g.node_count() * std::size_t(g.d);
    if (dim > 4096) throw std::invalid_argument("dense assembly is limited to dimension 4096");
    std::vector<cplx> A(dim * dim, cplx(0.0, 0.0));
    NodalVectorField e;
    e.grid = g;
    e.v.assign(dim, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < dim; ++j) {
        e.v[j] = cplx(1.0, 0.0);
        NodalVectorField col = apply_system(k, Q, e);
        for (std::size_t i = 0; i < dim; ++i) A[i * dim + j] = col.v[i];
        e.v[j] = cplx(0.0, 0.0);
    }
    return A;
}

} // namespace elscat
