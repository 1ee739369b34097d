#include "elscat/scattering.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <sstream>
#include <thread>

namespace elscat {

namespace {

void check_direction(const Vec& t, int d) {
    if (std::abs(norm2(t, d) - 1.0) > 1e-12)
        throw std::invalid_argument("observation direction must be a unit vector");
    for (int c = d; c < 3; ++c)
        if (t[c] != 0.0)
            throw std::invalid_argument("observation direction has components beyond the dimension");
}

// Remove the theta component twice; the second pass cancels the residue
// left by |theta|^2 != 1 at rounding level, keeping the orthogonality
// invariant far below 1e-12 even for tiny transverse amplitudes.
CVec reject_twice(const CVec& v, const Vec& t, int d) {
    CVec w = v;
    for (int pass = 0; pass < 2; ++pass) {
        cplx proj = dot(w, t, d);
        for (int c = 0; c < d; ++c) w[std::size_t(c)] -= proj * t[c];
    }
    for (int c = d; c < 3; ++c) w[std::size_t(c)] = cplx(0.0, 0.0);
    return w;
}

} // namespace

std::vector<FarFieldPair> far_field_batch(const LameParams& p, const Potential& Q,
                                          const NodalVectorField& u,
                                          const std::vector<Vec>& directions) {
    p.validate();
    if (!(Q.grid == u.grid)) throw std::invalid_argument("potential and field grids differ");
    const GridSpec& g = Q.grid;
    const int d = g.d;
    for (const Vec& t : directions) check_direction(t, d);

    Wavenumbers k = wavenumbers(p);
    const double hd = std::pow(g.h(), d);
    const double cp = hd / (2.0 * p.mu + p.lambda);
    const double cs = hd / p.mu;

    NodalVectorField qu = apply_potential(Q, u);

    std::vector<FarFieldPair> out(directions.size());
    for (std::size_t di = 0; di < directions.size(); ++di) {
        const Vec& t = directions[di];
        cplx sum_p(0.0, 0.0);
        CVec sum_s{};
        for (std::size_t node : Q.support) {
            Vec y = g.coords_of(node);
            double ty = dot(t, y, d);
            CVec w{};
            for (int c = 0; c < d; ++c) w[std::size_t(c)] = qu.at(node, c);
            cplx ep = std::exp(cplx(0.0, -k.kp * ty));
            cplx es = std::exp(cplx(0.0, -k.ks * ty));
            sum_p += ep * dot(w, t, d);
            for (int c = 0; c < d; ++c) sum_s[std::size_t(c)] += es * w[std::size_t(c)];
        }
        FarFieldPair pair;
        for (int c = 0; c < d; ++c) pair.p_inf[std::size_t(c)] = cp * sum_p * t[c];
        CVec rej = reject_twice(sum_s, t, d);
        for (int c = 0; c < d; ++c) pair.s_inf[std::size_t(c)] = cs * rej[std::size_t(c)];
        out[di] = pair;
    }
    return out;
}

FarFieldPair far_field(const LameParams& p, const Potential& Q,
                       const NodalVectorField& u, const Vec& theta_prime) {
    return far_field_batch(p, Q, u, {theta_prime})[0];
}

double select_amplitude(const AmplitudeSelector& sel, const AmplitudeRecord& rec) {
    const CVec& v = (sel.channel == AmpChannel::P) ? rec.p_inf : rec.s_inf;
    if (sel.component == AmplitudeSelector::kNorm) {
        double n = norm2(v, rec.d);
        return (sel.part == AmpPart::Im) ? 0.0 : n;
    }
    cplx s;
    if (sel.component == AmplitudeSelector::kPol) {
        s = dot(v, rec.incident.pol, rec.d);
    } else {
        if (sel.component < 0 || sel.component >= rec.d)
            throw std::invalid_argument("amplitude component index out of range");
        s = v[std::size_t(sel.component)];
    }
    switch (sel.part) {
        case AmpPart::Re: return s.real();
        case AmpPart::Im: return s.imag();
        default: return std::abs(s);
    }
}

SinogramSweep sinogram_multi(const LameParams& material, const CutoffSpec& c,
                             const GridSpec& g, const Potential& Q,
                             const IncidentWave& inc, const std::vector<double>& omegas,
                             const std::vector<double>& angles, const SolverConfig& cfg,
                             const std::vector<AmplitudeSelector>& selectors,
                             int workers, bool collect_records) {
    if (g.d != 2) throw std::invalid_argument("sinograms are two-dimensional");
    if (omegas.empty()) throw std::invalid_argument("at least one frequency is required");
    if (angles.empty()) throw std::invalid_argument("at least one observation angle is required");
    if (selectors.empty()) throw std::invalid_argument("at least one selector is required");
    if (workers < 1) throw std::invalid_argument("worker count must be positive");
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (!(omegas[i] > 0.0)) throw std::invalid_argument("frequencies must be positive");
        if (i > 0 && !(omegas[i] > omegas[i - 1]))
            throw std::invalid_argument("frequencies must be strictly increasing");
    }
    c.validate();
    if (!(Q.grid == g)) throw std::invalid_argument("potential grid does not match the request");

    const std::size_t rows = omegas.size(), cols = angles.size();
    std::vector<Vec> dirs(cols);
    for (std::size_t j = 0; j < cols; ++j)
        dirs[j] = Vec{std::cos(angles[j]), std::sin(angles[j]), 0.0};

    SinogramSweep sweep;
    sweep.panels.assign(selectors.size(), Sinogram{});
    for (Sinogram& s : sweep.panels) {
        s.omegas = omegas;
        s.angles = angles;
        s.values.assign(rows * cols, 0.0);
    }
    if (collect_records) sweep.records.assign(rows * cols, AmplitudeRecord{});
    std::vector<std::string> row_error(rows);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::atomic<std::size_t> next{0};
    auto run_row = [&](std::size_t i) {
        try {
            LameParams p{material.lambda, material.mu, omegas[i]};
            IncidentWave w = make_incident(inc.kind, inc.theta, inc.pol, omegas[i], 2);
            SolveResult sol = solve_scattering(p, c, g, Q, w, cfg);
            if (!sol.converged) {
                std::ostringstream os;
                os << "iteration stalled at relative residual " << sol.residual
                   << " after " << sol.iterations << " steps";
                row_error[i] = os.str();
                return;
            }
            std::vector<FarFieldPair> ff = far_field_batch(p, Q, sol.u, dirs);
            for (std::size_t j = 0; j < cols; ++j) {
                AmplitudeRecord rec;
                rec.d = 2;
                rec.omega = omegas[i];
                rec.incident = w;
                rec.theta_prime = dirs[j];
                rec.p_inf = ff[j].p_inf;
                rec.s_inf = ff[j].s_inf;
                for (std::size_t si = 0; si < selectors.size(); ++si)
                    sweep.panels[si].at(i, j) = select_amplitude(selectors[si], rec);
                if (collect_records) sweep.records[i * cols + j] = rec;
            }
        } catch (const std::exception& e) {
            row_error[i] = e.what();
        }
    };

    const int nthreads = int(std::min<std::size_t>(std::size_t(workers), rows));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < rows; ++i) run_row(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(nthreads));
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < rows; i = next.fetch_add(1))
                    run_row(i);
            });
        for (std::thread& t : pool) t.join();
    }

    for (std::size_t i = 0; i < rows; ++i) {
        if (row_error[i].empty()) continue;
        sweep.failures.push_back({i, row_error[i]});
        for (Sinogram& s : sweep.panels)
            for (std::size_t j = 0; j < cols; ++j) s.at(i, j) = nan;
    }
    return sweep;
}

Sinogram sinogram(const LameParams& material, const CutoffSpec& c, const GridSpec& g,
                  const Potential& Q, const IncidentWave& inc,
                  const std::vector<double>& omegas, const std::vector<double>& angles,
                  const SolverConfig& cfg, const AmplitudeSelector& selector, int workers) {
    SinogramSweep sweep = sinogram_multi(material, c, g, Q, inc, omegas, angles, cfg,
                                         {selector}, workers, false);
    return std::move(sweep.panels[0]);
}

namespace {

const char* kTableHeader =
    "d,omega,kind,theta_x,theta_y,theta_z,pol_x,pol_y,pol_z,obs_x,obs_y,obs_z,"
    "p_re_x,p_im_x,p_re_y,p_im_y,p_re_z,p_im_z,s_re_x,s_im_x,s_re_y,s_im_y,s_re_z,s_im_z";

void put(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += ',';
    out += buf;
}

} // namespace

std::string amplitude_table(const std::vector<AmplitudeRecord>& records) {
    for (const AmplitudeRecord& r : records)
        if (r.d != records.front().d)
            throw std::invalid_argument("records mix dimensions");
    std::string out = kTableHeader;
    out += '\n';
    for (const AmplitudeRecord& r : records) {
        out += std::to_string(r.d);
        put(out, r.omega);
        out += (r.incident.kind == WaveKind::P) ? ",p" : ",s";
        for (int c = 0; c < 3; ++c) put(out, r.incident.theta[std::size_t(c)]);
        for (int c = 0; c < 3; ++c) put(out, r.incident.pol[std::size_t(c)]);
        for (int c = 0; c < 3; ++c) put(out, r.theta_prime[std::size_t(c)]);
        for (int c = 0; c < 3; ++c) {
            put(out, r.p_inf[std::size_t(c)].real());
            put(out, r.p_inf[std::size_t(c)].imag());
        }
        for (int c = 0; c < 3; ++c) {
            put(out, r.s_inf[std::size_t(c)].real());
            put(out, r.s_inf[std::size_t(c)].imag());
        }
        out += '\n';
    }
    return out;
}

std::vector<AmplitudeRecord> parse_amplitude_table(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != kTableHeader)
        throw invalid_format("amplitude table header mismatch");
    std::vector<AmplitudeRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (cells.size() != 24)
            throw invalid_format("amplitude table row has wrong cell count");
        auto num = [&](std::size_t i) {
            const char* s = cells[i].c_str();
            char* end = nullptr;
            double v = std::strtod(s, &end);
            if (end == s || *end != '\0')
                throw invalid_format("amplitude table cell is not a number: " + cells[i]);
            return v;
        };
        AmplitudeRecord r;
        r.d = int(num(0));
        if (r.d != 2 && r.d != 3) throw invalid_format("amplitude table dimension must be 2 or 3");
        r.omega = num(1);
        if (cells[2] == "p") r.incident.kind = WaveKind::P;
        else if (cells[2] == "s") r.incident.kind = WaveKind::S;
        else throw invalid_format("amplitude table kind must be p or s");
        r.incident.omega = r.omega;
        for (int c = 0; c < 3; ++c) r.incident.theta[std::size_t(c)] = num(std::size_t(3 + c));
        for (int c = 0; c < 3; ++c) r.incident.pol[std::size_t(c)] = num(std::size_t(6 + c));
        for (int c = 0; c < 3; ++c) r.theta_prime[std::size_t(c)] = num(std::size_t(9 + c));
        for (int c = 0; c < 3; ++c)
            r.p_inf[std::size_t(c)] = cplx(num(std::size_t(12 + 2 * c)), num(std::size_t(13 + 2 * c)));
        for (int c = 0; c < 3; ++c)
            r.s_inf[std::size_t(c)] = cplx(num(std::size_t(18 + 2 * c)), num(std::size_t(19 + 2 * c)));
        out.push_back(r);
    }
    if (!out.empty())
        for (const AmplitudeRecord& r : out)
            if (r.d != out.front().d) throw invalid_format("amplitude table mixes dimensions");
    return out;
}

} // namespace elscat
