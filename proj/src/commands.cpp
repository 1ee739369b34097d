#include "elscat/commands.hpp"

#include "elscat/artifacts.hpp"

#include <json.hpp>

#include <cmath>
#include <iostream>

namespace elscat {

namespace {

using nlohmann::json;

void require_single_omega(const RunConfig& cfg) {
    if (cfg.omega_is_grid || cfg.omegas.size() != 1)
        throw std::invalid_argument("this command needs a single \"omega\", not a grid");
}

int require_single_n(const RunConfig& cfg) {
    if (cfg.Ns.size() != 1)
        throw std::invalid_argument("this command needs a single geometry.N");
    return cfg.Ns[0];
}

WaveKind require_concrete_kind(const RunConfig& cfg) {
    if (!cfg.has_incident) throw std::invalid_argument("this command needs an \"incident\" block");
    if (cfg.incident_kinds == IncidentKinds::Both)
        throw std::invalid_argument("this command needs incident.kind p or s, not both");
    return cfg.incident_kinds == IncidentKinds::P ? WaveKind::P : WaveKind::S;
}

void check_csv_size(const RunConfig& cfg, int N) {
    if (cfg.fmt_csv && N > 128)
        throw std::invalid_argument("csv field output is limited to N <= 128");
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

void emit_fields(ArtifactWriter& w, const RunConfig& cfg, const std::string& stem,
                 const NodalVectorField& f) {
    if (cfg.fmt_raw) {
        w.write(stem + ".raw", field_raw_bytes(f));
        w.write(stem + ".meta", field_sidecar(f));
    }
    if (cfg.fmt_csv) w.write(stem + ".csv", field_csv(f));
    InnerBlock inner = extract_inner(f, cfg.rho);
    if (cfg.fmt_raw) {
        w.write(stem + "_inner.raw", inner_raw_bytes(inner));
        w.write(stem + "_inner.meta", inner_sidecar(inner));
    }
    if (cfg.fmt_csv) w.write(stem + "_inner.csv", inner_csv(inner));
}

} // namespace

void cmd_solve(const RunConfig& cfg, bool verbose) {
    require_single_omega(cfg);
    const int N = require_single_n(cfg);
    check_csv_size(cfg, N);
    WaveKind kind = require_concrete_kind(cfg);

    const double omega = cfg.omegas[0];
    GridSpec g = resolve_grid(cfg, N);
    LameParams p = resolve_params(cfg, omega);
    CutoffSpec c = resolve_cutoff(cfg);
    Potential Q = resolve_potential(cfg, g);
    IncidentWave wave = resolve_incident(cfg, kind, omega);

    if (verbose)
        std::cerr << "solve: d=" << cfg.dimension << " N=" << N << " omega=" << omega << "\n";
    SolveResult sol = solve_scattering(p, c, g, Q, wave, cfg.solver);
    if (!sol.converged)
        throw numeric_fault("solver stalled at relative residual " + format_double(sol.residual) +
                            " after " + std::to_string(sol.iterations) + " iterations");
    if (verbose)
        std::cerr << "solve: converged in " << sol.iterations
                  << " iterations, residual " << sol.residual << "\n";

    ArtifactWriter w(cfg.out_dir);
    emit_fields(w, cfg, "field_v", sol.v);
    emit_fields(w, cfg, "field_u", sol.u);
    json run = {{"omega", omega},
                {"N", N},
                {"converged", sol.converged},
                {"iterations", sol.iterations},
                {"residual", sol.residual}};
    w.finish("solve", cfg.canonical_json, run.dump());
}

void cmd_convergence(const RunConfig& cfg, bool verbose) {
    if (cfg.potential != PotentialKind::Manufactured)
        throw std::invalid_argument("convergence runs need potential.builtin = manufactured");
    if (cfg.dimension != 2)
        throw std::invalid_argument("the closed-form convergence case is two-dimensional");
    require_single_omega(cfg);

    LameParams p = resolve_params(cfg, cfg.omegas[0]);
    CutoffSpec c = resolve_cutoff(cfg);
    if (verbose) std::cerr << "convergence: " << cfg.Ns.size() << " grids\n";
    ConvergenceTable table = convergence_study(p, c, cfg.R, cfg.Ns, cfg.solver);
    if (!table.all_converged)
        throw numeric_fault("a refinement level did not reach the solver tolerance");

    std::string csv = "N,h,err_linf,err_l2,order_linf,order_l2\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const ConvergenceRow& r = table.rows[i];
        csv += std::to_string(r.N);
        csv += ',' + format_double(r.h);
        csv += ',' + format_double(r.err_linf);
        csv += ',' + format_double(r.err_l2);
        if (i == 0) {
            csv += ",,";
        } else {
            csv += ',' + format_double(table.order_linf[i - 1]);
            csv += ',' + format_double(table.order_l2[i - 1]);
        }
        csv += '\n';
    }
    ArtifactWriter w(cfg.out_dir);
    w.write("convergence.csv", csv);
    json run = {{"rows", table.rows.size()}, {"all_converged", table.all_converged}};
    w.finish("convergence", cfg.canonical_json, run.dump());
}

void cmd_sinogram(const RunConfig& cfg, bool verbose) {
    if (cfg.dimension != 2) throw std::invalid_argument("sinograms are two-dimensional");
    if (!cfg.omega_is_grid) throw std::invalid_argument("sinogram runs need \"omega_grid\"");
    if (!cfg.has_incident) throw std::invalid_argument("sinogram runs need an \"incident\" block");
    const int N = require_single_n(cfg);

    GridSpec g = resolve_grid(cfg, N);
    CutoffSpec c = resolve_cutoff(cfg);
    LameParams material{cfg.lambda, cfg.mu, cfg.omegas[0]};
    Potential Q = resolve_potential(cfg, g);

    std::vector<double> angles(std::size_t(cfg.theta_prime_count));
    for (std::size_t j = 0; j < angles.size(); ++j)
        angles[j] = 2.0 * M_PI * double(j) / double(angles.size());

    std::vector<WaveKind> kinds;
    if (cfg.incident_kinds == IncidentKinds::P) kinds = {WaveKind::P};
    else if (cfg.incident_kinds == IncidentKinds::S) kinds = {WaveKind::S};
    else kinds = {WaveKind::P, WaveKind::S};

    AmplitudeSelector sel_p = cfg.selector, sel_s = cfg.selector;
    sel_p.channel = AmpChannel::P;
    sel_s.channel = AmpChannel::S;

    ArtifactWriter w(cfg.out_dir);
    w.write("omega_axis.csv", axis_csv("omega", cfg.omegas));
    w.write("angle_axis.csv", axis_csv("angle", angles));

    json bounds = json::object();
    std::size_t failures_total = 0;
    for (WaveKind kind : kinds) {
        const char* kname = (kind == WaveKind::P) ? "p" : "s";
        if (verbose)
            std::cerr << "sinogram: incidence " << kname << ", " << cfg.omegas.size()
                      << " frequencies x " << angles.size() << " angles\n";
        IncidentWave inc = resolve_incident(cfg, kind, cfg.omegas[0]);
        SinogramSweep sweep = sinogram_multi(material, c, g, Q, inc, cfg.omegas, angles,
                                             cfg.solver, {sel_p, sel_s}, cfg.workers, false);
        for (std::size_t si = 0; si < 2; ++si) {
            const char* chan = (si == 0) ? "p" : "s";
            const Sinogram& sino = sweep.panels[si];
            std::string base = std::string("sinogram_inc_") + kname + "_amp_" + chan;
            w.write(base + ".csv", matrix_csv(sino.omegas, sino.angles, sino.values));
            w.write(base + ".raw", matrix_raw_bytes(sino.values));
            double lo = 0.0, hi = 0.0;
            w.write(base + ".pgm",
                    pgm16(sino.omegas.size(), sino.angles.size(), sino.values, &lo, &hi));
            bounds[base] = {lo, hi};
        }
        std::string fail_csv = "omega_index,omega,reason\n";
        for (const SweepFailure& f : sweep.failures) {
            fail_csv += std::to_string(f.omega_index);
            fail_csv += ',' + format_double(cfg.omegas[f.omega_index]);
            fail_csv += ',' + csv_quote(f.reason);
            fail_csv += '\n';
        }
        w.write(std::string("failures_inc_") + kname + ".csv", fail_csv);
        failures_total += sweep.failures.size();
    }
    json run = {{"rows", cfg.omegas.size()},
                {"cols", angles.size()},
                {"failed_rows", failures_total},
                {"pgm_bounds", bounds}};
    w.finish("sinogram", cfg.canonical_json, run.dump());
}

void cmd_amplitude(const RunConfig& cfg, bool verbose) {
    require_single_omega(cfg);
    const int N = require_single_n(cfg);
    if (!cfg.has_incident) throw std::invalid_argument("amplitude runs need an \"incident\" block");
    if (!cfg.has_observation)
        throw std::invalid_argument("amplitude runs need an \"observation\" block");

    const double omega = cfg.omegas[0];
    GridSpec g = resolve_grid(cfg, N);
    LameParams p = resolve_params(cfg, omega);
    CutoffSpec c = resolve_cutoff(cfg);
    Potential Q = resolve_potential(cfg, g);

    std::vector<Vec> dirs;
    if (cfg.dimension == 2)
        for (double a : cfg.observation_angles_pi)
            dirs.push_back(Vec{std::cos(a * M_PI), std::sin(a * M_PI), 0.0});
    else
        dirs = cfg.observation_dirs;

    std::vector<WaveKind> kinds;
    if (cfg.incident_kinds == IncidentKinds::P) kinds = {WaveKind::P};
    else if (cfg.incident_kinds == IncidentKinds::S) kinds = {WaveKind::S};
    else kinds = {WaveKind::P, WaveKind::S};

    std::vector<AmplitudeRecord> records;
    json run_kinds = json::array();
    for (WaveKind kind : kinds) {
        IncidentWave wave = resolve_incident(cfg, kind, omega);
        if (verbose)
            std::cerr << "amplitude: incidence " << ((kind == WaveKind::P) ? "p" : "s")
                      << ", " << dirs.size() << " directions\n";
        SolveResult sol = solve_scattering(p, c, g, Q, wave, cfg.solver);
        if (!sol.converged)
            throw numeric_fault("solver stalled at relative residual " +
                                format_double(sol.residual));
        std::vector<FarFieldPair> ff = far_field_batch(p, Q, sol.u, dirs);
        for (std::size_t j = 0; j < dirs.size(); ++j) {
            AmplitudeRecord rec;
            rec.d = cfg.dimension;
            rec.omega = omega;
            rec.incident = wave;
            rec.theta_prime = dirs[j];
            rec.p_inf = ff[j].p_inf;
            rec.s_inf = ff[j].s_inf;
            records.push_back(rec);
        }
        run_kinds.push_back({{"kind", kind == WaveKind::P ? "p" : "s"},
                             {"iterations", sol.iterations},
                             {"residual", sol.residual}});
    }
    ArtifactWriter w(cfg.out_dir);
    w.write("amplitudes.csv", amplitude_table(records));
    json run = {{"omega", omega}, {"rows", records.size()}, {"solves", run_kinds}};
    w.finish("amplitude", cfg.canonical_json, run.dump());
}

void cmd_kernel_decay(const RunConfig& cfg, bool verbose) {
    require_single_omega(cfg);
    const int N = require_single_n(cfg);
    LameParams p = resolve_params(cfg, cfg.omegas[0]);
    CutoffSpec c = resolve_cutoff(cfg);
    GridSpec g = resolve_grid(cfg, N);
    if (verbose) std::cerr << "kernel-decay: d=" << cfg.dimension << " N=" << N << "\n";
    KernelSpectrum spec = build_kernel_spectrum(p, c, g);
    DecayReport rep = decay_report(spec);

    std::string csv = "band_lo,band_hi,max_abs,stat\n";
    for (const DecayBand& b : rep.bands) {
        csv += format_double(b.lo);
        csv += ',' + format_double(b.hi);
        csv += ',' + format_double(b.max_abs);
        csv += ',' + format_double(b.stat);
        csv += '\n';
    }
    ArtifactWriter w(cfg.out_dir);
    w.write("kernel_decay.csv", csv);
    json run = {{"bands", rep.bands.size()}, {"max_stat", rep.max_stat}};
    w.finish("kernel-decay", cfg.canonical_json, run.dump());
}

} // namespace elscat
