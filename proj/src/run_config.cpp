#include "elscat/run_config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace elscat {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) bad(where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) bad("unknown key \"" + it.key() + "\" in " + where);
    }
}

double get_num(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) bad(where + " is missing \"" + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_number()) bad(where + "." + key + " must be a number");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) bad(where + " is missing \"" + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_number_integer()) bad(where + "." + key + " must be an integer");
    return v.get<int>();
}

std::string get_str(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) bad(where + " is missing \"" + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_string()) bad(where + "." + key + " must be a string");
    return v.get<std::string>();
}

void check_even_n(int n) {
    if (n < 2 || n % 2 != 0) bad("geometry.N entries must be even and at least 2");
}

std::vector<double> parse_pi_pair(const json& v, const std::string& where, std::size_t want) {
    std::vector<double> out;
    if (want == 1) {
        if (!v.is_number()) bad(where + " must be a number (angle in units of pi)");
        out.push_back(v.get<double>());
        return out;
    }
    if (!v.is_array() || v.size() != want)
        bad(where + " must be an array of " + std::to_string(want) + " angles (units of pi)");
    for (const json& e : v) {
        if (!e.is_number()) bad(where + " entries must be numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

AmplitudeSelector parse_selector(const json& v) {
    expect_keys(v, "outputs.sinogram_selector", {"channel", "component", "part"});
    AmplitudeSelector sel;
    if (v.contains("channel")) {
        std::string s = get_str(v, "outputs.sinogram_selector", "channel");
        if (s == "p") sel.channel = AmpChannel::P;
        else if (s == "s") sel.channel = AmpChannel::S;
        else bad("sinogram_selector.channel must be \"p\" or \"s\"");
    }
    if (v.contains("component")) {
        std::string s = get_str(v, "outputs.sinogram_selector", "component");
        if (s == "x") sel.component = 0;
        else if (s == "y") sel.component = 1;
        else if (s == "z") sel.component = 2;
        else if (s == "pol") sel.component = AmplitudeSelector::kPol;
        else if (s == "norm") sel.component = AmplitudeSelector::kNorm;
        else bad("sinogram_selector.component must be x, y, z, pol or norm");
    }
    if (v.contains("part")) {
        std::string s = get_str(v, "outputs.sinogram_selector", "part");
        if (s == "re") sel.part = AmpPart::Re;
        else if (s == "im") sel.part = AmpPart::Im;
        else if (s == "abs") sel.part = AmpPart::Abs;
        else bad("sinogram_selector.part must be re, im or abs");
    }
    return sel;
}

json selector_json(const AmplitudeSelector& sel) {
    json v;
    v["channel"] = (sel.channel == AmpChannel::P) ? "p" : "s";
    switch (sel.component) {
        case AmplitudeSelector::kPol: v["component"] = "pol"; break;
        case AmplitudeSelector::kNorm: v["component"] = "norm"; break;
        case 0: v["component"] = "x"; break;
        case 1: v["component"] = "y"; break;
        default: v["component"] = "z"; break;
    }
    v["part"] = (sel.part == AmpPart::Re) ? "re" : (sel.part == AmpPart::Im) ? "im" : "abs";
    return v;
}

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("not valid JSON: ") + e.what());
    }
    expect_keys(root, "the top level",
                {"dimension", "material", "omega", "omega_grid", "geometry", "potential",
                 "incident", "solver", "outputs", "workers", "observation"});

    RunConfig cfg;
    if (!root.contains("dimension")) bad("\"dimension\" is required");
    if (!root.at("dimension").is_number_integer()) bad("dimension must be an integer");
    cfg.dimension = root.at("dimension").get<int>();
    if (cfg.dimension != 2 && cfg.dimension != 3) bad("dimension must be 2 or 3");

    if (!root.contains("material")) bad("\"material\" is required");
    const json& mat = root.at("material");
    expect_keys(mat, "material", {"lambda", "mu"});
    cfg.lambda = get_num(mat, "material", "lambda");
    cfg.mu = get_num(mat, "material", "mu");
    LameParams{cfg.lambda, cfg.mu, 1.0}.validate();

    const bool has_omega = root.contains("omega");
    const bool has_grid = root.contains("omega_grid");
    if (has_omega == has_grid) bad("exactly one of \"omega\" and \"omega_grid\" is required");
    if (has_omega) {
        if (!root.at("omega").is_number()) bad("omega must be a number");
        double w = root.at("omega").get<double>();
        if (!(w > 0.0)) bad("omega must be positive");
        cfg.omegas.push_back(w);
    } else {
        const json& og = root.at("omega_grid");
        expect_keys(og, "omega_grid", {"min", "max", "count", "values"});
        if (og.contains("values")) {
            if (og.contains("min") || og.contains("max") || og.contains("count"))
                bad("omega_grid takes either values or min/max/count, not both");
            const json& vals = og.at("values");
            if (!vals.is_array() || vals.empty()) bad("omega_grid.values must be a non-empty array");
            for (const json& e : vals) {
                if (!e.is_number()) bad("omega_grid.values entries must be numbers");
                cfg.omegas.push_back(e.get<double>());
            }
        } else {
            double lo = get_num(og, "omega_grid", "min");
            double hi = get_num(og, "omega_grid", "max");
            int count = get_int(og, "omega_grid", "count");
            if (!(lo > 0.0)) bad("omega_grid.min must be positive");
            if (!(hi > lo)) bad("omega_grid.max must exceed omega_grid.min");
            if (count < 2) bad("omega_grid.count must be at least 2");
            for (int i = 0; i < count; ++i)
                cfg.omegas.push_back(lo + (hi - lo) * double(i) / double(count - 1));
        }
        cfg.omega_is_grid = true;
        for (std::size_t i = 0; i < cfg.omegas.size(); ++i) {
            if (!(cfg.omegas[i] > 0.0)) bad("omega grid values must be positive");
            if (i > 0 && !(cfg.omegas[i] > cfg.omegas[i - 1]))
                bad("omega grid values must be strictly increasing");
        }
    }

    if (!root.contains("geometry")) bad("\"geometry\" is required");
    const json& geo = root.at("geometry");
    expect_keys(geo, "geometry", {"rho", "R", "N"});
    cfg.rho = get_num(geo, "geometry", "rho");
    cfg.R = get_num(geo, "geometry", "R");
    if (!(cfg.rho > 0.0)) bad("geometry.rho must be positive");
    if (!(cfg.R > 2.0 * cfg.rho)) bad("geometry.R must exceed twice geometry.rho");
    if (!geo.contains("N")) bad("geometry is missing \"N\"");
    const json& nval = geo.at("N");
    if (nval.is_number_integer()) {
        cfg.Ns.push_back(nval.get<int>());
        check_even_n(cfg.Ns.back());
    } else if (nval.is_array() && !nval.empty()) {
        for (const json& e : nval) {
            if (!e.is_number_integer()) bad("geometry.N entries must be integers");
            cfg.Ns.push_back(e.get<int>());
            check_even_n(cfg.Ns.back());
            if (cfg.Ns.size() > 1 && cfg.Ns[cfg.Ns.size() - 2] >= cfg.Ns.back())
                bad("geometry.N list must be strictly increasing");
        }
    } else {
        bad("geometry.N must be an even integer or a non-empty array of them");
    }

    if (!root.contains("potential")) bad("\"potential\" is required");
    const json& pot = root.at("potential");
    expect_keys(pot, "potential", {"builtin", "file"});
    if (pot.contains("builtin") == pot.contains("file"))
        bad("potential takes exactly one of \"builtin\" and \"file\"");
    if (pot.contains("builtin")) {
        std::string b = get_str(pot, "potential", "builtin");
        if (b == "zero") cfg.potential = PotentialKind::Zero;
        else if (b == "experiment2") cfg.potential = PotentialKind::Experiment2;
        else if (b == "manufactured") cfg.potential = PotentialKind::Manufactured;
        else bad("potential.builtin must be zero, experiment2 or manufactured");
    } else {
        cfg.potential = PotentialKind::File;
        cfg.potential_path = get_str(pot, "potential", "file");
    }

    if (root.contains("incident")) {
        cfg.has_incident = true;
        const json& inc = root.at("incident");
        expect_keys(inc, "incident", {"kind", "theta", "pol"});
        std::string kind = get_str(inc, "incident", "kind");
        if (kind == "p") cfg.incident_kinds = IncidentKinds::P;
        else if (kind == "s") cfg.incident_kinds = IncidentKinds::S;
        else if (kind == "both") cfg.incident_kinds = IncidentKinds::Both;
        else bad("incident.kind must be p, s or both");
        if (!inc.contains("theta")) bad("incident is missing \"theta\"");
        cfg.theta_pi = parse_pi_pair(inc.at("theta"), "incident.theta",
                                     cfg.dimension == 2 ? 1 : 2);
        bool wants_s = cfg.incident_kinds != IncidentKinds::P;
        if (inc.contains("pol")) {
            if (cfg.dimension == 2) bad("incident.pol is implied in 2D (left normal of theta)");
            if (!wants_s) bad("incident.pol applies to s-waves only");
            cfg.pol_pi = parse_pi_pair(inc.at("pol"), "incident.pol", 2);
            cfg.has_pol = true;
        } else if (cfg.dimension == 3 && wants_s) {
            bad("incident.pol is required for s-waves in 3D");
        }
    }

    if (root.contains("solver")) {
        const json& sv = root.at("solver");
        expect_keys(sv, "solver", {"tol", "restart", "max_iterations"});
        if (sv.contains("tol")) {
            cfg.solver.tol = get_num(sv, "solver", "tol");
            if (!(cfg.solver.tol > 0.0)) bad("solver.tol must be positive");
        }
        if (sv.contains("restart")) {
            cfg.solver.restart = get_int(sv, "solver", "restart");
            if (cfg.solver.restart < 1) bad("solver.restart must be at least 1");
        }
        if (sv.contains("max_iterations")) {
            cfg.solver.max_iterations = get_int(sv, "solver", "max_iterations");
            if (cfg.solver.max_iterations < 1) bad("solver.max_iterations must be at least 1");
        }
    }

    if (root.contains("outputs")) {
        const json& out = root.at("outputs");
        expect_keys(out, "outputs",
                    {"directory", "formats", "sinogram_selector", "theta_prime_count"});
        if (out.contains("directory")) cfg.out_dir = get_str(out, "outputs", "directory");
        if (out.contains("formats")) {
            const json& fm = out.at("formats");
            if (!fm.is_array() || fm.empty()) bad("outputs.formats must be a non-empty array");
            cfg.fmt_raw = false;
            std::set<std::string> seen;
            for (const json& e : fm) {
                if (!e.is_string()) bad("outputs.formats entries must be strings");
                std::string f = e.get<std::string>();
                if (!seen.insert(f).second) bad("outputs.formats repeats \"" + f + "\"");
                if (f == "raw") cfg.fmt_raw = true;
                else if (f == "csv") cfg.fmt_csv = true;
                else bad("outputs.formats entries must be \"raw\" or \"csv\"");
            }
        }
        if (out.contains("sinogram_selector")) cfg.selector = parse_selector(out.at("sinogram_selector"));
        if (out.contains("theta_prime_count")) {
            cfg.theta_prime_count = get_int(out, "outputs", "theta_prime_count");
            if (cfg.theta_prime_count < 1) bad("outputs.theta_prime_count must be at least 1");
        }
    }

    if (root.contains("workers")) {
        if (!root.at("workers").is_number_integer()) bad("workers must be an integer");
        cfg.workers = root.at("workers").get<int>();
        if (cfg.workers < 1) bad("workers must be at least 1");
    }

    if (root.contains("observation")) {
        cfg.has_observation = true;
        const json& obs = root.at("observation");
        expect_keys(obs, "observation", {"angles", "directions"});
        if (obs.contains("angles") == obs.contains("directions"))
            bad("observation takes exactly one of \"angles\" and \"directions\"");
        if (obs.contains("angles")) {
            if (cfg.dimension != 2) bad("observation.angles applies to 2D runs only");
            const json& a = obs.at("angles");
            if (!a.is_array() || a.empty()) bad("observation.angles must be a non-empty array");
            for (const json& e : a) {
                if (!e.is_number()) bad("observation.angles entries must be numbers");
                cfg.observation_angles_pi.push_back(e.get<double>());
            }
        } else {
            if (cfg.dimension != 3) bad("observation.directions applies to 3D runs only");
            const json& ds = obs.at("directions");
            if (!ds.is_array() || ds.empty()) bad("observation.directions must be a non-empty array");
            for (const json& e : ds) {
                if (!e.is_array() || e.size() != 3) bad("observation.directions entries must be 3-vectors");
                Vec v{};
                for (int c = 0; c < 3; ++c) {
                    if (!e[std::size_t(c)].is_number()) bad("observation.directions entries must be numeric");
                    v[std::size_t(c)] = e[std::size_t(c)].get<double>();
                }
                double n = norm2(v, 3);
                if (!(n > 0.0)) bad("observation.directions entries must be nonzero");
                for (int c = 0; c < 3; ++c) v[std::size_t(c)] /= n;
                cfg.observation_dirs.push_back(v);
            }
        }
    }

    // Canonical, defaults-expanded form embedded in run manifests.
    json canon;
    canon["dimension"] = cfg.dimension;
    canon["material"] = {{"lambda", cfg.lambda}, {"mu", cfg.mu}};
    if (cfg.omega_is_grid) canon["omega_grid"] = {{"values", cfg.omegas}};
    else canon["omega"] = cfg.omegas.front();
    canon["geometry"] = {{"rho", cfg.rho}, {"R", cfg.R}, {"N", cfg.Ns.size() == 1 ? json(cfg.Ns[0]) : json(cfg.Ns)}};
    if (cfg.potential == PotentialKind::File) canon["potential"] = {{"file", cfg.potential_path}};
    else canon["potential"] = {{"builtin", cfg.potential == PotentialKind::Zero ? "zero"
                                : cfg.potential == PotentialKind::Experiment2 ? "experiment2"
                                                                              : "manufactured"}};
    if (cfg.has_incident) {
        json inc;
        inc["kind"] = cfg.incident_kinds == IncidentKinds::P ? "p"
                      : cfg.incident_kinds == IncidentKinds::S ? "s" : "both";
        inc["theta"] = cfg.theta_pi.size() == 1 ? json(cfg.theta_pi[0]) : json(cfg.theta_pi);
        if (cfg.has_pol) inc["pol"] = cfg.pol_pi;
        canon["incident"] = inc;
    }
    canon["solver"] = {{"tol", cfg.solver.tol},
                       {"restart", cfg.solver.restart},
                       {"max_iterations", cfg.solver.max_iterations}};
    canon["outputs"] = {{"directory", cfg.out_dir},
                        {"formats", [&] {
                             std::vector<std::string> f;
                             if (cfg.fmt_raw) f.push_back("raw");
                             if (cfg.fmt_csv) f.push_back("csv");
                             return f;
                         }()},
                        {"sinogram_selector", selector_json(cfg.selector)},
                        {"theta_prime_count", cfg.theta_prime_count}};
    canon["workers"] = cfg.workers;
    if (cfg.has_observation) {
        if (cfg.dimension == 2) canon["observation"] = {{"angles", cfg.observation_angles_pi}};
        else {
            json dirs = json::array();
            for (const Vec& v : cfg.observation_dirs) dirs.push_back({v[0], v[1], v[2]});
            canon["observation"] = {{"directions", dirs}};
        }
    }
    cfg.canonical_json = canon.dump(2);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

void apply_overrides(RunConfig& cfg, const std::string& out_dir, int workers) {
    if (out_dir.empty() && workers <= 0) return;
    json canon = json::parse(cfg.canonical_json);
    if (!out_dir.empty()) {
        cfg.out_dir = out_dir;
        canon["outputs"]["directory"] = out_dir;
    }
    if (workers > 0) {
        cfg.workers = workers;
        canon["workers"] = workers;
    }
    cfg.canonical_json = canon.dump(2);
}

Vec resolve_direction(int d, const std::vector<double>& angles_pi) {
    if (d == 2) {
        if (angles_pi.size() != 1) throw std::invalid_argument("2D directions take one angle");
        double a = angles_pi[0] * M_PI;
        return Vec{std::cos(a), std::sin(a), 0.0};
    }
    if (angles_pi.size() != 2) throw std::invalid_argument("3D directions take azimuth and colatitude");
    double a = angles_pi[0] * M_PI, c = angles_pi[1] * M_PI;
    return Vec{std::sin(c) * std::cos(a), std::sin(c) * std::sin(a), std::cos(c)};
}

IncidentWave resolve_incident(const RunConfig& cfg, WaveKind kind, double omega) {
    if (!cfg.has_incident) throw std::invalid_argument("config has no incident wave");
    Vec theta = resolve_direction(cfg.dimension, cfg.theta_pi);
    Vec pol{};
    if (kind == WaveKind::S)
        pol = (cfg.dimension == 2) ? perp2d(theta) : resolve_direction(3, cfg.pol_pi);
    return make_incident(kind, theta, pol, omega, cfg.dimension);
}

GridSpec resolve_grid(const RunConfig& cfg, int N) { return build_grid(cfg.dimension, cfg.R, N); }

CutoffSpec resolve_cutoff(const RunConfig& cfg) {
    CutoffSpec c{cfg.rho, cfg.R};
    c.validate();
    return c;
}

LameParams resolve_params(const RunConfig& cfg, double omega) {
    LameParams p{cfg.lambda, cfg.mu, omega};
    p.validate();
    return p;
}

Potential resolve_potential(const RunConfig& cfg, const GridSpec& g) {
    switch (cfg.potential) {
        case PotentialKind::Zero:
            return zero_potential(g, cfg.rho);
        case PotentialKind::Experiment2:
            return experiment2_potential(g, cfg.rho);
        case PotentialKind::Manufactured:
            return manufactured_case(resolve_params(cfg, cfg.omegas.front()), g).Q;
        case PotentialKind::File: {
            Potential Q = load_potential(cfg.potential_path);
            if (!(Q.grid == g))
                throw std::invalid_argument("potential file grid does not match the configured geometry");
            return Q;
        }
    }
    throw std::invalid_argument("unreachable potential kind");
}

} // namespace elscat
