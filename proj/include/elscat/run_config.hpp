#pragma once

#include "elscat/core.hpp"
#include "elscat/fields.hpp"
#include "elscat/green_kernel.hpp"
#include "elscat/grid_spectral.hpp"
#include "elscat/ls_solver.hpp"
#include "elscat/scattering.hpp"

#include <string>
#include <vector>

namespace elscat {

enum class PotentialKind { Zero, Experiment2, Manufactured, File };

// Incidence request: "both" expands to one p-sweep and one s-sweep in the
// sinogram command.
enum class IncidentKinds { P, S, Both };

// Parsed, validated run description. Angles from the file are in units of
// pi and kept that way here; resolve_* helpers produce radians/vectors.
struct RunConfig {
    int dimension = 2;
    double lambda = 0.0, mu = 0.0;

    std::vector<double> omegas;   // one entry, or an expanded grid
    bool omega_is_grid = false;

    double rho = 0.0, R = 0.0;
    std::vector<int> Ns;          // one entry, or a refinement list

    PotentialKind potential = PotentialKind::Zero;
    std::string potential_path;

    bool has_incident = false;
    IncidentKinds incident_kinds = IncidentKinds::P;
    std::vector<double> theta_pi; // d=2: 1 angle; d=3: azimuth, colatitude
    std::vector<double> pol_pi;   // d=3 s-waves only
    bool has_pol = false;

    SolverConfig solver;

    std::string out_dir;
    bool fmt_raw = true;
    bool fmt_csv = false;
    AmplitudeSelector selector;
    int theta_prime_count = 256;
    int workers = 1;

    bool has_observation = false;
    std::vector<double> observation_angles_pi; // d=2
    std::vector<Vec> observation_dirs;         // d=3, normalized

    std::string canonical_json; // defaults expanded, for the run manifest
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Command-line overrides; keeps the canonical form in sync so manifests
// record the effective configuration. Pass empty / 0 to leave alone.
void apply_overrides(RunConfig& cfg, const std::string& out_dir, int workers);

// Unit vector from config angles (units of pi): d=2 one angle in the
// plane; d=3 azimuth plus colatitude.
Vec resolve_direction(int d, const std::vector<double>& angles_pi);

// Incident wave for one frequency and one concrete kind.
IncidentWave resolve_incident(const RunConfig& cfg, WaveKind kind, double omega);

GridSpec resolve_grid(const RunConfig& cfg, int N);
CutoffSpec resolve_cutoff(const RunConfig& cfg);
LameParams resolve_params(const RunConfig& cfg, double omega);
Potential resolve_potential(const RunConfig& cfg, const GridSpec& g);

} // namespace elscat
