#pragma once

#include "elscat/core.hpp"
#include "elscat/fields.hpp"
#include "elscat/green_kernel.hpp"
#include "elscat/grid_spectral.hpp"
#include "elscat/ls_solver.hpp"

#include <string>
#include <vector>

namespace elscat {

// Leading-order angular coefficients of the scattered field at infinity:
// the longitudinal part rides the slow wavenumber and points along the
// observation direction; the transverse part rides the fast wavenumber
// and is orthogonal to it.
struct FarFieldPair {
    CVec p_inf{}; // parallel to theta_prime
    CVec s_inf{}; // orthogonal to theta_prime
};

struct AmplitudeRecord {
    int d = 0;
    double omega = 0.0;
    IncidentWave incident;
    Vec theta_prime{};
    CVec p_inf{};
    CVec s_inf{};
};

// Weighted plane-wave sums of Q u over the support nodes:
//   p: (1/(2mu+lambda)) h^d sum_j e^{-i kp t.y_j} ((Q u)(y_j).t) t
//   s: (1/mu)          h^d sum_j e^{-i ks t.y_j} [(Q u)(y_j) - ((Q u)(y_j).t) t]
// theta_prime must be unit to 1e-12; u is a total field on Q's grid.
FarFieldPair far_field(const LameParams& p, const Potential& Q,
                       const NodalVectorField& u, const Vec& theta_prime);

// Shares the Q u product across all observation directions.
std::vector<FarFieldPair> far_field_batch(const LameParams& p, const Potential& Q,
                                          const NodalVectorField& u,
                                          const std::vector<Vec>& directions);

enum class AmpChannel { P, S };
enum class AmpPart { Re, Im, Abs };

// Scalar readout of one amplitude vector, used to fill sinogram cells.
// component 0..2 picks a Cartesian component; kPol projects on the
// incidence polarization; kNorm takes the Euclidean norm (part Re and Abs
// both give the norm, Im gives zero).
struct AmplitudeSelector {
    AmpChannel channel = AmpChannel::S;
    int component = kPol;
    AmpPart part = AmpPart::Re;

    static constexpr int kPol = -1;
    static constexpr int kNorm = -2;
};

double select_amplitude(const AmplitudeSelector& sel, const AmplitudeRecord& rec);

// Frequency-by-angle panel for one incidence and one selector. Rows follow
// omegas, columns follow angles; cells of failed solves are NaN.
struct Sinogram {
    std::vector<double> omegas;
    std::vector<double> angles; // radians; direction (cos a, sin a)
    std::vector<double> values; // row-major, omegas x angles
    double& at(std::size_t i, std::size_t j) { return values[i * angles.size() + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * angles.size() + j]; }
};

struct SweepFailure {
    std::size_t omega_index = 0;
    std::string reason;
};

struct SinogramSweep {
    std::vector<Sinogram> panels;         // one per selector
    std::vector<SweepFailure> failures;   // rows whose solve failed (NaN rows)
    std::vector<AmplitudeRecord> records; // row-major, only when collected
};

// One solve per frequency, shared across all selectors and angles. The
// incidence template's frequency is replaced row by row; `material`
// carries lambda and mu (its omega is likewise replaced). Rows may run on
// `workers` threads; the output is position-addressed and bitwise
// independent of the schedule. 2D only.
SinogramSweep sinogram_multi(const LameParams& material, const CutoffSpec& c,
                             const GridSpec& g, const Potential& Q,
                             const IncidentWave& inc, const std::vector<double>& omegas,
                             const std::vector<double>& angles, const SolverConfig& cfg,
                             const std::vector<AmplitudeSelector>& selectors,
                             int workers, bool collect_records);

Sinogram sinogram(const LameParams& material, const CutoffSpec& c, const GridSpec& g,
                  const Potential& Q, const IncidentWave& inc,
                  const std::vector<double>& omegas, const std::vector<double>& angles,
                  const SolverConfig& cfg, const AmplitudeSelector& selector,
                  int workers = 1);

// CSV with one row per record: frequency, incidence, observation direction,
// and real/imag parts of both amplitude vectors. Directions are stored as
// components (full precision) so the round trip is bit-exact.
std::string amplitude_table(const std::vector<AmplitudeRecord>& records);
std::vector<AmplitudeRecord> parse_amplitude_table(const std::string& csv);

} // namespace elscat
