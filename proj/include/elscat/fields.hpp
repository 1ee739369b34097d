#pragma once

#include "elscat/core.hpp"
#include "elscat/green_kernel.hpp"
#include "elscat/grid_spectral.hpp"

#include <functional>
#include <string>
#include <vector>

namespace elscat {

enum class WaveKind { P, S };

// Incident plane wave. P-waves propagate and oscillate along theta
// (curl-free); S-waves oscillate along a unit polarization orthogonal to
// theta (divergence-free). For P the polarization slot holds theta itself.
struct IncidentWave {
    WaveKind kind = WaveKind::P;
    Vec theta{};
    Vec pol{};
    double omega = 0.0;
};

// Validates directions to 1e-12: theta and pol must be unit vectors and
// orthogonal for S-waves. pol is ignored (and replaced by theta) for P.
IncidentWave make_incident(WaveKind kind, const Vec& theta, const Vec& pol,
                           double omega, int d);

// Counterclockwise rotation by pi/2; the conventional 2D S-polarization.
Vec perp2d(const Vec& theta);

// e^{i k theta.x} times the polarization, with k the kind's wavenumber.
// The wave's frequency must equal params.omega.
CVec eval_incident(const LameParams& p, const IncidentWave& w, int d, const Vec& x);

// Real matrix-valued potential sampled on the grid nodes, supported in the
// closed ball |x| <= rho with rho < R/2. Entries at nodes outside the ball
// are exactly zero; `support` lists the nodes with any nonzero entry.
struct Potential {
    GridSpec grid;
    double rho = 0.0;
    std::vector<double> q;                // node-major, d*d row-major
    std::vector<std::size_t> support;

    const double* block(std::size_t node) const {
        return q.data() + node * std::size_t(grid.d) * std::size_t(grid.d);
    }
    bool zero() const { return support.empty(); }
};

// Samples a matrix field (row-major 3-stride, d x d used) and masks it to
// the ball. Non-finite samples are rejected.
Potential make_potential(const GridSpec& g, double rho,
                         const std::function<std::array<double, 9>(const Vec&)>& fn);

Potential zero_potential(const GridSpec& g, double rho);

// Scalar contrast q(x) I with q the sum of an annulus indicator
// (1 for 0.6 < |x| < 0.8) and a diamond indicator (1.2 for |x1|+|x2| < 0.2),
// open sets, so boundary nodes take the excluded value. 2D only; rho must
// cover the support (rho >= 0.8).
Potential experiment2_potential(const GridSpec& g, double rho);

// Closed-form test problem on the unit ball (2D): a compactly supported
// bump g(x) = (1-|x|^2)^4 (1,1), the field v = (mu Lap + (lambda+mu) grad
// div + omega^2) g it generates, the matching right-hand side f = v - g,
// and the unit-ball potential Q = I. Solving the discrete system with
// rhs = f reproduces v up to the scheme's discretization error.
struct ManufacturedCase {
    Potential Q;
    std::function<CVec(const Vec&)> bump;
    std::function<CVec(const Vec&)> v_exact;
    std::function<CVec(const Vec&)> f;
};

ManufacturedCase manufactured_case(const LameParams& p, const GridSpec& g);

// Node-wise product (Q w)(x_j) = Q(x_j) w(x_j); zero off the support.
NodalVectorField apply_potential(const Potential& Q, const NodalVectorField& w);

// Raw little-endian doubles (<base>.qbin) plus a text sidecar
// (<base>.qmeta); the round trip is bit-exact. Loading revalidates the
// support invariant and value finiteness.
void save_potential(const Potential& Q, const std::string& base);
Potential load_potential(const std::string& base);

} // namespace elscat
