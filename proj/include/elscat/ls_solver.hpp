#pragma once

#include "elscat/core.hpp"
#include "elscat/fields.hpp"
#include "elscat/green_kernel.hpp"
#include "elscat/grid_spectral.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace elscat {

struct SolverConfig {
    double tol = 1e-8;        // relative residual target
    int restart = 30;         // Krylov basis size between restarts
    int max_iterations = 500; // total inner iterations across restarts
};

// Matrix-free action y = A x on flat complex vectors of equal size.
using LinearOp = std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>;

struct IterativeResult {
    std::vector<cplx> x;
    bool converged = false;
    bool breakdown = false; // Krylov space closed before reaching the target
    int iterations = 0;
    double residual = 0.0;  // true relative residual of the returned x
    std::vector<double> history; // per-iteration residual estimates
};

// Restarted GMRES with modified Gram-Schmidt and Givens updates. The
// returned residual is recomputed from b - A x, not the recurrence.
// Non-finite values from the operator raise numeric_fault.
IterativeResult iterative_solve(const LinearOp& A, const std::vector<cplx>& b,
                                const SolverConfig& cfg);

// Discrete scattering system: v - conv(Q v) = rhs, with conv the
// periodized-kernel convolution held by the spectrum.
NodalVectorField apply_system(const KernelSpectrum& k, const Potential& Q,
                              const NodalVectorField& v);

// Right-hand side conv(Q u_inc) generated by an incident wave.
NodalVectorField build_rhs(const KernelSpectrum& k, const Potential& Q,
                           const LameParams& p, const IncidentWave& w);

struct SystemSolve {
    NodalVectorField v;
    bool converged = false;
    bool breakdown = false;
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> history;
};

// Solves the discrete system for an arbitrary right-hand side.
SystemSolve solve_system(const KernelSpectrum& k, const Potential& Q,
                         const NodalVectorField& rhs, const SolverConfig& cfg);

struct SolveResult {
    NodalVectorField v;      // scattered field at the nodes
    NodalVectorField u;      // total field: incident plus scattered
    bool converged = false;
    bool breakdown = false;
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_history;
};

// End-to-end solve for one incident wave: builds (or reuses) the kernel
// spectrum, forms the right-hand side, runs the iteration, and adds the
// incident samples back in.
SolveResult solve_scattering(const LameParams& p, const CutoffSpec& c,
                             const GridSpec& g, const Potential& Q,
                             const IncidentWave& w, const SolverConfig& cfg);

// Process-wide spectrum cache (small LRU keyed by grid and parameters);
// repeated solves at the same frequency reuse one spectrum.
std::shared_ptr<const KernelSpectrum> cached_kernel_spectrum(const LameParams& p,
                                                             const CutoffSpec& c,
                                                             const GridSpec& g);

// Scattered field outside the support: the quadrature
// -h^d sum_j G(x - y_j) (Q u)(y_j), oriented like the interior solve.
// Every evaluation point must satisfy |x| > Q.rho.
std::vector<CVec> evaluate_exterior(const LameParams& p, const Potential& Q,
                                    const NodalVectorField& u,
                                    const std::vector<Vec>& points);

// Convenience overload: u is reconstructed as incident-plus-scattered
// from the solved interior field v.
std::vector<CVec> evaluate_exterior(const LameParams& p, const Potential& Q,
                                    const NodalVectorField& v,
                                    const IncidentWave& w,
                                    const std::vector<Vec>& points);

struct ConvergenceRow {
    int N = 0;
    double h = 0.0;
    double err_linf = 0.0;
    double err_l2 = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::vector<double> order_linf; // log-h slopes between consecutive rows
    std::vector<double> order_l2;
    bool all_converged = true;
};

// Runs the closed-form 2D test problem on each grid size and reports the
// interior errors against the exact field together with observed orders.
ConvergenceTable convergence_study(const LameParams& p, const CutoffSpec& c,
                                   double R, const std::vector<int>& Ns,
                                   const SolverConfig& cfg);

// Explicit dense matrix of the system operator (column probes), for
// cross-checking the matrix-free path on tiny grids. Dimension d N^d is
// capped at 4096.
std::vector<cplx> dense_assemble(const KernelSpectrum& k, const Potential& Q);

} // namespace elscat
