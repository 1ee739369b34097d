#pragma once

#include "elscat/core.hpp"

namespace elscat {

// Material and frequency parameters of the time-harmonic Lame operator
// mu*Laplace + (lambda+mu)*grad div + omega^2. Strong ellipticity requires
// mu > 0 and 2*mu + lambda > 0; omega must be positive.
struct LameParams {
    double lambda;
    double mu;
    double omega;

    void validate() const;
};

// Pressure and shear wavenumbers k_p = omega/sqrt(2 mu + lambda) and
// k_s = omega/sqrt(mu).
struct Wavenumbers {
    double kp;
    double ks;
};

Wavenumbers wavenumbers(const LameParams& p);

// Geometry of the smooth radial cutoff: identically one on [0, 2*rho],
// identically zero on [R, inf), smooth and strictly decreasing in between.
// Requires rho > 0 and R > 2*rho so the transition window is nonempty.
struct CutoffSpec {
    double rho;
    double R;

    void validate() const;
};

double cutoff_psi(const CutoffSpec& c, double r);

// Value of the d x d fundamental tensor at a point, together with its
// radial decomposition phi1*I + phi2*(x/|x|)(x/|x|)^T.
struct GreenMatrix {
    int d = 0;
    cplx phi1{};
    cplx phi2{};
    Vec dir{};                 // x/|x|; zero vector when the input was x = 0
    std::array<cplx, 9> a{};   // row-major d x d entries

    cplx operator()(int r, int c) const { return a[r * 3 + c]; }
    cplx& operator()(int r, int c) { return a[r * 3 + c]; }
};

// Radial factors of the outgoing fundamental tensor at distance v > 0.
// Both switch to analytically reduced series once max(kp,ks)*v is small,
// where the closed forms lose all their digits to cancellation.
struct PhiPair {
    cplx phi1;
    cplx phi2;
};

PhiPair phi_pair_2d(const LameParams& p, double v);
PhiPair phi_pair_3d(const LameParams& p, double v);

// Full tensor at x != 0 for d = 2 or 3.
GreenMatrix green_tensor(const LameParams& p, int d, const Vec& x);

// Cutoff-truncated kernel K(x) = Phi(x) psi(|x|) with the origin value
// defined as zero. Exactly zero for |x| >= R.
GreenMatrix truncated_kernel(const LameParams& p, const CutoffSpec& c, int d,
                             const Vec& x);

} // namespace elscat
