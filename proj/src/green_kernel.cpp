#include "elscat/green_kernel.hpp"

#include "elscat/special_fn.hpp"

#include <cmath>
#include <numbers>

namespace elscat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGamma = 0.5772156649015328606;
constexpr cplx kI{0.0, 1.0};

} // namespace

void LameParams::validate() const {
    if (!(mu > 0.0) || !(2.0 * mu + lambda > 0.0))
        throw std::domain_error(
            "LameParams: strong ellipticity requires mu > 0 and 2*mu + lambda > 0");
    if (!(omega > 0.0))
        throw std::domain_error("LameParams: omega must be positive");
}

Wavenumbers wavenumbers(const LameParams& p) {
    p.validate();
    return {p.omega / std::sqrt(2.0 * p.mu + p.lambda),
            p.omega / std::sqrt(p.mu)};
}

void CutoffSpec::validate() const {
    if (!(rho > 0.0))
        throw std::domain_error("CutoffSpec: rho must be positive");
    if (!(R > 2.0 * rho))
        throw std::domain_error("CutoffSpec: R must exceed 2*rho");
}

double cutoff_psi(const CutoffSpec& c, double r) {
    c.validate();
    if (!(r >= 0.0))
        throw std::domain_error("cutoff_psi: radius must be nonnegative");
    if (r <= 2.0 * c.rho) return 1.0;
    if (r >= c.R) return 0.0;
    const double w = c.R - 2.0 * c.rho;
    const double a = std::exp(-w / (c.R - r));     // s((R-r)/w)
    const double b = std::exp(-w / (r - 2.0 * c.rho));
    return a / (a + b);
}

namespace {

// Ascending-series building blocks shared by the small-argument 2D path.
// All sums are in the variable u = (z/2)^2 and converge in a handful of
// terms for z <= 1/4 with no cancellation, so plain doubles suffice.
struct Series2d {
    double j0;   // J0(z)
    double j1;   // J1(z)
    double s0;   // sum_{m>=1} H_m (-u)^m / (m!)^2
    double s1;   // sum_{m>=0} (H_m + H_{m+1}) (-u)^m / (m! (m+1)!)
    double gr;   // sum_{m>=1} (-1)^{m+1} m u^m / ((m!)^2 (m+1))
    double L;    // log(z/2) + gamma
};

Series2d series_2d(double z) {
    const double u = 0.25 * z * z;
    Series2d r{1.0, 1.0, 0.0, 1.0, 0.0, std::log(0.5 * z) + kGamma};
    double t = 1.0; // (-u)^m/(m!)^2
    double s = 1.0; // (-u)^m/(m!(m+1)!)
    double H = 0.0;
    for (int m = 1; m <= 30; ++m) {
        t *= -u / (double(m) * m);
        s *= -u / (double(m) * (m + 1.0));
        H += 1.0 / m;
        const double H1 = H + 1.0 / (m + 1.0);
        r.j0 += t;
        r.j1 += s;
        r.s0 += H * t;
        r.s1 += (H + H1) * s;
        r.gr += -t * m / (m + 1.0); // (-1)^{m+1} u^m m/((m!)^2 (m+1))
        if (std::fabs(t) < 1e-20) break;
    }
    r.j1 *= 0.5 * z;
    return r;
}

// k*H1(k*v) with its k-independent singular part 2i/(pi*v) removed. The
// removed parts of the s- and p-terms cancel exactly in phi1, so dropping
// them analytically is what keeps the small-v evaluation stable.
cplx h1_regular(double k, double v) {
    const double z = k * v;
    const Series2d s = series_2d(z);
    const double re = k * s.j1;
    const double im = (2.0 * k / kPi) * s.L * s.j1 - (k * z / (2.0 * kPi)) * s.s1;
    return {re, im};
}

// (2/z)H1(z) - H0(z) with its singular part -4i/(pi z^2) removed; the
// removed parts cancel between the two wavenumbers in phi2.
cplx g_regular(double z) {
    const Series2d s = series_2d(z);
    const double t = -(1.0 / kPi) * s.s1 + (2.0 / kPi) * s.s0;
    return {s.gr, (2.0 / kPi) * s.L * s.gr + t};
}

PhiPair phi_2d_series(double kp, double ks, double mu, double om, double v) {
    const Series2d ss = series_2d(ks * v);
    const cplx h0s{ss.j0, (2.0 / kPi) * (ss.L * ss.j0 - ss.s0)};
    const cplx phi1 = (kI / (4.0 * mu)) * h0s -
                      (kI / (4.0 * om * om * v)) *
                          (h1_regular(ks, v) - h1_regular(kp, v));
    const cplx phi2 = (kI / (4.0 * om * om)) *
                      (ks * ks * g_regular(ks * v) - kp * kp * g_regular(kp * v));
    return {phi1, phi2};
}

PhiPair phi_2d_direct(double kp, double ks, double mu, double om, double v) {
    const cplx h0s = hankel1(0, ks * v);
    const cplx h1s = hankel1(1, ks * v);
    const cplx h0p = hankel1(0, kp * v);
    const cplx h1p = hankel1(1, kp * v);
    const cplx phi1 = (kI / (4.0 * mu)) * h0s -
                      (kI / (4.0 * om * om * v)) * (ks * h1s - kp * h1p);
    const cplx phi2 = (kI / (4.0 * om * om)) *
                      ((2.0 * ks / v) * h1s - ks * ks * h0s -
                       (2.0 * kp / v) * h1p + kp * kp * h0p);
    return {phi1, phi2};
}

PhiPair phi_3d_split(double kp, double ks, double om, double v) {
    const cplx zs = kI * (ks * v);
    const cplx zp = kI * (kp * v);
    // S1 = sum_{n>=3} (n-1)/n! (zs^n - zp^n)
    // S2 = sum_{m>=4} (m-1)(m-3)/m! (zs^m - zp^m)
    cplx pows = zs * zs * zs;
    cplx powp = zp * zp * zp;
    double fact = 6.0;
    cplx S1 = 0.0, S2 = 0.0;
    for (int n = 3; n <= 40; ++n) {
        const cplx diff = pows - powp;
        S1 += (double(n - 1) / fact) * diff;
        if (n >= 4) S2 += (double((n - 1) * (n - 3)) / fact) * diff;
        if (std::abs(diff) / fact < 1e-22 * (std::abs(S1) + 1e-300)) break;
        pows *= zs;
        powp *= zp;
        fact *= n + 1.0;
    }
    const double c = 1.0 / (4.0 * kPi * om * om);
    const double v3 = v * v * v;
    const cplx es = std::exp(zs);
    const cplx phi1 = ks * ks * es * (c / v) +
                      (kp * kp - ks * ks) / (8.0 * kPi * om * om * v) + c * S1 / v3;
    const cplx phi2 = (ks * ks - kp * kp) / (8.0 * kPi * om * om * v) + c * S2 / v3;
    return {phi1, phi2};
}

PhiPair phi_3d_direct(double kp, double ks, double om, double v) {
    const cplx es = std::exp(kI * (ks * v));
    const cplx ep = std::exp(kI * (kp * v));
    const double c = 1.0 / (4.0 * kPi * om * om);
    const double v2 = v * v, v3 = v2 * v;
    const cplx dphase = kI * (ks * es - kp * ep);
    const cplx dexp = es - ep;
    const cplx phi1 = ks * ks * es * (c / v) + c * (dphase / v2 - dexp / v3);
    const cplx phi2 = c * (-(ks * ks * es - kp * kp * ep) / v -
                           3.0 * dphase / v2 + 3.0 * dexp / v3);
    return {phi1, phi2};
}

} // namespace

PhiPair phi_pair_2d(const LameParams& p, double v) {
    const auto [kp, ks] = wavenumbers(p);
    if (!(v > 0.0))
        throw std::domain_error("phi_pair_2d: distance must be positive");
    if (std::max(kp, ks) * v < 0.25)
        return phi_2d_series(kp, ks, p.mu, p.omega, v);
    return phi_2d_direct(kp, ks, p.mu, p.omega, v);
}

PhiPair phi_pair_3d(const LameParams& p, double v) {
    const auto [kp, ks] = wavenumbers(p);
    if (!(v > 0.0))
        throw std::domain_error("phi_pair_3d: distance must be positive");
    if (std::max(kp, ks) * v < 1e-2)
        return phi_3d_split(kp, ks, p.omega, v);
    return phi_3d_direct(kp, ks, p.omega, v);
}

GreenMatrix green_tensor(const LameParams& p, int d, const Vec& x) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("green_tensor: dimension must be 2 or 3");
    const double v = norm2(x, d);
    if (!(v > 0.0))
        throw std::domain_error("green_tensor: x must be nonzero");

    const PhiPair f = d == 2 ? phi_pair_2d(p, v) : phi_pair_3d(p, v);
    GreenMatrix g;
    g.d = d;
    g.phi1 = f.phi1;
    g.phi2 = f.phi2;
    for (int i = 0; i < d; ++i) g.dir[i] = x[i] / v;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            g(r, c) = (r == c ? f.phi1 : cplx{0.0}) + f.phi2 * g.dir[r] * g.dir[c];
    return g;
}

GreenMatrix truncated_kernel(const LameParams& p, const CutoffSpec& c, int d,
                             const Vec& x) {
    c.validate();
    if (d != 2 && d != 3)
        throw std::invalid_argument("truncated_kernel: dimension must be 2 or 3");
    const double v = norm2(x, d);
    if (v == 0.0 || v >= c.R) {
        GreenMatrix g;
        g.d = d;
        return g;
    }
    GreenMatrix g = green_tensor(p, d, x);
    const double psi = cutoff_psi(c, v);
    if (psi != 1.0) {
        g.phi1 *= psi;
        g.phi2 *= psi;
        for (auto& e : g.a) e *= psi;
    }
    return g;
}

} // namespace elscat
