#!/usr/bin/env python3
"""Regenerates tests/reference_tables.hpp.

All reference values are evaluated with mpmath at 50 significant digits and
rounded to the nearest double, so the tables are exact to the last bit of
what double precision can represent.  Run from the repository root:

    python3 tests/reference/gen_tables.py > tests/reference_tables.hpp
"""
import mpmath as mp

mp.mp.dps = 50


def d(x):
    """Format an mpmath number as a C++ double literal."""
    return repr(float(x))


def wavenumbers(lam, mu, om):
    return om / mp.sqrt(2 * mu + lam), om / mp.sqrt(mu)


def phi2d(lam, mu, om, v):
    kp, ks = wavenumbers(lam, mu, om)
    i = mp.mpc(0, 1)
    p1 = (i / (4 * mu)) * mp.hankel1(0, ks * v) - (i / (4 * om**2 * v)) * (
        ks * mp.hankel1(1, ks * v) - kp * mp.hankel1(1, kp * v))
    p2 = (i / (4 * om**2)) * (
        (2 * ks / v) * mp.hankel1(1, ks * v) - ks**2 * mp.hankel1(0, ks * v)
        - (2 * kp / v) * mp.hankel1(1, kp * v) + kp**2 * mp.hankel1(0, kp * v))
    return p1, p2


def phi3d(lam, mu, om, v):
    kp, ks = wavenumbers(lam, mu, om)
    i = mp.mpc(0, 1)
    es, ep = mp.exp(i * ks * v), mp.exp(i * kp * v)
    c = 1 / (4 * mp.pi * om**2)
    p1 = ks**2 * es / (4 * mp.pi * om**2 * v) + c * (
        (i * ks * es - i * kp * ep) / v**2 - (es - ep) / v**3)
    p2 = c * (-(ks**2 * es - kp**2 * ep) / v
              - 3 * (i * ks * es - i * kp * ep) / v**2 + 3 * (es - ep) / v**3)
    return p1, p2


def envelope(x):
    return mp.sqrt(2 / (mp.pi * x)) if x > 1 else mp.mpf(1)


def nudge(x):
    """Move x off zeros of J0,J1,Y0,Y1 so relative comparisons stay stable."""
    x = mp.mpf(x)
    while True:
        vals = [mp.besselj(0, x), mp.besselj(1, x), mp.bessely(0, x), mp.bessely(1, x)]
        if min(abs(v) for v in vals) >= mp.mpf("0.02") * envelope(x):
            return x
        x *= mp.mpf("1.0037")


ACCEPT = [mp.mpf(s) for s in ["0.5", "1", "2", "5", "10", "50"]]
GRID = [nudge(s) for s in [
    "1e-3", "3e-3", "0.01", "0.03", "0.1", "0.3", "0.7", "1.5", "2.5",
    "4.1", "6.2", "7.9", "9", "11", "13", "15", "16.2", "17.5", "18.5",
    "20.3", "25", "35", "60", "90", "150", "400", "1000", "2000", "5000", "10000"]]

GREEN_PARAMS = [("1.0", "4.0", "10.0"), ("2.0", "0.5", "3.0")]
V2D = ["1e-6", "1e-5", "1e-4", "1e-3", "0.02", "0.3", "1.0", "2.5"]
V3D = ["1e-4", "1e-3", "5e-3", "0.02", "0.3", "1.0", "3.0"]

print("// Generated by tests/reference/gen_tables.py; do not edit by hand.")
print("// Values are mpmath evaluations at 50 digits, rounded to double.")
print("#pragma once")
print()
print("namespace refdata {")
print()
print("struct BesselRef { double x, j0, j1, y0, y1; };")
print()
print("inline constexpr BesselRef bessel_accept[] = {")
for x in ACCEPT:
    print(f"    {{{d(x)}, {d(mp.besselj(0, x))}, {d(mp.besselj(1, x))}, "
          f"{d(mp.bessely(0, x))}, {d(mp.bessely(1, x))}}},")
print("};")
print()
print("inline constexpr BesselRef bessel_grid[] = {")
for x in GRID:
    print(f"    {{{d(x)}, {d(mp.besselj(0, x))}, {d(mp.besselj(1, x))}, "
          f"{d(mp.bessely(0, x))}, {d(mp.bessely(1, x))}}},")
print("};")
print()
print("struct GreenRef { double lambda, mu, omega, v; "
      "double p1re, p1im, p2re, p2im; };")
print()
print("inline constexpr GreenRef green2d[] = {")
for (l, m, o) in GREEN_PARAMS:
    for vs in V2D:
        p1, p2 = phi2d(mp.mpf(l), mp.mpf(m), mp.mpf(o), mp.mpf(vs))
        print(f"    {{{l}, {m}, {o}, {d(mp.mpf(vs))}, "
              f"{d(p1.real)}, {d(p1.imag)}, {d(p2.real)}, {d(p2.imag)}}},")
print("};")
print()
print("inline constexpr GreenRef green3d[] = {")
for (l, m, o) in GREEN_PARAMS:
    for vs in V3D:
        p1, p2 = phi3d(mp.mpf(l), mp.mpf(m), mp.mpf(o), mp.mpf(vs))
        print(f"    {{{l}, {m}, {o}, {d(mp.mpf(vs))}, "
              f"{d(p1.real)}, {d(p1.imag)}, {d(p2.real)}, {d(p2.imag)}}},")
print("};")
print()
print("} // namespace refdata")

# Double-double constants for special_fn.cpp, printed as a comment so the
# values can be copied if the implementation constants ever need review.
import sys


def dd(x):
    hi = float(x)
    lo = float(x - mp.mpf(hi))
    return hi, lo


for name, val in [("euler_gamma", mp.euler), ("pi", mp.pi),
                  ("two_over_pi", 2 / mp.pi)]:
    hi, lo = dd(val)
    print(f"// dd {name}: hi={hi!r} lo={lo!r}", file=sys.stderr)
