#pragma once

#include <complex>

namespace elscat {

// First-kind and second-kind Bessel values of orders 0 and 1 at a common
// argument. Evaluating the four together is cheaper than four separate
// calls because the series share their recurrences.
struct BesselQuad {
    double j0, j1, y0, y1;
};

// Bessel J0, J1, Y0, Y1 at x > 0. Throws std::domain_error for x <= 0.
// Relative accuracy is better than 1e-13 away from the functions' zeros
// over at least [1e-3, 1e4].
BesselQuad bessel_quad(double x);

// Outgoing Hankel function H^(1)_order(x) = J_order(x) + i Y_order(x) for
// order 0 or 1 and x > 0. Throws std::invalid_argument for other orders and
// std::domain_error for x <= 0.
std::complex<double> hankel1(int order, double x);

} // namespace elscat
