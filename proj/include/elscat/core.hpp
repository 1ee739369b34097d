#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace elscat {

using cplx = std::complex<double>;

// Fixed-capacity point / vector types. The active dimension d is 2 or 3 and
// is carried by the surrounding object (grid, wave, ...); unused trailing
// entries are kept at zero so dimension-generic loops can run over all three
// slots when convenient.
using Vec = std::array<double, 3>;
using CVec = std::array<cplx, 3>;

inline double dot(const Vec& a, const Vec& b, int d) {
    double s = 0;
    for (int i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
}

// Unconjugated contraction of a complex vector with a real direction.
inline cplx dot(const CVec& a, const Vec& b, int d) {
    cplx s = 0;
    for (int i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a, int d) { return std::sqrt(dot(a, a, d)); }

inline double norm2(const CVec& a, int d) {
    double s = 0;
    for (int i = 0; i < d; ++i) s += std::norm(a[i]);
    return std::sqrt(s);
}

// Raised when an operator or solver produces a non-finite value; callers
// treat it as a numerical failure rather than a usage error.
class numeric_fault : public std::runtime_error {
public:
    explicit numeric_fault(const std::string& what) : std::runtime_error(what) {}
};

// Raised by artifact writers when the filesystem rejects an operation.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a file opens fine but its content violates the format.
class invalid_format : public std::runtime_error {
public:
    explicit invalid_format(const std::string& what) : std::runtime_error(what) {}
};

} // namespace elscat
