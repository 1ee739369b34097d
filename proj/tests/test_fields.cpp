#include "elscat/fields.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

using namespace elscat;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* tag) {
    fs::path dir = fs::temp_directory_path() / (std::string("elscat_fields_") + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Central differences of a scalar function of two variables.
double fd2(const std::function<double(double, double)>& f, double x, double y,
           int a, int b, double h) {
    if (a == b) {
        double p = (a == 0) ? h : 0.0, q = (a == 0) ? 0.0 : h;
        return (f(x + p, y + q) - 2.0 * f(x, y) + f(x - p, y - q)) / (h * h);
    }
    return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) /
           (4.0 * h * h);
}

} // namespace

TEST_SUITE("fields") {

TEST_CASE("incident wave construction validates its directions") {
    Vec e0{1.0, 0.0, 0.0}, e1{0.0, 1.0, 0.0};
    CHECK_THROWS_AS(make_incident(WaveKind::P, Vec{0.5, 0.0, 0.0}, e1, 1.0, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_incident(WaveKind::P, Vec{0.0, 0.0, 1.0}, e1, 1.0, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_incident(WaveKind::P, e0, e1, 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_incident(WaveKind::P, e0, e1, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_incident(WaveKind::S, e0, e0, 1.0, 2), std::invalid_argument);
    double s = 1.0 / std::sqrt(2.0);
    CHECK_THROWS_AS(make_incident(WaveKind::S, Vec{0.0, 0.0, 1.0}, Vec{s, 0.0, s}, 1.0, 3),
                    std::invalid_argument);

    // P ignores the polarization slot and stores the direction there.
    IncidentWave p = make_incident(WaveKind::P, e0, Vec{9.0, 9.0, 9.0}, 2.0, 2);
    CHECK(p.pol == e0);
    CHECK(p.omega == 2.0);

    IncidentWave sw = make_incident(WaveKind::S, e0, e1, 2.0, 2);
    CHECK(sw.pol == e1);
}

TEST_CASE("perp2d rotates a quarter turn counterclockwise") {
    Vec t{std::cos(0.3), std::sin(0.3), 0.0};
    Vec n = perp2d(t);
    CHECK(n[0] == doctest::Approx(-std::sin(0.3)).epsilon(1e-15));
    CHECK(n[1] == doctest::Approx(std::cos(0.3)).epsilon(1e-15));
    CHECK(n[2] == 0.0);
    CHECK(std::abs(dot(n, t, 2)) <= 1e-15);
}

TEST_CASE("incident waves are plane waves at the kind's wavenumber") {
    LameParams p{1.0, 4.0, 10.0}; // kp = 10/3, ks = 5
    Vec theta{std::cos(0.3), std::sin(0.3), 0.0};
    Vec x{0.7, -0.4, 0.0};

    IncidentWave wp = make_incident(WaveKind::P, theta, Vec{}, 10.0, 2);
    CVec up = eval_incident(p, wp, 2, x);
    cplx phase_p = std::exp(cplx(0.0, (10.0 / 3.0) * dot(theta, x, 2)));
    CHECK(std::abs(up[0] - theta[0] * phase_p) <= 1e-14);
    CHECK(std::abs(up[1] - theta[1] * phase_p) <= 1e-14);

    IncidentWave ws = make_incident(WaveKind::S, theta, perp2d(theta), 10.0, 2);
    CVec us = eval_incident(p, ws, 2, x);
    cplx phase_s = std::exp(cplx(0.0, 5.0 * dot(theta, x, 2)));
    CHECK(std::abs(us[0] - perp2d(theta)[0] * phase_s) <= 1e-14);
    CHECK(std::abs(us[1] - perp2d(theta)[1] * phase_s) <= 1e-14);

    // A wave built for a different frequency cannot be evaluated.
    IncidentWave other = make_incident(WaveKind::P, theta, Vec{}, 3.0, 2);
    CHECK_THROWS_AS(eval_incident(p, other, 2, x), std::invalid_argument);
}

TEST_CASE("potentials are masked to the support ball") {
    GridSpec g = build_grid(2, 2.5, 16);
    double rho = 0.9;
    Potential Q = make_potential(g, rho, [](const Vec&) {
        std::array<double, 9> b{};
        b[0] = 1.0;
        b[1] = 2.0;
        b[3] = 3.0;
        b[4] = 4.0;
        return b;
    });
    std::size_t expected_support = 0;
    for (std::size_t node = 0; node < g.node_count(); ++node) {
        Vec x = g.coords_of(node);
        const double* b = Q.block(node);
        if (norm2(x, 2) > rho) {
            CHECK(b[0] == 0.0);
            CHECK(b[1] == 0.0);
            CHECK(b[2] == 0.0);
            CHECK(b[3] == 0.0);
        } else {
            CHECK(b[0] == 1.0);
            CHECK(b[1] == 2.0);
            CHECK(b[2] == 3.0);
            CHECK(b[3] == 4.0);
            ++expected_support;
        }
    }
    CHECK(Q.support.size() == expected_support);
    CHECK(expected_support > 0);
    CHECK_FALSE(Q.zero());

    CHECK(zero_potential(g, rho).zero());
    CHECK_THROWS_AS(make_potential(g, 1.25, [](const Vec&) { return std::array<double, 9>{}; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_potential(g, -1.0, [](const Vec&) { return std::array<double, 9>{}; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_potential(g, 0.9, [](const Vec&) {
        std::array<double, 9> b{};
        b[0] = std::nan("");
        return b;
    }), std::invalid_argument);
}

TEST_CASE("the two-region contrast takes its documented values") {
    GridSpec g = build_grid(2, 2.5, 64); // h = 0.078125
    Potential Q = experiment2_potential(g, 0.9);
    auto value_at = [&](int j0, int j1) {
        return Q.block(g.index_of({j0, j1, 0}))[0];
    };
    // 9h = 0.703125 sits inside the annulus.
    CHECK(value_at(9, 0) == 1.0);
    // (h, h) has |x0|+|x1| = 0.15625 < 0.2: diamond value.
    CHECK(value_at(1, 1) == 1.2);
    CHECK(value_at(0, 0) == 1.2);
    // 4h = 0.3125 lies between the regions.
    CHECK(value_at(4, 0) == 0.0);
    // Diagonal entries match, off-diagonals vanish.
    const double* b = Q.block(g.index_of({9, 0, 0}));
    CHECK(b[3] == 1.0);
    CHECK(b[1] == 0.0);
    CHECK(b[2] == 0.0);

    CHECK_THROWS_AS(experiment2_potential(build_grid(3, 2.5, 8), 0.9), std::invalid_argument);
    CHECK_THROWS_AS(experiment2_potential(g, 0.7), std::invalid_argument);
}

TEST_CASE("the closed-form case satisfies its defining operator identity") {
    LameParams p{0.7, 1.3, 2.0};
    GridSpec g = build_grid(2, 2.5, 16);
    ManufacturedCase mc = manufactured_case(p, g);

    auto scalar_bump = [](double x, double y) {
        double r2 = x * x + y * y;
        if (r2 >= 1.0) return 0.0;
        double w = 1.0 - r2;
        return w * w * w * w;
    };

    const double h = 5e-4;
    const double mu = p.mu, lm = p.lambda + p.mu, w2 = p.omega * p.omega;
    for (Vec x : {Vec{0.3, -0.2, 0.0}, Vec{0.5, 0.1, 0.0}, Vec{-0.1, 0.7, 0.0}}) {
        CVec v = mc.v_exact(x);
        double lap = fd2(scalar_bump, x[0], x[1], 0, 0, h) +
                     fd2(scalar_bump, x[0], x[1], 1, 1, h);
        // Both displacement components equal the same scalar, so
        // (grad div g)_a = d_a d_0 g + d_a d_1 g.
        for (int a = 0; a < 2; ++a) {
            double gdiv = fd2(scalar_bump, x[0], x[1], a, 0, h) +
                          fd2(scalar_bump, x[0], x[1], a, 1, h);
            double want = mu * lap + lm * gdiv + w2 * scalar_bump(x[0], x[1]);
            CHECK(std::abs(v[std::size_t(a)] - want) <= 1e-4);
        }
        // The source is the defect of the field against the bump.
        CVec f = mc.f(x), b = mc.bump(x);
        CHECK(f[0] == v[0] - b[0]);
        CHECK(f[1] == v[1] - b[1]);
    }

    // Reference value at the center for the unit-parameter material.
    ManufacturedCase unit = manufactured_case(LameParams{1.0, 1.0, 1.0}, g);
    CVec v0 = unit.v_exact(Vec{0.0, 0.0, 0.0});
    CHECK(v0[0] == cplx(-31.0, 0.0));
    CHECK(v0[1] == cplx(-31.0, 0.0));

    // Identity potential on the unit ball.
    CHECK(mc.Q.rho == 1.0);
    const double* qb = mc.Q.block(g.index_of({1, 1, 0})); // |x| ~ 0.44
    CHECK(qb[0] == 1.0);
    CHECK(qb[3] == 1.0);
    CHECK(qb[1] == 0.0);

    CHECK_THROWS_AS(manufactured_case(p, build_grid(3, 2.5, 8)), std::invalid_argument);
    CHECK_THROWS_AS(manufactured_case(p, build_grid(2, 2.0, 16)), std::invalid_argument);
}

TEST_CASE("applying a potential multiplies node blocks") {
    GridSpec g = build_grid(2, 2.5, 8);
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Potential Q = make_potential(g, 1.1, [&](const Vec&) {
        std::array<double, 9> b{};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) b[std::size_t(r) * 3 + std::size_t(c)] = u(gen);
        return b;
    });
    NodalVectorField w(g);
    for (cplx& z : w.v) z = cplx(u(gen), u(gen));

    NodalVectorField out = apply_potential(Q, w);
    for (std::size_t node = 0; node < g.node_count(); ++node) {
        const double* b = Q.block(node);
        for (int r = 0; r < 2; ++r) {
            cplx want = b[r * 2 + 0] * w.at(node, 0) + b[r * 2 + 1] * w.at(node, 1);
            CHECK(std::abs(out.at(node, r) - want) <= 1e-15);
        }
    }

    NodalVectorField wrong(build_grid(2, 2.5, 16));
    CHECK_THROWS_AS(apply_potential(Q, wrong), std::invalid_argument);
}

TEST_CASE("potential files round trip bit-exactly and reject tampering") {
    fs::path dir = fresh_dir("io");
    GridSpec g = build_grid(2, 2.5, 32);
    Potential Q = experiment2_potential(g, 0.9);
    std::string base = (dir / "contrast").string();
    save_potential(Q, base);

    Potential L = load_potential(base);
    CHECK(L.grid == Q.grid);
    CHECK(L.rho == Q.rho);
    CHECK(L.support == Q.support);
    REQUIRE(L.q.size() == Q.q.size());
    CHECK(std::memcmp(L.q.data(), Q.q.data(), Q.q.size() * sizeof(double)) == 0);

    SUBCASE("missing files raise io errors") {
        CHECK_THROWS_AS(load_potential((dir / "absent").string()), io_error);
    }
    SUBCASE("a trailing byte is rejected") {
        std::ofstream f(base + ".qbin", std::ios::binary | std::ios::app);
        f.put('x');
        f.close();
        CHECK_THROWS_AS(load_potential(base), invalid_format);
    }
    SUBCASE("a truncated payload is rejected") {
        fs::resize_file(base + ".qbin", fs::file_size(base + ".qbin") - 8);
        CHECK_THROWS_AS(load_potential(base), invalid_format);
    }
    SUBCASE("unknown metadata keys are rejected") {
        std::ofstream f(base + ".qmeta", std::ios::app);
        f << "extra 1\n";
        f.close();
        CHECK_THROWS_AS(load_potential(base), invalid_format);
    }
    SUBCASE("non-finite entries are rejected") {
        std::fstream f(base + ".qbin", std::ios::binary | std::ios::in | std::ios::out);
        double bad = std::nan("");
        f.write(reinterpret_cast<const char*>(&bad), sizeof(bad));
        f.close();
        CHECK_THROWS_AS(load_potential(base), invalid_format);
    }
    SUBCASE("support violations are rejected") {
        // Shrinking the declared radius leaves contrast outside the ball.
        std::ofstream f(base + ".qmeta");
        f << "d 2\nN 32\nR 2.5\nrho 0.5\n";
        f.close();
        CHECK_THROWS_AS(load_potential(base), invalid_format);
    }
    fs::remove_all(dir);
}

} // TEST_SUITE
