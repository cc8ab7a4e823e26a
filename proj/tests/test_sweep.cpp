#include "doctest.h"

#include "slabqd/sweep.hpp"

#include "test_support.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

using namespace slabqd;

namespace {

const BoundarySpec vac_vac{BoundaryKind::vacuum, BoundaryKind::vacuum};
const BoundarySpec refl_refl{BoundaryKind::reflective, BoundaryKind::reflective};
const BoundarySpec refl_vac{BoundaryKind::reflective, BoundaryKind::vacuum};

std::vector<double> random_flux(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(0.0, 3.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = d(rng);
    }
    return v;
}

} // namespace

TEST_CASE("sc_alpha against 50-digit reference values") {
    // coth(tau/2) - 2/tau evaluated with mpmath at 50 digits.
    const std::pair<double, double> table[] = {
        {1e-8, 1.6666666666666666639e-9},  {1e-6, 1.6666666666666388889e-7},
        {1e-4, 1.6666666663888888890e-5},   {1.5e-4, 2.4999999990625000005e-5},
        {0.01, 1.666663888895502629e-3},   {0.3, 0.049925160353498537945},
        {1.0, 0.16395341373865284877},     {2.0, 0.31303528549933130364},
        {5.0, 0.61356730981260846219},     {20.0, 0.90000000412230725337},
        {50.0, 0.96},
    };
    for (const auto& [tau, expected] : table) {
        CAPTURE(tau);
        CHECK(std::abs(sc_alpha(tau) - expected) <= 1e-13 * expected);
        CHECK(sc_alpha(-tau) == -sc_alpha(tau));
    }
}

TEST_CASE("sc_alpha limits and errors") {
    CHECK(std::abs(sc_alpha(1e-6) - 1.6667e-7) < 1e-11);
    CHECK(std::abs(sc_alpha(1e6) - 1.0) < 1e-5);
    CHECK(sc_alpha(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(sc_alpha(2.0) == -sc_alpha(-2.0));
    CHECK_THROWS_AS(sc_alpha(0.0), std::invalid_argument);
    CHECK(closure_alpha(Closure::dd, 3.0, 0.5) == 0.0);
    CHECK(closure_alpha(Closure::sc, 0.0, 0.5) == 0.0);
    CHECK(closure_alpha(Closure::sc, 1.0, -0.5) == sc_alpha(-2.0));
}

TEST_CASE("sc_alpha is continuous across its evaluation branches") {
    for (double edge : {1e-4, 2.0}) {
        const double below = sc_alpha(std::nextafter(edge, 0.0));
        const double above = sc_alpha(edge);
        CHECK(std::abs(above - below) <= 1e-14 * above);
    }
}

TEST_CASE("zero source and vacuum inflow give zero flux") {
    const auto q = gauss_legendre(8);
    const Mesh mesh = testing::homogeneous_mesh(1.0, 0.0, 0.0, 6, 0.5, vac_vac);
    const std::vector<double> phi(6, 0.0);
    for (Closure c : {Closure::dd, Closure::sc}) {
        const auto sol = transport_sweep(mesh, q, c, phi);
        for (double v : sol.cell_avg) {
            CHECK(v == 0.0);
        }
        for (double v : sol.edge) {
            CHECK(v == 0.0);
        }
    }
}

TEST_CASE("flat reflective slab reproduces q / (2 sigma_t)") {
    const auto q = gauss_legendre(10);
    for (double h : {0.1, 1.0, 7.0}) {
        const Mesh mesh = testing::homogeneous_mesh(1.0, 0.0, 1.0, 5, h, refl_refl);
        const std::vector<double> phi(5, 0.0);
        for (Closure c : {Closure::dd, Closure::sc}) {
            const auto sol = transport_sweep(mesh, q, c, phi);
            for (double v : sol.cell_avg) {
                CHECK(std::abs(v - 0.5) < 1e-14);
            }
            const Moments m = compute_moments(sol, q);
            for (double p : m.phi) {
                CHECK(std::abs(p - 1.0) < 1e-13);
            }
        }
    }
}

TEST_CASE("one-cell DD S2 hand solution") {
    const auto q = gauss_legendre(2);
    const Mesh mesh = testing::homogeneous_mesh(1.0, 0.0, 1.0, 1, 1.0, vac_vac);
    const std::vector<double> phi(1, 0.0);
    const auto sol = transport_sweep(mesh, q, Closure::dd, phi);

    // mu/h (out - 0) + (out/2) = 1/2  =>  out = 0.5 / (mu + 0.5).
    const double mu = 1.0 / std::sqrt(3.0);
    const double out = 0.5 / (mu + 0.5);
    CHECK(std::abs(out - 0.464102) < 1e-6);
    CHECK(std::abs(sol.edge_value(1, 1) - out) < 1e-12);
    CHECK(std::abs(sol.edge_value(0, 0) - out) < 1e-12);
    CHECK(sol.edge_value(1, 0) == 0.0);
    CHECK(sol.edge_value(0, 1) == 0.0);
    CHECK(std::abs(sol.cell(0, 0) - 0.5 * out) < 1e-12);
    CHECK(std::abs(sol.cell(1, 0) - 0.5 * out) < 1e-12);

    const Moments m = compute_moments(sol, q);
    CHECK(std::abs(m.phi[0] - out) < 1e-12);
    CHECK(std::abs(m.phi2[0] - out / 3.0) < 1e-12);
    CHECK(std::abs(m.phi2[0] - 0.154700) < 1e-6);
    CHECK(std::abs(m.current[1] - mu * out) < 1e-12);
    CHECK(std::abs(m.current[0] + mu * out) < 1e-12);
}

TEST_CASE("moments of simple angular fluxes") {
    const auto q = gauss_legendre(10);
    AngularSolution sol;
    sol.angles = q.size();
    sol.cells = 3;
    sol.cell_avg.assign(sol.angles * 3, 0.5);
    sol.edge.assign(sol.angles * 4, 0.5);
    const Moments m = compute_moments(sol, q);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::abs(m.phi[j] - 1.0) < 1e-13);
        CHECK(std::abs(m.phi2[j] - 1.0 / 3.0) < 1e-13);
    }
    for (double jj : m.current) {
        CHECK(std::abs(jj) < 1e-15);
    }

    const QuadratureSet two(2, {-0.5, 0.5}, {1.0, 1.0});
    AngularSolution single;
    single.angles = 2;
    single.cells = 1;
    single.cell_avg.assign(2, 0.0);
    single.edge = {0.0, 0.0, 0.0, 2.0}; // only direction 1, right edge
    CHECK(compute_moments(single, two).current[1] == 1.0);
}

TEST_CASE("cell balance and closure identity hold after every sweep") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Mesh mesh = testing::random_problem(rng);
        const auto q = gauss_legendre(trial % 2 == 0 ? 10 : 4);
        const Closure closure = trial % 3 == 0 ? Closure::sc : Closure::dd;
        const auto phi_in = random_flux(rng, mesh.cells());
        const auto sol = transport_sweep(mesh, q, closure, phi_in);
        const Moments m = compute_moments(sol, q);

        for (std::size_t j = 0; j < mesh.cells(); ++j) {
            const double lhs = (m.current[j + 1] - m.current[j]) / mesh.width(j) +
                               mesh.sigma_t(j) * m.phi[j];
            const double rhs = mesh.sigma_s(j) * phi_in[j] + mesh.source(j);
            CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(std::abs(rhs), 1.0));

            for (std::size_t n = 0; n < q.size(); ++n) {
                const double a = closure_alpha(closure, mesh.sigma_t(j) * mesh.width(j), q.mu(n));
                const double closed = 0.5 * (1.0 - a) * sol.edge_value(n, j) +
                                      0.5 * (1.0 + a) * sol.edge_value(n, j + 1);
                CHECK(std::abs(sol.cell(n, j) - closed) <=
                      1e-12 * std::max(std::abs(closed), 1e-12));
            }
        }
        for (std::size_t n = 0; n < q.size(); ++n) {
            if (mesh.boundary().left == BoundaryKind::vacuum && q.mu(n) > 0.0) {
                CHECK(sol.edge_value(n, 0) == 0.0);
            }
            if (mesh.boundary().right == BoundaryKind::vacuum && q.mu(n) < 0.0) {
                CHECK(sol.edge_value(n, mesh.cells()) == 0.0);
            }
        }
    }
}

TEST_CASE("reflective edge current vanishes within one sweep") {
    std::mt19937_64 rng(5);
    const auto q = gauss_legendre(10);
    for (BoundarySpec b : {refl_vac, BoundarySpec{BoundaryKind::vacuum, BoundaryKind::reflective}}) {
        const Mesh mesh = testing::homogeneous_mesh(1.0, 0.7, 1.0, 12, 0.8, b);
        const auto phi = random_flux(rng, mesh.cells());
        for (Closure c : {Closure::dd, Closure::sc}) {
            const Moments m = compute_moments(transport_sweep(mesh, q, c, phi), q);
            const std::size_t e = b.left == BoundaryKind::reflective ? 0 : mesh.cells();
            CHECK(std::abs(m.current[e]) < 1e-13);
        }
    }
}

TEST_CASE("symmetric problems give mirror-symmetric scalar flux") {
    const auto q = gauss_legendre(10);
    const std::vector<double> src{1.0, 2.0, 0.5, 3.0, 0.5, 2.0, 1.0};

    SUBCASE("vacuum on both sides") {
        const Mesh mesh = testing::homogeneous_mesh(1.0, 0.5, 1.0, 7, 0.7, vac_vac);
        for (Closure c : {Closure::dd, Closure::sc}) {
            const Moments m = compute_moments(transport_sweep(mesh, q, c, src), q);
            for (std::size_t j = 0; j < 7; ++j) {
                CHECK(std::abs(m.phi[j] - m.phi[6 - j]) <= 1e-12 * m.phi[j]);
            }
        }
    }
    SUBCASE("reflective on both sides, lagged inflow settled") {
        const Mesh mesh = testing::homogeneous_mesh(1.0, 0.5, 1.0, 7, 0.7, refl_refl);
        for (Closure c : {Closure::dd, Closure::sc}) {
            std::vector<double> inflow = initial_left_inflow(mesh, q);
            AngularSolution sol;
            for (int it = 0; it < 200; ++it) {
                sol = transport_sweep(mesh, q, c, src, inflow);
                inflow = sol.left_reflected;
            }
            const Moments m = compute_moments(sol, q);
            for (std::size_t j = 0; j < 7; ++j) {
                CHECK(std::abs(m.phi[j] - m.phi[6 - j]) <= 1e-12 * m.phi[j]);
            }
        }
    }
}

TEST_CASE("DD reports negative cell averages without fixing them") {
    const auto q = gauss_legendre(4);
    const MaterialRegion regions[] = {{10.0, 1.0, 0.0, 1.0}, {40.0, 1.0, 0.0, 0.0}};
    const Mesh mesh = build_mesh(regions, vac_vac, 10.0);
    const std::vector<double> phi(mesh.cells(), 0.0);
    const auto dd = transport_sweep(mesh, q, Closure::dd, phi);
    CHECK(dd.negative_flux);
    const auto sc = transport_sweep(mesh, q, Closure::sc, phi);
    CHECK_FALSE(sc.negative_flux);
}

TEST_CASE("sweep input validation") {
    const auto q = gauss_legendre(4);
    const Mesh mesh = testing::homogeneous_mesh(1.0, 0.5, 1.0, 4, 1.0, refl_refl);
    const std::vector<double> wrong(3, 0.0);
    CHECK_THROWS_AS(transport_sweep(mesh, q, Closure::dd, wrong), std::invalid_argument);
    const std::vector<double> phi(4, 0.0);
    const std::vector<double> bad_inflow(2, 0.0);
    CHECK_THROWS_AS(transport_sweep(mesh, q, Closure::dd, phi, bad_inflow), std::invalid_argument);
    CHECK(parse_closure("sc") == Closure::sc);
    CHECK_THROWS_AS(parse_closure("ld"), std::invalid_argument);
}
