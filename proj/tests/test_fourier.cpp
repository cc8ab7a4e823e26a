#include "doctest.h"

#include "slabqd/fourier.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace slabqd;

namespace {

constexpr double pi = std::numbers::pi;

FourierConfig config(double c, double optical, Closure closure, int order = 10,
                     std::size_t cells = 100, BoundaryModel model = BoundaryModel::periodic) {
    return make_fourier_config(c, 1.0, optical, cells, gauss_legendre(order), closure, model);
}

} // namespace

TEST_CASE("angle coefficients") {
    for (Closure cl : {Closure::dd, Closure::sc}) {
        const FourierConfig cfg = config(0.8, 0.7, cl);
        SUBCASE("long wavelength limit") {
            const auto coef = angle_coefficients(1e-12, cfg);
            for (const auto& a : coef.a) {
                CHECK(std::abs(a - complex(0.4, 0.0)) < 1e-12);
            }
        }
        SUBCASE("paired angles are complex conjugates") {
            const auto coef = angle_coefficients(1.3, cfg);
            for (std::size_t n = 0; n < cfg.quad.size(); ++n) {
                CHECK(std::abs(coef.a[cfg.quad.mirror(n)] - std::conj(coef.a[n])) < 1e-15);
                CHECK(std::abs(coef.b[cfg.quad.mirror(n)] - std::conj(coef.b[n])) < 1e-15);
            }
        }
    }
    SUBCASE("DD odd-even mode is annihilated") {
        const FourierConfig cfg = config(0.8, 0.7, Closure::dd);
        const auto coef = angle_coefficients(pi / 0.7, cfg);
        for (const auto& a : coef.a) {
            CHECK(std::abs(a) < 1e-15);
        }
        CHECK(std::isfinite(std::abs(coef.b[0])));
    }
    SUBCASE("SC stays finite at the tangent pole") {
        const FourierConfig cfg = config(0.8, 0.7, Closure::sc);
        const auto coef = angle_coefficients(pi / 0.7, cfg);
        for (std::size_t n = 0; n < coef.a.size(); ++n) {
            CHECK(std::isfinite(std::abs(coef.a[n])));
            CHECK(std::abs(coef.a[n]) > 0.0);
        }
    }
}

TEST_CASE("source-iteration symbol") {
    const FourierConfig cfg = config(0.9, 1.0, Closure::dd);
    CHECK(std::abs(rho_si(1e-12, cfg) - complex(0.9, 0.0)) < 1e-12);

    // S2 DD, Lambda = 2 tan(pi/4) = 2: c / (1 + mu^2 Lambda^2) = 0.9 / (1 + 4/3).
    const FourierConfig s2 = config(0.9, 1.0, Closure::dd, 2);
    const complex v = rho_si(pi / 2.0, s2);
    CHECK(std::abs(v.real() - 0.9 / (1.0 + 4.0 / 3.0)) < 1e-14);
    CHECK(std::abs(v.real() - 0.3857143) < 1e-7);
    CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("all symbols are real and bounded") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> cdist(0.0, 1.0);
    std::uniform_real_distribution<double> logt(std::log(0.01), std::log(20.0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 400; ++trial) {
        const double c = cdist(rng);
        const double t = std::exp(logt(rng));
        const Closure cl = trial % 2 == 0 ? Closure::dd : Closure::sc;
        const FourierConfig cfg = config(c, t, cl, 8, 20);
        for (double omega : frequency_grid(cfg)) {
            const SymbolResult r = evaluate_symbols(omega, cfg);
            CHECK(std::abs(r.si.imag()) < 1e-12);
            if (!r.pole) {
                CHECK(std::abs(r.cqd.imag()) < 1e-12);
                CHECK(std::abs(r.lpcqd.imag()) < 1e-12);
            }
            CHECK(std::abs(r.si) <= c + 1e-14);
        }
        const double omega = 2.0 * pi / t * unit(rng);
        CHECK(std::abs(rho_si(omega, cfg)) <= c + 1e-14);
    }
}

TEST_CASE("DD closed form of the accelerated symbol") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> cdist(0.0, 1.0);
    std::uniform_real_distribution<double> logt(std::log(0.01), std::log(20.0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double t = std::exp(logt(rng));
        const FourierConfig cfg = config(cdist(rng), t, Closure::dd);
        const double omega = 2.0 * pi / t * unit(rng);
        if (cqd_has_pole(omega, cfg)) {
            continue;
        }
        const complex a = rho_cqd(omega, cfg);
        const complex b = rho_cqd_dd(omega, cfg);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }

    const FourierConfig cfg = config(0.7, 2.0, Closure::dd);
    CHECK(std::abs(rho_cqd(pi / 2.0, cfg) - rho_cqd_dd(pi / 2.0, cfg)) < 1e-12);
    CHECK(std::abs(rho_cqd_dd(1e-9, cfg)) < 1e-8);
    CHECK(std::abs(rho_cqd(1e-9, cfg)) < 1e-8);
    CHECK_THROWS_AS(rho_cqd_dd(1.0, config(0.7, 2.0, Closure::sc)), std::invalid_argument);

    const FourierConfig none = config(0.0, 2.0, Closure::dd);
    CHECK(std::abs(rho_si(0.9, none)) == 0.0);
    CHECK(std::abs(rho_cqd_dd(0.9, none)) == 0.0);
    CHECK(std::abs(rho_cqd(0.9, none)) == 0.0);
}

TEST_CASE("pole of the low-order denominator without absorption") {
    const FourierConfig cfg = config(1.0, 0.5, Closure::dd);
    const double omega = 2.0 * pi / 0.5;
    CHECK(cqd_has_pole(omega, cfg));
    CHECK(std::isnan(rho_cqd(omega, cfg).real()));
    CHECK_FALSE(cqd_has_pole(omega, config(0.99, 0.5, Closure::dd)));
    const SpectralRadius sr = spectral_radius(cfg, SchemeKind::cqd);
    CHECK(sr.poles_skipped == 1);
    CHECK(std::isfinite(sr.rho));
}

TEST_CASE("prolongation symbol interpolates between SI and CQD") {
    for (Closure cl : {Closure::dd, Closure::sc}) {
        const FourierConfig cfg = config(0.95, 1.7, cl);
        // sigma_t h omega = pi: weight (1 + cos) / 2 vanishes
        const double odd = pi / 1.7;
        CHECK(std::abs(rho_lpcqd(odd, cfg) - rho_si(odd, cfg)) < 1e-12);
        const double tiny = 1e-9;
        CHECK(std::abs(rho_lpcqd(tiny, cfg) - rho_cqd(tiny, cfg)) < 1e-12);
        for (double omega : frequency_grid(cfg)) {
            const double w = 0.5 * (1.0 + std::cos(1.7 * omega));
            const complex expected = rho_si(omega, cfg) + w * (rho_cqd(omega, cfg) - rho_si(omega, cfg));
            CHECK(std::abs(rho_lpcqd(omega, cfg) - expected) < 1e-13);
            const double lo = std::min(rho_si(omega, cfg).real(), rho_cqd(omega, cfg).real());
            const double hi = std::max(rho_si(omega, cfg).real(), rho_cqd(omega, cfg).real());
            CHECK(rho_lpcqd(omega, cfg).real() >= lo - 1e-14);
            CHECK(rho_lpcqd(omega, cfg).real() <= hi + 1e-14);
        }
    }
}

TEST_CASE("frequency grids") {
    const FourierConfig periodic = config(0.5, 0.25, Closure::dd, 10, 40);
    const auto g = frequency_grid(periodic);
    REQUIRE(g.size() == 40);
    CHECK(std::abs(g.front() - 2.0 * pi / 10.0) < 1e-15);
    CHECK(std::abs(g.back() * 0.25 - 2.0 * pi) < 1e-13);

    const FourierConfig refl = config(0.5, 0.25, Closure::dd, 10, 40, BoundaryModel::reflective);
    const auto r = frequency_grid(refl);
    REQUIRE(r.size() == 40);
    for (std::size_t s = 0; s < 40; ++s) {
        CHECK(r[s] == 0.5 * g[s]);
    }

    const auto dense = dense_frequency_grid(periodic, 1000);
    CHECK(dense.size() == 1000);
    CHECK(dense.front() > 0.0);
    CHECK(std::abs(dense.back() - 2.0 * pi / 0.25) < 1e-12);

    FourierConfig bad = periodic;
    bad.length = 10.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(config(1.2, 1.0, Closure::dd), std::invalid_argument);
}

TEST_CASE("spectral radii on the slab frequency set") {
    const FourierConfig si = config(0.9, 0.1, Closure::dd);
    const SpectralRadius r = spectral_radius(si, SchemeKind::si);
    CHECK(std::abs(r.rho - 0.9) < 1e-12);

    for (double t : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        CAPTURE(t);
        CHECK(spectral_radius(config(0.99, t, Closure::dd), SchemeKind::lpcqd).rho < 1.0);
    }
    bool crossed = false;
    for (double t : {1.5, 2.0, 3.0, 5.0, 10.0}) {
        crossed = crossed || spectral_radius(config(0.99, t, Closure::dd), SchemeKind::cqd).rho > 1.0;
    }
    CHECK(crossed);
    CHECK(spectral_radius(config(0.99, 1.0, Closure::dd), SchemeKind::cqd).rho < 1.0);
}

TEST_CASE("fine-mesh accelerated limit from a dense scan") {
    // Frozen from an independent numpy evaluation of the DD closed form
    // (S10, c = 1, sigma_t h = 0.01) on 2e6 frequencies.
    constexpr double oracle = 0.22410270625647982;
    const FourierConfig cfg = config(1.0, 0.01, Closure::dd);
    const SpectralRadius r = spectral_radius(cfg, SchemeKind::cqd, dense_frequency_grid(cfg, 200000));
    CHECK(std::abs(r.rho - oracle) < 1e-6);
    CHECK(std::abs(r.rho - 0.2247) < 1e-3);
}

TEST_CASE("boundary model parsing") {
    CHECK(parse_boundary_model("reflective") == BoundaryModel::reflective);
    CHECK(to_string(BoundaryModel::periodic) == "periodic");
    CHECK_THROWS_AS(parse_boundary_model("open"), std::invalid_argument);
}
