#include "slabqd/fourier.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace slabqd {

namespace {

using namespace std::complex_literals;

constexpr double pole_sine = 1e-14;

struct Phase {
    double optical; // sigma_t h
    double cos_half;
    double sin_half;
};

Phase phase(double omega, const FourierConfig& cfg) {
    const double optical = cfg.sigma_t * cfg.h;
    const double half = 0.5 * optical * omega;
    return {optical, std::cos(half), std::sin(half)};
}

// (2 / (3 sigma_t)) (1 - cos(sigma_t h omega)) + h^2 sigma_a, with the cosine
// difference written as 2 sin^2 to keep it accurate at small omega.
double low_order_denominator(const Phase& p, const FourierConfig& cfg) {
    return 2.0 / (3.0 * cfg.sigma_t) * (2.0 * p.sin_half * p.sin_half) +
           cfg.h * cfg.h * cfg.sigma_a();
}

bool is_pole(const Phase& p, const FourierConfig& cfg) {
    return cfg.sigma_a() == 0.0 && std::abs(p.sin_half) <= pole_sine;
}

} // namespace

std::string_view to_string(BoundaryModel model) {
    return model == BoundaryModel::periodic ? "periodic" : "reflective";
}

BoundaryModel parse_boundary_model(std::string_view text) {
    if (text == "periodic") {
        return BoundaryModel::periodic;
    }
    if (text == "reflective") {
        return BoundaryModel::reflective;
    }
    throw std::invalid_argument("unknown boundary model '" + std::string(text) +
                                "' (expected periodic or reflective)");
}

std::size_t FourierConfig::cells() const {
    return static_cast<std::size_t>(std::llround(length / h));
}

void FourierConfig::validate() const {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::invalid_argument("scattering ratio c must lie in [0, 1]");
    }
    if (!(sigma_t > 0.0 && std::isfinite(sigma_t))) {
        throw std::invalid_argument("sigma_t must be positive");
    }
    if (!(h > 0.0 && std::isfinite(h))) {
        throw std::invalid_argument("cell width h must be positive");
    }
    const double ratio = length / h;
    if (!(ratio >= 0.5) || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
        throw std::invalid_argument("slab length must be a positive integer multiple of h");
    }
}

FourierConfig make_fourier_config(double c, double sigma_t, double h, std::size_t cells,
                                  const QuadratureSet& quad, Closure closure,
                                  BoundaryModel model) {
    FourierConfig cfg{c, sigma_t, h, quad, closure, static_cast<double>(cells) * h, model};
    cfg.validate();
    return cfg;
}

AngleCoefficients angle_coefficients(double omega, const FourierConfig& cfg) {
    const Phase p = phase(omega, cfg);
    const std::size_t n_angles = cfg.quad.size();
    AngleCoefficients out;
    out.a.resize(n_angles);
    out.b.resize(n_angles);
    for (std::size_t n = 0; n < n_angles; ++n) {
        const double mu = cfg.quad.mu(n);
        const double alpha = closure_alpha(cfg.closure, p.optical, mu);
        // Cell-average to edge phase factor: cos + i alpha sin.
        const complex shift{p.cos_half, alpha * p.sin_half};
        const complex denom = p.optical * shift + 2.0i * mu * p.sin_half;
        out.b[n] = 0.5 * cfg.c * p.optical / denom;
        out.a[n] = shift * out.b[n];
    }
    return out;
}

complex rho_si(double omega, const FourierConfig& cfg) {
    const AngleCoefficients coef = angle_coefficients(omega, cfg);
    complex sum = 0.0;
    for (std::size_t n = 0; n < coef.a.size(); ++n) {
        sum += coef.a[n] * cfg.quad.weight(n);
    }
    return sum;
}

bool cqd_has_pole(double omega, const FourierConfig& cfg) {
    return is_pole(phase(omega, cfg), cfg);
}

complex rho_cqd(double omega, const FourierConfig& cfg) {
    const Phase p = phase(omega, cfg);
    if (is_pole(p, cfg)) {
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }
    const AngleCoefficients coef = angle_coefficients(omega, cfg);
    complex beta = 0.0;
    complex edge_current = 0.0;
    for (std::size_t n = 0; n < coef.a.size(); ++n) {
        beta += coef.a[n] * cfg.quad.weight(n);
        edge_current += coef.b[n] * cfg.quad.mu(n) * cfg.quad.weight(n);
    }
    const double h2_sa = cfg.h * cfg.h * cfg.sigma_a();
    const complex numer = cfg.h * (2.0i * p.sin_half) * edge_current + h2_sa * beta;
    return beta - numer / low_order_denominator(p, cfg);
}

complex rho_cqd_dd(double omega, const FourierConfig& cfg) {
    if (cfg.closure != Closure::dd) {
        throw std::invalid_argument("closed-form CQD symbol is only valid for DD");
    }
    const Phase p = phase(omega, cfg);
    if (is_pole(p, cfg)) {
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }
    // Lambda tan(theta) mu^2 / (1 + mu^2 Lambda^2), multiplied through by cos^2
    // so that it stays finite at theta = pi/2.
    const double t = p.optical;
    const double c2 = p.cos_half * p.cos_half;
    const double s2 = p.sin_half * p.sin_half;
    double leakage = 0.0;
    for (std::size_t n = 0; n < cfg.quad.size(); ++n) {
        const double mu2 = cfg.quad.mu(n) * cfg.quad.mu(n);
        leakage += cfg.quad.weight(n) * 2.0 * t * s2 * mu2 / (t * t * c2 + 4.0 * mu2 * s2);
    }
    const complex si = rho_si(omega, cfg);
    const double h2_sa = cfg.h * cfg.h * cfg.sigma_a();
    return si - (cfg.h * cfg.c * leakage + h2_sa * si) / low_order_denominator(p, cfg);
}

complex rho_lpcqd(double omega, const FourierConfig& cfg) {
    const Phase p = phase(omega, cfg);
    const complex si = rho_si(omega, cfg);
    // (1 + cos(sigma_t h omega)) / 2 = cos^2(sigma_t h omega / 2)
    const double weight = p.cos_half * p.cos_half;
    return si + weight * (rho_cqd(omega, cfg) - si);
}

complex rho(SchemeKind scheme, double omega, const FourierConfig& cfg) {
    switch (scheme) {
    case SchemeKind::si:
        return rho_si(omega, cfg);
    case SchemeKind::cqd:
        return rho_cqd(omega, cfg);
    case SchemeKind::lpcqd:
        return rho_lpcqd(omega, cfg);
    }
    throw std::invalid_argument("unknown scheme");
}

SymbolResult evaluate_symbols(double omega, const FourierConfig& cfg) {
    SymbolResult r;
    r.omega = omega;
    r.si = rho_si(omega, cfg);
    r.cqd = rho_cqd(omega, cfg);
    r.lpcqd = rho_lpcqd(omega, cfg);
    r.coefficients = angle_coefficients(omega, cfg);
    r.pole = cqd_has_pole(omega, cfg);
    return r;
}

std::vector<double> frequency_grid(const FourierConfig& cfg) {
    cfg.validate();
    const std::size_t cells = cfg.cells();
    const double scale = cfg.boundary_model == BoundaryModel::reflective ? 0.5 : 1.0;
    std::vector<double> omegas(cells);
    for (std::size_t s = 1; s <= cells; ++s) {
        omegas[s - 1] =
            scale * 2.0 * std::numbers::pi * static_cast<double>(s) / (cfg.sigma_t * cfg.length);
    }
    return omegas;
}

std::vector<double> dense_frequency_grid(const FourierConfig& cfg, std::size_t points) {
    if (points == 0) {
        throw std::invalid_argument("dense grid needs at least one point");
    }
    const double top = 2.0 * std::numbers::pi / (cfg.sigma_t * cfg.h);
    std::vector<double> omegas(points);
    for (std::size_t k = 1; k <= points; ++k) {
        omegas[k - 1] = top * static_cast<double>(k) / static_cast<double>(points);
    }
    return omegas;
}

SpectralRadius spectral_radius(const FourierConfig& cfg, SchemeKind scheme) {
    return spectral_radius(cfg, scheme, frequency_grid(cfg));
}

SpectralRadius spectral_radius(const FourierConfig& cfg, SchemeKind scheme,
                               const std::vector<double>& omegas) {
    SpectralRadius best;
    for (double omega : omegas) {
        const double value = std::abs(rho(scheme, omega, cfg));
        if (std::isnan(value)) {
            ++best.poles_skipped;
            continue;
        }
        if (value > best.rho) {
            best.rho = value;
            best.omega = omega;
        }
    }
    return best;
}

} // namespace slabqd
