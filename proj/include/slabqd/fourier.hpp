#pragma once

#include "slabqd/iteration.hpp"
#include "slabqd/quadrature.hpp"
#include "slabqd/sweep.hpp"

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace slabqd {

using complex = std::complex<double>;

enum class BoundaryModel { periodic, reflective };

std::string_view to_string(BoundaryModel model);
BoundaryModel parse_boundary_model(std::string_view text);

/// Homogeneous infinite-medium model problem on a uniform mesh.
struct FourierConfig {
    double c = 0.0;
    double sigma_t = 1.0;
    double h = 1.0;
    QuadratureSet quad = gauss_legendre(10);
    Closure closure = Closure::dd;
    double length = 1.0;
    BoundaryModel boundary_model = BoundaryModel::periodic;

    // length / h, rounded; validate() checks that it is an integer.
    std::size_t cells() const;
    double sigma_a() const { return sigma_t * (1.0 - c); }

    void validate() const;
};

// Convenience: L = cells * h.
FourierConfig make_fourier_config(double c, double sigma_t, double h, std::size_t cells,
                                  const QuadratureSet& quad, Closure closure,
                                  BoundaryModel model);

struct AngleCoefficients {
    std::vector<complex> a; // cell-average amplitude per angle
    std::vector<complex> b; // edge amplitude per angle
};

/// Per-angle amplitudes of one sweep applied to a unit Fourier mode. Written
/// in a form that stays finite where tan(sigma_t h omega / 2) has a pole.
AngleCoefficients angle_coefficients(double omega, const FourierConfig& cfg);

complex rho_si(double omega, const FourierConfig& cfg);

/// Quasidiffusion-accelerated symbol. Returns NaN when the low-order
/// denominator vanishes (sigma_a = 0 and cos(sigma_t h omega) = 1); see
/// cqd_has_pole().
complex rho_cqd(double omega, const FourierConfig& cfg);

/// Closed-form DD specialisation of rho_cqd. Throws for non-DD closures.
complex rho_cqd_dd(double omega, const FourierConfig& cfg);

complex rho_lpcqd(double omega, const FourierConfig& cfg);

bool cqd_has_pole(double omega, const FourierConfig& cfg);

complex rho(SchemeKind scheme, double omega, const FourierConfig& cfg);

struct SymbolResult {
    double omega = 0.0;
    complex si;
    complex cqd;
    complex lpcqd;
    AngleCoefficients coefficients;
    bool pole = false;
};

SymbolResult evaluate_symbols(double omega, const FourierConfig& cfg);

/// omega_s = 2 pi s / (sigma_t L), s = 1..J; halved for the reflective model.
std::vector<double> frequency_grid(const FourierConfig& cfg);

/// `points` uniform frequencies in (0, 2 pi / (sigma_t h)].
std::vector<double> dense_frequency_grid(const FourierConfig& cfg, std::size_t points);

struct SpectralRadius {
    double rho = 0.0;
    double omega = 0.0;
    std::size_t poles_skipped = 0;
};

SpectralRadius spectral_radius(const FourierConfig& cfg, SchemeKind scheme);
SpectralRadius spectral_radius(const FourierConfig& cfg, SchemeKind scheme,
                               const std::vector<double>& omegas);

} // namespace slabqd
