#pragma once

#include "slabqd/problem.hpp"
#include "slabqd/quadrature.hpp"
#include "slabqd/sweep.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace slabqd {

enum class SchemeKind { si, cqd, lpcqd };

std::string_view to_string(SchemeKind scheme);
SchemeKind parse_scheme(std::string_view text);

struct IterationOptions {
    double tolerance = 1e-10;
    int max_iterations = 10000;
    double lp_boundary_alpha = 0.5;
    int divergence_window = 10;

    // Throws std::invalid_argument when out of range.
    void validate() const;
};

struct IterationRecord {
    double diff_norm = 0.0;
    std::optional<double> rho_estimate; // diff_norm / previous diff_norm
    double min_flux = 0.0;
};

using IterationHistory = std::vector<IterationRecord>;

enum class Status { converged, max_iterations, diverged, negative_flux_abort };

std::string_view to_string(Status status);

struct Solution {
    std::vector<double> phi;
    Status status = Status::max_iterations;
    IterationHistory history;
    int iterations_used = 0;
};

/// Width-weighted RMS of `v` over the mesh.
double weighted_norm(std::span<const double> v, const Mesh& mesh);

/// Width-weighted RMS of the successive difference phi_new - phi_old.
double diff_norm(std::span<const double> phi_new, std::span<const double> phi_old,
                 const Mesh& mesh);

/// Asymptotic convergence rate from successive difference ratios: the median
/// of the last five ratios, ignoring the first three iterations. Empty when
/// fewer than five iterations were recorded.
std::optional<double> estimate_spectral_radius(const IterationHistory& history);

/// Linear prolongation of the low-order correction. Each cell receives a
/// width-weighted average of its own and its neighbours' corrections
/// phi_lo - phi_ho. Reflective boundary cells mirror their own correction into
/// the ghost cell; vacuum boundary cells use `alpha` in place of the missing
/// neighbour's share.
std::vector<double> lp_update(std::span<const double> phi_ho, std::span<const double> phi_lo,
                              const Mesh& mesh, double alpha);

/// Outer iteration for the chosen scheme. The initial guess is zero unless
/// `initial_flux` is given.
Solution solve(SchemeKind scheme, const Mesh& mesh, const QuadratureSet& quad, Closure closure,
               const IterationOptions& opts, std::span<const double> initial_flux = {});

/// Homogeneous convergence-study slab: `cells` cells of width sigma_t_h
/// (sigma_t = 1), sigma_s = c, q = 1, reflective left, vacuum right.
Mesh convergence_study_mesh(double c, double sigma_t_h, std::size_t cells);

struct RhoMeasurement {
    std::optional<double> rho;
    Status status = Status::max_iterations;
    int iterations = 0;
};

RhoMeasurement measure_rho(SchemeKind scheme, double c, double sigma_t_h, std::size_t cells,
                           Closure closure, const QuadratureSet& quad,
                           const IterationOptions& opts);

} // namespace slabqd
