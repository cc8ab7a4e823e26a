#pragma once

#include "slabqd/problem.hpp"
#include "slabqd/quadrature.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace slabqd {

/// Spatial closure relating the cell-average angular flux to its edge values:
///   psi_cell = (1 - alpha)/2 psi_left + (1 + alpha)/2 psi_right.
enum class Closure { dd, sc };

std::string_view to_string(Closure closure);
Closure parse_closure(std::string_view text);

/// Step-characteristic weight for signed optical thickness tau = sigma_t h / mu.
/// Odd in tau; throws std::invalid_argument for tau == 0.
double sc_alpha(double tau);

/// Closure weight alpha for one cell and direction. Zero for DD and for
/// void cells.
double closure_alpha(Closure closure, double sigma_t_h, double mu);

/// Angular flux from one sweep. Storage is angle-major.
struct AngularSolution {
    std::size_t angles = 0;
    std::size_t cells = 0;
    std::vector<double> cell_avg; // angles x cells
    std::vector<double> edge;     // angles x (cells + 1)

    // Outgoing flux at the left boundary, indexed by the incoming direction it
    // feeds under reflection. Used to lag the left boundary when both sides
    // reflect; zero for directions that are not incoming there.
    std::vector<double> left_reflected;

    // Set when any cell-average value came out negative (DD can do this).
    bool negative_flux = false;

    double cell(std::size_t n, std::size_t j) const { return cell_avg[n * cells + j]; }
    double edge_value(std::size_t n, std::size_t e) const { return edge[n * (cells + 1) + e]; }
};

/// Cell-average and edge angular moments.
struct Moments {
    std::vector<double> phi;     // sum_n w_n psi_nj
    std::vector<double> phi2;    // sum_n w_n mu_n^2 psi_nj
    std::vector<double> current; // sum_n w_n mu_n psi_n,e at every edge
};

/// Initial lagged left-boundary inflow for reflective-reflective problems:
/// the isotropic estimate q/(2 sigma_t) of the leftmost cell in every
/// incoming direction.
std::vector<double> initial_left_inflow(const Mesh& mesh, const QuadratureSet& quad);

/// One upwind sweep of every direction with isotropic source
/// (sigma_s phi + q)/2. `lagged_left_inflow` is only read when both
/// boundaries are reflective; if empty, initial_left_inflow() is used.
AngularSolution transport_sweep(const Mesh& mesh, const QuadratureSet& quad, Closure closure,
                                std::span<const double> scalar_flux,
                                std::span<const double> lagged_left_inflow = {});

Moments compute_moments(const AngularSolution& sol, const QuadratureSet& quad);

} // namespace slabqd
