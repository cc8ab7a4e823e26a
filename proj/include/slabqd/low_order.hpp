#pragma once

#include "slabqd/problem.hpp"
#include "slabqd/sweep.hpp"

#include <optional>
#include <span>
#include <vector>

namespace slabqd {

/// Transport-consistent closure data for the low-order equation.
struct CorrectionFields {
    std::vector<double> eddington;    // per cell
    std::vector<double> dhat_interior; // edges 1..J-1
    std::optional<double> dhat_left;   // only on a vacuum side
    std::optional<double> dhat_right;
};

/// Scalar fluxes at or below this value abort correction construction.
inline constexpr double min_correction_flux = 1e-14;

std::vector<double> eddington_factors(const Moments& m);

/// Diffusion weight on edge e: 2 / (sigma_t h left + sigma_t h right) on
/// interior edges.
double edge_weight(const Mesh& mesh, std::size_t e);

/// Consistency factors for every interior edge and each vacuum boundary,
/// bundled with the given Eddington factors.
CorrectionFields dhat_factors(const Moments& m, const Mesh& mesh,
                              std::span<const double> eddington);

/// eddington_factors + dhat_factors.
CorrectionFields build_corrections(const Moments& m, const Mesh& mesh);

/// Solves the cell-balance form of the low-order quasidiffusion equation
///
///   (J_{j+1/2} - J_{j-1/2}) / h_j + sigma_a,j phi_j = q_j,
///   J_{j+1/2} = -beta_{j+1/2} (E_{j+1} phi_{j+1} - E_j phi_j)
///               + dhat_{j+1/2} (phi_j + phi_{j+1}) / 2,
///
/// with J = 0 on reflective edges and J = dhat_b phi_cell on vacuum edges.
std::vector<double> assemble_and_solve(const Mesh& mesh, const CorrectionFields& corr);

/// Low-order edge currents implied by `phi` (all J+1 edges).
std::vector<double> low_order_currents(const Mesh& mesh, const CorrectionFields& corr,
                                       std::span<const double> phi);

} // namespace slabqd
