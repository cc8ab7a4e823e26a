#include "slabqd/low_order.hpp"

#include "slabqd/errors.hpp"
#include "slabqd/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slabqd {

namespace {

void require_positive(std::span<const double> phi) {
    for (std::size_t j = 0; j < phi.size(); ++j) {
        if (!(phi[j] > min_correction_flux)) {
            throw NegativeFluxError(j, phi[j]);
        }
    }
}

double finite_or_throw(double v, const char* what, std::size_t index) {
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string("non-finite ") + what + " at index " +
                                std::to_string(index));
    }
    return v;
}

} // namespace

std::vector<double> eddington_factors(const Moments& m) {
    if (m.phi2.size() != m.phi.size()) {
        throw std::invalid_argument("moment arrays differ in length");
    }
    require_positive(m.phi);
    std::vector<double> e(m.phi.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        e[j] = finite_or_throw(m.phi2[j] / m.phi[j], "Eddington factor", j);
    }
    return e;
}

double edge_weight(const Mesh& mesh, std::size_t e) {
    if (e == 0 || e >= mesh.cells()) {
        throw std::out_of_range("edge weight is defined on interior edges only");
    }
    const double optical = mesh.sigma_t(e - 1) * mesh.width(e - 1) + mesh.sigma_t(e) * mesh.width(e);
    return 2.0 / optical;
}

CorrectionFields dhat_factors(const Moments& m, const Mesh& mesh,
                              std::span<const double> eddington) {
    const std::size_t cells = mesh.cells();
    if (m.phi.size() != cells || m.phi2.size() != cells || m.current.size() != cells + 1 ||
        eddington.size() != cells) {
        throw std::invalid_argument("moments, Eddington factors and mesh disagree in size");
    }
    require_positive(m.phi);

    CorrectionFields corr;
    corr.eddington.assign(eddington.begin(), eddington.end());
    corr.dhat_interior.resize(cells - 1);
    for (std::size_t e = 1; e < cells; ++e) {
        const double beta = finite_or_throw(edge_weight(mesh, e), "edge diffusion weight", e);
        const double numer = m.current[e] + beta * (m.phi2[e] - m.phi2[e - 1]);
        const double mean_phi = 0.5 * (m.phi[e - 1] + m.phi[e]);
        corr.dhat_interior[e - 1] = finite_or_throw(numer / mean_phi, "consistency factor", e);
    }
    if (mesh.boundary().left == BoundaryKind::vacuum) {
        corr.dhat_left = finite_or_throw(m.current[0] / m.phi[0], "consistency factor", 0);
    }
    if (mesh.boundary().right == BoundaryKind::vacuum) {
        corr.dhat_right =
            finite_or_throw(m.current[cells] / m.phi[cells - 1], "consistency factor", cells);
    }
    return corr;
}

CorrectionFields build_corrections(const Moments& m, const Mesh& mesh) {
    const auto e = eddington_factors(m);
    return dhat_factors(m, mesh, e);
}

std::vector<double> assemble_and_solve(const Mesh& mesh, const CorrectionFields& corr) {
    const std::size_t cells = mesh.cells();
    if (corr.eddington.size() != cells || corr.dhat_interior.size() + 1 != cells) {
        throw std::invalid_argument("correction fields do not match the mesh");
    }
    if (corr.dhat_left.has_value() != (mesh.boundary().left == BoundaryKind::vacuum) ||
        corr.dhat_right.has_value() != (mesh.boundary().right == BoundaryKind::vacuum)) {
        throw std::invalid_argument("boundary consistency factors do not match the boundary spec");
    }

    std::vector<double> sub(cells, 0.0);
    std::vector<double> diag(cells, 0.0);
    std::vector<double> super(cells, 0.0);
    std::vector<double> rhs(cells, 0.0);

    for (std::size_t j = 0; j < cells; ++j) {
        diag[j] = mesh.sigma_a(j);
        rhs[j] = mesh.source(j);
    }

    // J_e = left_coef * phi_{e-1} + right_coef * phi_e enters row e-1 with +1/h
    // and row e with -1/h.
    for (std::size_t e = 1; e < cells; ++e) {
        const double beta = edge_weight(mesh, e);
        const double dhat = corr.dhat_interior[e - 1];
        const double left_coef = beta * corr.eddington[e - 1] + 0.5 * dhat;
        const double right_coef = -beta * corr.eddington[e] + 0.5 * dhat;
        const double inv_hl = 1.0 / mesh.width(e - 1);
        const double inv_hr = 1.0 / mesh.width(e);
        diag[e - 1] += left_coef * inv_hl;
        super[e - 1] += right_coef * inv_hl;
        sub[e] -= left_coef * inv_hr;
        diag[e] -= right_coef * inv_hr;
    }
    if (corr.dhat_left) {
        diag[0] -= *corr.dhat_left / mesh.width(0);
    }
    if (corr.dhat_right) {
        diag[cells - 1] += *corr.dhat_right / mesh.width(cells - 1);
    }

    return tridiagonal_solve(sub, diag, super, rhs);
}

std::vector<double> low_order_currents(const Mesh& mesh, const CorrectionFields& corr,
                                       std::span<const double> phi) {
    const std::size_t cells = mesh.cells();
    if (phi.size() != cells) {
        throw std::invalid_argument("flux does not match the mesh");
    }
    std::vector<double> current(cells + 1, 0.0);
    for (std::size_t e = 1; e < cells; ++e) {
        const double beta = edge_weight(mesh, e);
        current[e] = -beta * (corr.eddington[e] * phi[e] - corr.eddington[e - 1] * phi[e - 1]) +
                     corr.dhat_interior[e - 1] * 0.5 * (phi[e - 1] + phi[e]);
    }
    if (corr.dhat_left) {
        current[0] = *corr.dhat_left * phi[0];
    }
    if (corr.dhat_right) {
        current[cells] = *corr.dhat_right * phi[cells - 1];
    }
    return current;
}

} // namespace slabqd
