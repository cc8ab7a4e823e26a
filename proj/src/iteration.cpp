#include "slabqd/iteration.hpp"

#include "slabqd/errors.hpp"
#include "slabqd/low_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace slabqd {

namespace {

constexpr double norm_floor = 1e-300;
constexpr std::size_t rho_skip = 3;
constexpr std::size_t rho_window = 5;

} // namespace

std::string_view to_string(SchemeKind scheme) {
    switch (scheme) {
    case SchemeKind::si:
        return "si";
    case SchemeKind::cqd:
        return "cqd";
    case SchemeKind::lpcqd:
        return "lpcqd";
    }
    return "?";
}

SchemeKind parse_scheme(std::string_view text) {
    if (text == "si") {
        return SchemeKind::si;
    }
    if (text == "cqd") {
        return SchemeKind::cqd;
    }
    if (text == "lpcqd") {
        return SchemeKind::lpcqd;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(text) +
                                "' (expected si, cqd or lpcqd)");
}

std::string_view to_string(Status status) {
    switch (status) {
    case Status::converged:
        return "converged";
    case Status::max_iterations:
        return "max_iterations";
    case Status::diverged:
        return "diverged";
    case Status::negative_flux_abort:
        return "negative_flux_abort";
    }
    return "?";
}

void IterationOptions::validate() const {
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be at least 1");
    }
    if (!(lp_boundary_alpha >= 0.0 && lp_boundary_alpha <= 1.0)) {
        throw std::invalid_argument("lp boundary alpha must lie in [0, 1]");
    }
    if (divergence_window < 1) {
        throw std::invalid_argument("divergence window must be at least 1");
    }
}

double weighted_norm(std::span<const double> v, const Mesh& mesh) {
    if (v.size() != mesh.cells()) {
        throw std::invalid_argument("vector does not match the mesh");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        sum += v[j] * v[j] * mesh.width(j);
    }
    return std::sqrt(sum / mesh.total_width());
}

double diff_norm(std::span<const double> phi_new, std::span<const double> phi_old,
                 const Mesh& mesh) {
    if (phi_new.size() != phi_old.size() || phi_new.size() != mesh.cells()) {
        throw std::invalid_argument("flux iterates do not match the mesh");
    }
    double sum = 0.0;
    double width = 0.0;
    for (std::size_t j = 0; j < phi_new.size(); ++j) {
        const double d = phi_new[j] - phi_old[j];
        sum += d * d * mesh.width(j);
        width += mesh.width(j);
    }
    return std::sqrt(sum / width);
}

std::optional<double> estimate_spectral_radius(const IterationHistory& history) {
    const std::size_t n = history.size();
    if (n < rho_window) {
        return std::nullopt;
    }
    // Iteration l (1-based) lives at history[l - 1].
    const std::size_t first = std::max(rho_skip + 1, n - rho_window + 1);
    std::vector<double> ratios;
    for (std::size_t l = first; l <= n; ++l) {
        if (const auto& r = history[l - 1].rho_estimate; r && std::isfinite(*r)) {
            ratios.push_back(*r);
        }
    }
    if (ratios.empty()) {
        return std::nullopt;
    }
    std::sort(ratios.begin(), ratios.end());
    const std::size_t mid = ratios.size() / 2;
    return ratios.size() % 2 == 1 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
}

std::vector<double> lp_update(std::span<const double> phi_ho, std::span<const double> phi_lo,
                              const Mesh& mesh, double alpha) {
    const std::size_t cells = mesh.cells();
    if (phi_ho.size() != cells || phi_lo.size() != cells) {
        throw std::invalid_argument("flux arrays do not match the mesh");
    }
    if (cells < 2) {
        throw std::invalid_argument("linear prolongation needs at least two cells");
    }

    std::vector<double> delta(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        delta[j] = phi_lo[j] - phi_ho[j];
    }
    auto h = [&](std::size_t j) { return mesh.width(j); };

    std::vector<double> out(phi_ho.begin(), phi_ho.end());
    for (std::size_t j = 1; j + 1 < cells; ++j) {
        const double left = h(j - 1) + h(j);
        const double right = h(j) + h(j + 1);
        out[j] += 0.5 * (h(j) / left * delta[j - 1] + (h(j - 1) / left + h(j + 1) / right) * delta[j] +
                         h(j) / right * delta[j + 1]);
    }

    const std::size_t last = cells - 1;
    {
        const double pair = h(0) + h(1);
        const double self = mesh.boundary().left == BoundaryKind::reflective
                                ? 1.0 + h(1) / pair // ghost cell mirrors delta[0]
                                : alpha + h(0) / pair;
        out[0] += 0.5 * (self * delta[0] + h(0) / pair * delta[1]);
    }
    {
        const double pair = h(last - 1) + h(last);
        const double self = mesh.boundary().right == BoundaryKind::reflective
                                ? 1.0 + h(last - 1) / pair
                                : alpha + h(last) / pair;
        out[last] += 0.5 * (h(last) / pair * delta[last - 1] + self * delta[last]);
    }
    return out;
}

Solution solve(SchemeKind scheme, const Mesh& mesh, const QuadratureSet& quad, Closure closure,
               const IterationOptions& opts, std::span<const double> initial_flux) {
    opts.validate();
    const std::size_t cells = mesh.cells();
    if (scheme == SchemeKind::lpcqd && cells < 2) {
        throw std::invalid_argument("lpCQD needs at least two cells");
    }

    Solution result;
    if (initial_flux.empty()) {
        result.phi.assign(cells, 0.0);
    } else if (initial_flux.size() == cells) {
        result.phi.assign(initial_flux.begin(), initial_flux.end());
    } else {
        throw std::invalid_argument("initial flux does not match the mesh");
    }

    const bool lag_left = mesh.boundary().left == BoundaryKind::reflective &&
                          mesh.boundary().right == BoundaryKind::reflective;
    std::vector<double> left_inflow;
    if (lag_left) {
        left_inflow = initial_left_inflow(mesh, quad);
    }

    double min_diff = std::numeric_limits<double>::infinity();
    int growing = 0;
    result.status = Status::max_iterations;

    for (int l = 1; l <= opts.max_iterations; ++l) {
        const AngularSolution sweep = transport_sweep(mesh, quad, closure, result.phi, left_inflow);
        if (lag_left) {
            left_inflow = sweep.left_reflected;
        }
        Moments moments = compute_moments(sweep, quad);

        std::vector<double> next;
        if (scheme == SchemeKind::si) {
            next = std::move(moments.phi);
        } else {
            try {
                const CorrectionFields corr = build_corrections(moments, mesh);
                std::vector<double> low = assemble_and_solve(mesh, corr);
                next = scheme == SchemeKind::cqd
                           ? std::move(low)
                           : lp_update(moments.phi, low, mesh, opts.lp_boundary_alpha);
            } catch (const NegativeFluxError&) {
                result.status = Status::negative_flux_abort;
                result.phi = std::move(moments.phi);
                break;
            } catch (const SingularSystemError&) {
                result.status = Status::diverged;
                result.phi = std::move(moments.phi);
                break;
            } catch (const std::domain_error&) {
                result.status = Status::diverged;
                result.phi = std::move(moments.phi);
                break;
            }
        }

        IterationRecord rec;
        rec.diff_norm = diff_norm(next, result.phi, mesh);
        if (!result.history.empty() && result.history.back().diff_norm > 0.0) {
            rec.rho_estimate = rec.diff_norm / result.history.back().diff_norm;
        }
        rec.min_flux = *std::min_element(next.begin(), next.end());
        result.history.push_back(rec);
        result.phi = std::move(next);
        result.iterations_used = l;

        if (!std::isfinite(rec.diff_norm)) {
            result.status = Status::diverged;
            break;
        }
        const double scale = std::max(weighted_norm(result.phi, mesh), norm_floor);
        if (rec.diff_norm / scale < opts.tolerance) {
            result.status = Status::converged;
            break;
        }

        min_diff = std::min(min_diff, rec.diff_norm);
        growing = rec.rho_estimate && *rec.rho_estimate > 1.0 ? growing + 1 : 0;
        if (growing >= opts.divergence_window && rec.diff_norm > 10.0 * min_diff) {
            result.status = Status::diverged;
            break;
        }
    }
    return result;
}

Mesh convergence_study_mesh(double c, double sigma_t_h, std::size_t cells) {
    if (!(sigma_t_h > 0.0) || cells == 0) {
        throw std::invalid_argument("optical cell width and cell count must be positive");
    }
    const MaterialRegion slab{static_cast<double>(cells) * sigma_t_h, 1.0, c, 1.0};
    return build_mesh(std::span(&slab, 1), {BoundaryKind::reflective, BoundaryKind::vacuum},
                      sigma_t_h);
}

RhoMeasurement measure_rho(SchemeKind scheme, double c, double sigma_t_h, std::size_t cells,
                           Closure closure, const QuadratureSet& quad,
                           const IterationOptions& opts) {
    const Mesh mesh = convergence_study_mesh(c, sigma_t_h, cells);
    const Solution sol = solve(scheme, mesh, quad, closure, opts);
    return {estimate_spectral_radius(sol.history), sol.status, sol.iterations_used};
}

} // namespace slabqd
