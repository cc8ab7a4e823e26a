#include "slabqd/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slabqd {

namespace {

// alpha(tau) = coth(tau/2) - 2/tau = sum_k 2 B_2k / (2k)! tau^(2k-1), |tau| < 2 pi.
constexpr std::array<double, 17> sc_series = {
    1.6666666666666667e-1,  -2.7777777777777778e-3, 6.6137566137566138e-5,
    -1.6534391534391534e-6, 4.1753513975736198e-8,  -1.0568380277374986e-9,
    2.6765073061369358e-11, -6.7793605926451657e-13, 1.7172124112555689e-14,
    -4.3497373971161237e-16, 1.1018005656720459e-17, -2.7908929371625047e-19,
    7.0694140792589349e-21, -1.7907034854075094e-22, 4.5359049046753661e-24,
    -1.1489581337744405e-25, 2.9103449512297298e-27,
};

constexpr double sc_small_tau = 1e-4;
// Below this the closed form loses more than ~1e-15 relative to cancellation.
constexpr double sc_series_tau = 2.0;

double sc_alpha_positive(double tau) {
    if (tau < sc_small_tau) {
        return tau / 6.0 - tau * tau * tau / 360.0;
    }
    if (tau < sc_series_tau) {
        const double t2 = tau * tau;
        double acc = 0.0;
        for (auto it = sc_series.rbegin(); it != sc_series.rend(); ++it) {
            acc = acc * t2 + *it;
        }
        return acc * tau;
    }
    const double decay = std::exp(-tau);
    return (1.0 + decay) / -std::expm1(-tau) - 2.0 / tau;
}

struct SweepDirection {
    const Mesh& mesh;
    const QuadratureSet& quad;
    Closure closure;
    std::span<const double> source; // (sigma_s phi + q) / 2 per cell
    AngularSolution& sol;

    // Sweeps direction n from its inflow boundary and returns the outflow.
    double operator()(std::size_t n, double inflow) const {
        const std::size_t cells = mesh.cells();
        const double mu = quad.mu(n);
        const double abs_mu = std::abs(mu);
        double* cell = sol.cell_avg.data() + n * cells;
        double* edge = sol.edge.data() + n * (cells + 1);

        double in = inflow;
        if (mu > 0.0) {
            edge[0] = in;
            for (std::size_t j = 0; j < cells; ++j) {
                const double th = mesh.sigma_t(j) * mesh.width(j);
                const double alpha = closure_alpha(closure, th, mu);
                const double w_in = 0.5 * (1.0 - alpha);
                const double w_out = 0.5 * (1.0 + alpha);
                const double out =
                    (source[j] * mesh.width(j) + in * (abs_mu - th * w_in)) / (abs_mu + th * w_out);
                cell[j] = w_in * in + w_out * out;
                edge[j + 1] = out;
                in = out;
            }
        } else {
            edge[cells] = in;
            for (std::size_t j = cells; j-- > 0;) {
                const double th = mesh.sigma_t(j) * mesh.width(j);
                const double alpha = closure_alpha(closure, th, mu);
                const double w_out = 0.5 * (1.0 - alpha);
                const double w_in = 0.5 * (1.0 + alpha);
                const double out =
                    (source[j] * mesh.width(j) + in * (abs_mu - th * w_in)) / (abs_mu + th * w_out);
                cell[j] = w_out * out + w_in * in;
                edge[j] = out;
                in = out;
            }
        }
        return in;
    }
};

} // namespace

std::string_view to_string(Closure closure) {
    return closure == Closure::dd ? "dd" : "sc";
}

Closure parse_closure(std::string_view text) {
    if (text == "dd") {
        return Closure::dd;
    }
    if (text == "sc") {
        return Closure::sc;
    }
    throw std::invalid_argument("unknown closure '" + std::string(text) + "' (expected dd or sc)");
}

double sc_alpha(double tau) {
    if (tau == 0.0 || std::isnan(tau)) {
        throw std::invalid_argument("step-characteristic weight undefined at tau = 0; use DD");
    }
    if (std::isinf(tau)) {
        return tau > 0.0 ? 1.0 : -1.0;
    }
    return tau > 0.0 ? sc_alpha_positive(tau) : -sc_alpha_positive(-tau);
}

double closure_alpha(Closure closure, double sigma_t_h, double mu) {
    if (closure == Closure::dd || sigma_t_h == 0.0) {
        return 0.0;
    }
    return sc_alpha(sigma_t_h / mu);
}

std::vector<double> initial_left_inflow(const Mesh& mesh, const QuadratureSet& quad) {
    std::vector<double> inflow(quad.size(), 0.0);
    const double st = mesh.sigma_t(0);
    const double estimate = st > 0.0 ? mesh.source(0) / (2.0 * st) : 0.0;
    for (std::size_t n = 0; n < quad.size(); ++n) {
        if (quad.mu(n) > 0.0) {
            inflow[n] = estimate;
        }
    }
    return inflow;
}

AngularSolution transport_sweep(const Mesh& mesh, const QuadratureSet& quad, Closure closure,
                                std::span<const double> scalar_flux,
                                std::span<const double> lagged_left_inflow) {
    const std::size_t cells = mesh.cells();
    const std::size_t angles = quad.size();
    if (scalar_flux.size() != cells) {
        throw std::invalid_argument("scalar flux has " + std::to_string(scalar_flux.size()) +
                                    " entries for " + std::to_string(cells) + " cells");
    }

    AngularSolution sol;
    sol.angles = angles;
    sol.cells = cells;
    sol.cell_avg.assign(angles * cells, 0.0);
    sol.edge.assign(angles * (cells + 1), 0.0);
    sol.left_reflected.assign(angles, 0.0);

    std::vector<double> source(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        source[j] = 0.5 * (mesh.sigma_s(j) * scalar_flux[j] + mesh.source(j));
    }

    const SweepDirection sweep{mesh, quad, closure, source, sol};
    const std::size_t half = angles / 2; // [0, half) are mu < 0
    const bool left_refl = mesh.boundary().left == BoundaryKind::reflective;
    const bool right_refl = mesh.boundary().right == BoundaryKind::reflective;

    std::vector<double> outflow(angles, 0.0);
    auto sweep_negative = [&](bool reflect_right) {
        for (std::size_t n = 0; n < half; ++n) {
            const double in = reflect_right ? outflow[quad.mirror(n)] : 0.0;
            outflow[n] = sweep(n, in);
        }
    };
    auto sweep_positive = [&](bool reflect_left, std::span<const double> left_in) {
        for (std::size_t n = half; n < angles; ++n) {
            double in = 0.0;
            if (!left_in.empty()) {
                in = left_in[n];
            } else if (reflect_left) {
                in = outflow[quad.mirror(n)];
            }
            outflow[n] = sweep(n, in);
        }
    };

    if (left_refl && right_refl) {
        std::vector<double> initial;
        if (lagged_left_inflow.empty()) {
            initial = initial_left_inflow(mesh, quad);
            lagged_left_inflow = initial;
        } else if (lagged_left_inflow.size() != angles) {
            throw std::invalid_argument("lagged left inflow must have one entry per angle");
        }
        sweep_positive(false, lagged_left_inflow);
        sweep_negative(true);
    } else if (left_refl) {
        sweep_negative(false);
        sweep_positive(true, {});
    } else if (right_refl) {
        sweep_positive(false, {});
        sweep_negative(true);
    } else {
        sweep_negative(false);
        sweep_positive(false, {});
    }

    if (left_refl) {
        for (std::size_t n = half; n < angles; ++n) {
            sol.left_reflected[n] = outflow[quad.mirror(n)];
        }
    }
    sol.negative_flux =
        std::any_of(sol.cell_avg.begin(), sol.cell_avg.end(), [](double v) { return v < 0.0; });
    return sol;
}

Moments compute_moments(const AngularSolution& sol, const QuadratureSet& quad) {
    if (sol.angles != quad.size()) {
        throw std::invalid_argument("angular solution and quadrature disagree on angle count");
    }
    Moments m;
    m.phi.assign(sol.cells, 0.0);
    m.phi2.assign(sol.cells, 0.0);
    m.current.assign(sol.cells + 1, 0.0);
    for (std::size_t n = 0; n < sol.angles; ++n) {
        const double w = quad.weight(n);
        const double mu = quad.mu(n);
        for (std::size_t j = 0; j < sol.cells; ++j) {
            const double psi = sol.cell(n, j);
            m.phi[j] += w * psi;
            m.phi2[j] += w * mu * mu * psi;
        }
        for (std::size_t e = 0; e <= sol.cells; ++e) {
            m.current[e] += w * mu * sol.edge_value(n, e);
        }
    }
    return m;
}

} // namespace slabqd
