#include "slabqd/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace slabqd {

QuadratureSet::QuadratureSet(int order, std::vector<double> angles, std::vector<double> weights)
    : order_(order), angles_(std::move(angles)), weights_(std::move(weights)) {
    if (angles_.size() != weights_.size()) {
        throw std::invalid_argument("quadrature angles and weights differ in length");
    }
}

namespace {

// P_n(x) and P_n'(x) from the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

} // namespace

QuadratureSet gauss_legendre(int order) {
    if (order < 2 || order > 64 || order % 2 != 0) {
        throw std::invalid_argument("Gauss-Legendre order must be even and in [2, 64], got " +
                                    std::to_string(order));
    }

    const auto n = static_cast<std::size_t>(order);
    std::vector<double> mu(n);
    std::vector<double> w(n);

    for (std::size_t i = 0; i < n / 2; ++i) {
        // Largest root first.
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const auto [p, d] = legendre(order, z);
            dp = d;
            const double step = p / d;
            z -= step;
            if (std::abs(step) <= 1e-15) {
                break;
            }
        }
        dp = legendre(order, z).second;
        const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
        mu[i] = -z;
        mu[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    return QuadratureSet(order, std::move(mu), std::move(w));
}

} // namespace slabqd
