#include "slabqd/tridiagonal.hpp"

#include "slabqd/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace slabqd {

std::vector<double> tridiagonal_solve(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> super,
                                      std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (sub.size() != n || super.size() != n || rhs.size() != n) {
        throw std::invalid_argument("tridiagonal bands and right-hand side differ in length");
    }
    if (n == 0) {
        return {};
    }

    std::vector<double> upper(n, 0.0);
    std::vector<double> x(n, 0.0);

    double pivot = diag[0];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
        throw SingularSystemError(0, pivot);
    }
    upper[0] = n > 1 ? super[0] / pivot : 0.0;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - sub[i] * upper[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw SingularSystemError(i, pivot);
        }
        upper[i] = i + 1 < n ? super[i] / pivot : 0.0;
        x[i] = (rhs[i] - sub[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= upper[i] * x[i + 1];
    }
    return x;
}

} // namespace slabqd
