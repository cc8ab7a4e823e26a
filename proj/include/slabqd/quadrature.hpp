#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace slabqd {

/// Symmetric angular quadrature on (-1, 1). Angles are stored ascending, so
/// the negative half comes first and angle n pairs with angle size()-1-n.
class QuadratureSet {
  public:
    QuadratureSet(int order, std::vector<double> angles, std::vector<double> weights);

    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return angles_.size(); }

    std::span<const double> angles() const noexcept { return angles_; }
    std::span<const double> weights() const noexcept { return weights_; }

    double mu(std::size_t n) const { return angles_[n]; }
    double weight(std::size_t n) const { return weights_[n]; }

    // Index of the direction with angle -mu(n).
    std::size_t mirror(std::size_t n) const noexcept { return angles_.size() - 1 - n; }

  private:
    int order_;
    std::vector<double> angles_;
    std::vector<double> weights_;
};

/// Gauss-Legendre set of the given even order (2..64).
QuadratureSet gauss_legendre(int order);

} // namespace slabqd
