#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slabqd {

enum class BoundaryKind { reflective, vacuum };

struct BoundarySpec {
    BoundaryKind left = BoundaryKind::reflective;
    BoundaryKind right = BoundaryKind::vacuum;

    bool operator==(const BoundarySpec&) const = default;
};

std::string_view to_string(BoundaryKind kind);
BoundaryKind parse_boundary_kind(std::string_view text);

/// Homogeneous slab region. `q` is the isotropic source density.
struct MaterialRegion {
    double width = 0.0;
    double sigma_t = 0.0;
    double sigma_s = 0.0;
    double q = 0.0;
};

/// Fine computational mesh with cell-wise constant cross sections.
class Mesh {
  public:
    std::size_t cells() const noexcept { return widths_.size(); }

    double width(std::size_t j) const { return widths_[j]; }
    double sigma_t(std::size_t j) const { return sigma_t_[j]; }
    double sigma_s(std::size_t j) const { return sigma_s_[j]; }
    double sigma_a(std::size_t j) const { return sigma_t_[j] - sigma_s_[j]; }
    double source(std::size_t j) const { return q_[j]; }
    double scattering_ratio(std::size_t j) const;
    std::size_t region(std::size_t j) const { return region_[j]; }

    // Edge j sits at the left of cell j; edge cells() is the right boundary.
    double edge(std::size_t e) const { return edges_[e]; }
    double center(std::size_t j) const { return 0.5 * (edges_[j] + edges_[j + 1]); }
    double total_width() const { return edges_.back(); }

    std::span<const double> widths() const noexcept { return widths_; }
    std::span<const double> edges() const noexcept { return edges_; }

    const BoundarySpec& boundary() const noexcept { return boundary_; }

    bool operator==(const Mesh&) const = default;

  private:
    friend Mesh build_mesh_nonuniform(std::span<const MaterialRegion>, BoundarySpec,
                                      std::span<const double>);

    std::vector<double> widths_;
    std::vector<double> edges_;
    std::vector<double> sigma_t_;
    std::vector<double> sigma_s_;
    std::vector<double> q_;
    std::vector<std::size_t> region_;
    BoundarySpec boundary_;
};

/// Uniform mesh; every region width must be a multiple of `cell_width`
/// (1e-9 relative).
Mesh build_mesh(std::span<const MaterialRegion> regions, BoundarySpec boundary,
                double cell_width);

/// Mesh with explicit per-cell widths whose running sum must land on every
/// region boundary.
Mesh build_mesh_nonuniform(std::span<const MaterialRegion> regions, BoundarySpec boundary,
                           std::span<const double> widths);

} // namespace slabqd
