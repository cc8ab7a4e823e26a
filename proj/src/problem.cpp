#include "slabqd/problem.hpp"

#include "slabqd/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace slabqd {

namespace {

constexpr double alignment_tolerance = 1e-9;

void check_region(const MaterialRegion& r, std::size_t index) {
    auto fail = [&](const std::string& what) {
        std::ostringstream os;
        os << "region " << index << ": " << what;
        throw MaterialError(os.str());
    };
    if (!(std::isfinite(r.width) && r.width > 0.0)) {
        fail("width must be positive");
    }
    if (!(std::isfinite(r.sigma_t) && r.sigma_t >= 0.0)) {
        fail("sigma_t must be non-negative");
    }
    if (!(std::isfinite(r.sigma_s) && r.sigma_s >= 0.0)) {
        fail("sigma_s must be non-negative");
    }
    if (r.sigma_s > r.sigma_t) {
        std::ostringstream os;
        os << "sigma_s (" << r.sigma_s << ") exceeds sigma_t (" << r.sigma_t << ")";
        fail(os.str());
    }
    if (!(std::isfinite(r.q) && r.q >= 0.0)) {
        fail("source q must be non-negative");
    }
}

[[noreturn]] void misaligned(std::size_t region, double boundary, double reached) {
    std::ostringstream os;
    os.precision(17);
    os << "region " << region << ": right boundary at x = " << boundary
       << " does not coincide with a cell edge (nearest edge at x = " << reached << ")";
    throw AlignmentError(os.str());
}

} // namespace

std::string_view to_string(BoundaryKind kind) {
    return kind == BoundaryKind::reflective ? "reflective" : "vacuum";
}

BoundaryKind parse_boundary_kind(std::string_view text) {
    if (text == "reflective") {
        return BoundaryKind::reflective;
    }
    if (text == "vacuum") {
        return BoundaryKind::vacuum;
    }
    throw std::invalid_argument("unknown boundary kind '" + std::string(text) +
                                "' (expected reflective or vacuum)");
}

double Mesh::scattering_ratio(std::size_t j) const {
    return sigma_t_[j] > 0.0 ? sigma_s_[j] / sigma_t_[j] : 0.0;
}

Mesh build_mesh(std::span<const MaterialRegion> regions, BoundarySpec boundary,
                double cell_width) {
    if (!(std::isfinite(cell_width) && cell_width > 0.0)) {
        throw std::invalid_argument("cell width must be positive");
    }
    for (std::size_t r = 0; r < regions.size(); ++r) {
        check_region(regions[r], r);
    }

    std::vector<double> widths;
    double position = 0.0;
    for (std::size_t r = 0; r < regions.size(); ++r) {
        const double ratio = regions[r].width / cell_width;
        const double count = std::round(ratio);
        if (count < 1.0 || std::abs(ratio - count) > alignment_tolerance * ratio) {
            misaligned(r, position + regions[r].width, position + count * cell_width);
        }
        widths.insert(widths.end(), static_cast<std::size_t>(count), cell_width);
        position += regions[r].width;
    }
    return build_mesh_nonuniform(regions, boundary, widths);
}

Mesh build_mesh_nonuniform(std::span<const MaterialRegion> regions, BoundarySpec boundary,
                           std::span<const double> widths) {
    if (regions.empty()) {
        throw std::invalid_argument("at least one material region is required");
    }
    if (widths.empty()) {
        throw std::invalid_argument("at least one cell is required");
    }
    for (std::size_t r = 0; r < regions.size(); ++r) {
        check_region(regions[r], r);
    }
    for (std::size_t j = 0; j < widths.size(); ++j) {
        if (!(std::isfinite(widths[j]) && widths[j] > 0.0)) {
            throw std::invalid_argument("cell " + std::to_string(j) + " has non-positive width");
        }
    }

    Mesh mesh;
    mesh.boundary_ = boundary;
    mesh.widths_.reserve(widths.size());

    std::size_t j = 0;
    double region_start = 0.0;
    for (std::size_t r = 0; r < regions.size(); ++r) {
        const double region_end = region_start + regions[r].width;
        const double tol = alignment_tolerance * region_end;
        const std::size_t first = j;
        double x = region_start;
        while (j < widths.size() && x + widths[j] <= region_end + tol) {
            x += widths[j];
            ++j;
        }
        if (j == first || std::abs(x - region_end) > tol) {
            misaligned(r, region_end, x);
        }
        // Absorb round-off so the cells tile the region exactly.
        const double scale = regions[r].width / (x - region_start);
        for (std::size_t k = first; k < j; ++k) {
            mesh.widths_.push_back(widths[k] * scale);
            mesh.sigma_t_.push_back(regions[r].sigma_t);
            mesh.sigma_s_.push_back(regions[r].sigma_s);
            mesh.q_.push_back(regions[r].q);
            mesh.region_.push_back(r);
        }
        region_start = region_end;
    }
    if (j != widths.size()) {
        std::ostringstream os;
        os << "cell widths extend past the last region boundary at x = " << region_start;
        throw AlignmentError(os.str());
    }

    mesh.edges_.resize(mesh.widths_.size() + 1, 0.0);
    for (std::size_t k = 0; k < mesh.widths_.size(); ++k) {
        mesh.edges_[k + 1] = mesh.edges_[k] + mesh.widths_[k];
    }
    return mesh;
}

} // namespace slabqd
