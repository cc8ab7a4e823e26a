#include "slabqd/errors.hpp"

#include <sstream>

namespace slabqd {

namespace {

std::string describe_flux(std::size_t cell, double value) {
    std::ostringstream os;
    os << "non-positive scalar flux " << value << " in cell " << cell
       << "; acceleration cannot proceed";
    return os.str();
}

std::string describe_pivot(std::size_t row, double pivot) {
    std::ostringstream os;
    os << "singular tridiagonal system: pivot " << pivot << " at row " << row;
    return os.str();
}

} // namespace

NegativeFluxError::NegativeFluxError(std::size_t cell, double value)
    : std::runtime_error(describe_flux(cell, value)), cell_(cell), value_(value) {}

SingularSystemError::SingularSystemError(std::size_t row, double pivot)
    : std::runtime_error(describe_pivot(row, pivot)), row_(row) {}

} // namespace slabqd
