#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slabqd {

/// A region boundary does not coincide with a cell edge.
class AlignmentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Inconsistent cross sections (e.g. sigma_s > sigma_t).
class MaterialError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A scalar flux that must be divided by is not positive.
class NegativeFluxError : public std::runtime_error {
  public:
    NegativeFluxError(std::size_t cell, double value);

    std::size_t cell() const noexcept { return cell_; }
    double value() const noexcept { return value_; }

  private:
    std::size_t cell_;
    double value_;
};

/// Zero or non-finite pivot in a direct linear solve.
class SingularSystemError : public std::runtime_error {
  public:
    SingularSystemError(std::size_t row, double pivot);

    std::size_t row() const noexcept { return row_; }

  private:
    std::size_t row_;
};

} // namespace slabqd
