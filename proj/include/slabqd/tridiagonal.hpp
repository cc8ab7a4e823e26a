#pragma once

#include <span>
#include <vector>

namespace slabqd {

// Thomas algorithm without pivoting. All four spans have the system size;
// sub[0] and super[n-1] are ignored. Throws SingularSystemError on a zero or
// non-finite pivot.
std::vector<double> tridiagonal_solve(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> super,
                                      std::span<const double> rhs);

} // namespace slabqd
