#pragma once

#include <span>
#include <vector>

namespace facade {

// Thomas algorithm. lower[0] and upper[n-1] are ignored. Throws SolverError on a
// zero pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

// In-place variant: `rhs` is overwritten with the solution, `scratch` needs n entries.
void solve_tridiagonal_inplace(std::span<const double> lower, std::span<const double> diag,
                               std::span<const double> upper, std::span<double> rhs,
                               std::span<double> scratch);

}  // namespace facade
