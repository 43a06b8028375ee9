#include "facade/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "facade/errors.hpp"

namespace facade {

namespace {

void check_pivot(double pivot, std::size_t row) {
  if (pivot == 0.0 || !std::isfinite(pivot))
    throw SolverError("tridiagonal solve: zero pivot at row " + std::to_string(row));
}

}  // namespace

void solve_tridiagonal_inplace(std::span<const double> lower, std::span<const double> diag,
                               std::span<const double> upper, std::span<double> rhs,
                               std::span<double> scratch) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n || scratch.size() < n)
    throw SolverError("tridiagonal solve: inconsistent sizes");
  if (n == 0) return;

  check_pivot(diag[0], 0);
  double pivot = diag[0];
  scratch[0] = upper[0] / pivot;
  rhs[0] /= pivot;
  for (std::size_t k = 1; k < n; ++k) {
    pivot = diag[k] - lower[k] * scratch[k - 1];
    check_pivot(pivot, k);
    scratch[k] = k + 1 < n ? upper[k] / pivot : 0.0;
    rhs[k] = (rhs[k] - lower[k] * rhs[k - 1]) / pivot;
  }
  for (std::size_t k = n - 1; k-- > 0;) rhs[k] -= scratch[k] * rhs[k + 1];
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
  std::vector<double> x(rhs.begin(), rhs.end());
  std::vector<double> scratch(diag.size());
  solve_tridiagonal_inplace(lower, diag, upper, x, scratch);
  return x;
}

}  // namespace facade
