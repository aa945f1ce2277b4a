#pragma once

// Test-side reference implementations, independent of the library code paths
// they are used to check.

#include <cstddef>
#include <vector>

namespace testoracle {

// exp(x^2) * erfc(x) for x >= 0, via Maclaurin series (x < 2) or the Lentz
// continued fraction (x >= 2). Accurate to ~1e-13 relative.
double erfcx(double x);

// Tridiagonal solve (Thomas algorithm). diag/off are the matrix bands.
std::vector<double> thomas_solve(std::vector<double> diag,
                                 std::vector<double> off,
                                 std::vector<double> rhs);

// Dense Cholesky solve of a symmetric positive definite system (row-major).
std::vector<double> cholesky_solve(std::vector<double> a, std::size_t n,
                                   std::vector<double> rhs);

// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n);

// Scalar L1 march for Caputo D^alpha y = -lambda y + f(t), y(0) = y0, on the
// graded grid t_n = T (n/N)^gamma. Returns y at every grid point.
std::vector<double> scalar_l1(double alpha, double lambda, double y0, double T,
                              std::size_t N, double gamma,
                              const std::vector<double>& forcing = {});

// Composite trapezoid of samples on an arbitrary grid.
double trapezoid(const std::vector<double>& grid, const std::vector<double>& values);

} // namespace testoracle
