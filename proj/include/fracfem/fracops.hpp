#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fracfem/time_grid.hpp"

namespace fracfem::fracops {

// Fractional differentiation order, restricted to the strict range (0,1).
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);
    double value() const noexcept { return alpha_; }

private:
    double alpha_;
};

// A scalar signal sampled on a strictly increasing grid starting at 0.
// The signal is interpreted as piecewise linear between samples.
struct TimeSamples {
    std::vector<double> grid;
    std::vector<double> values;

    TimeSamples(std::vector<double> g, std::vector<double> v);
};

// Gamma function (Lanczos, g = 7 with 9 coefficients, plus reflection).
double gamma_fn(double x);

// log(Gamma(x)) for x > 0.
double log_gamma(double x);

// 1/Gamma(x) on the whole real line; returns 0 at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

// Kernel omega_nu(t) = t^(nu-1)/Gamma(nu) for nu > 0, t > 0.
double omega(double nu, double t);

// Riemann-Liouville integral I^nu of a piecewise-linear signal, evaluated at
// every grid point. Product integration: the kernel is integrated exactly on
// each subinterval, so the result is exact (up to roundoff) for
// piecewise-linear inputs. nu in (0,2).
TimeSamples rl_integral(const TimeSamples& signal, double nu);

// Same, evaluated at a single time t in [0, grid.back()].
double rl_integral_at(const TimeSamples& signal, double nu, double t);

// L1 weights b_{n,j}, j = 1..n, such that sum_j b_{n,j} (v(t_j) - v(t_{j-1}))
// approximates the Caputo derivative of order alpha at t_n.
// b_{n,j} = [omega_{2-a}(t_n - t_{j-1}) - omega_{2-a}(t_n - t_j)] / (t_j - t_{j-1}),
// evaluated in a cancellation-free form. Index n is 1-based, 1 <= n <= N.
std::vector<double> caputo_l1_weights(const TimeGrid& grid,
                                      const FractionalOrder& alpha,
                                      std::size_t n);

// E_alpha(-x) for x >= 0.
double mittag_leffler(const FractionalOrder& alpha, double x);

// Residual |LHS - RHS| of the identity
//   t^2 I^a v'(t) = I^a v2'(t) + 2(a-1) I^a v1(t) + a(a-1) I^{1+a} v(t)
//                   - t^2 omega_a(t) v(0),
// with v(t) = t^d, v1 = t v, v2 = t^2 v, every term evaluated by the
// closed-form power rule.
double verify_leibniz_identity(int poly_degree, const FractionalOrder& alpha,
                               double t);

// Exact value of int_0^T (I^alpha phi)(t) phi(t) dt for the piecewise-linear
// signal phi; nonnegative (up to roundoff) for every real signal.
double positivity_check(const TimeSamples& signal, const FractionalOrder& alpha);

namespace detail {

// (base + delta)^p - base^p without cancellation; base >= 0, delta >= 0, p > 0.
double pow_gap(double base, double delta, double p);

// Adaptive Gauss-Kronrod (7,15) quadrature on [a,b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol);

// Same with interior breakpoints seeding the initial subdivision.
double integrate(const std::function<double(double)>& f,
                 const std::vector<double>& breakpoints, double rel_tol,
                 double abs_tol);

} // namespace detail

} // namespace fracfem::fracops
