#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace coalab::quad {

struct GaussRule {
    std::vector<double> nodes;    // in (0,1)
    std::vector<double> weights;  // sum to 1
};

/// n-point Gauss rule for the probability density proportional to
/// u^(a-1) (1-u)^(b-1) on (0,1), by Golub-Welsch. Exact for polynomials of
/// degree <= 2n-1.
GaussRule gauss_jacobi_unit(std::size_t n, double a, double b);

/// Gauss-Legendre on (0,1) with weights summing to 1.
GaussRule gauss_legendre_unit(std::size_t n);

/// Adaptive Gauss-Kronrod (61 points) on a finite interval.
double integrate(const std::function<double(double)>& f, double lo, double hi, double rel_tol = 1e-12,
                 double* error = nullptr);

/// Adaptive integral over [lo, infinity).
double integrate_to_infinity(const std::function<double(double)>& f, double lo, double rel_tol = 1e-12,
                             double* error = nullptr);

}  // namespace coalab::quad
