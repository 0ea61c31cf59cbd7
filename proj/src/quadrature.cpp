#include "coalab/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace coalab::quad {

GaussRule gauss_jacobi_unit(std::size_t n, double a, double b) {
    if (n == 0) throw std::invalid_argument("gauss_jacobi_unit: need n >= 1");
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("gauss_jacobi_unit: need a, b > 0");
    // Jacobi polynomials P^(al,be) on [-1,1], weight (1-x)^al (1+x)^be, with
    // u = (1+x)/2 so that u^(a-1) pairs with (1+x)^be.
    const double al = b - 1.0;
    const double be = a - 1.0;
    const double ab = al + be;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double s = 2.0 * kk + ab;
        double diag;
        if (k == 0) diag = (be - al) / (ab + 2.0);
        else diag = (be * be - al * al) / (s * (s + 2.0));
        J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = diag;
        if (k + 1 < n) {
            const double m = kk + 1.0;
            const double t = 2.0 * m + ab;
            double off;
            if (k == 0) off = std::sqrt(4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab)));
            else off = std::sqrt(4.0 * m * (m + al) * (m + be) * (m + ab) / (t * t * (t + 1.0) * (t - 1.0)));
            J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + 1)) = off;
            J(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
    if (eig.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi_unit: eigen decomposition failed");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        rule.nodes[i] = 0.5 * (1.0 + eig.eigenvalues()(ii));
        const double v = eig.eigenvectors()(0, ii);
        rule.weights[i] = v * v;
        total += v * v;
    }
    for (auto& w : rule.weights) w /= total;
    return rule;
}

GaussRule gauss_legendre_unit(std::size_t n) { return gauss_jacobi_unit(n, 1.0, 1.0); }

double integrate(const std::function<double(double)>& f, double lo, double hi, double rel_tol, double* error) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, rel_tol, &err);
    if (error) *error = err;
    return v;
}

double integrate_to_infinity(const std::function<double(double)>& f, double lo, double rel_tol, double* error) {
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    const double v = integrator.integrate([&](double t) { return f(lo + t); }, 0.0,
                                          std::numeric_limits<double>::infinity(), rel_tol, &err);
    if (error) *error = err;
    return v;
}

}  // namespace coalab::quad
