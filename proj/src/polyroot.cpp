#include "ssfa/polyroot.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>

namespace ssfa {

namespace {

Complex poly_eval(const std::vector<Real>& c, const Complex& x, Complex* deriv) {
    // Horner on the monic polynomial and its derivative.
    const int n = int(c.size());
    Complex p(1), dp(0);
    for (int i = n - 1; i >= 0; --i) {
        dp = dp * x + p;
        p = p * x + Complex(c[std::size_t(i)]);
    }
    if (deriv) *deriv = dp;
    return p;
}

std::vector<Complex> companion_seeds(const std::vector<Real>& c) {
    const int n = int(c.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    bool finite = true;
    for (int i = 0; i < n; ++i) {
        double v = -double(c[std::size_t(i)]);
        if (!std::isfinite(v)) finite = false;
        m(i, n - 1) = v;
        if (i > 0) m(i, i - 1) = 1.0;
    }
    std::vector<Complex> seeds;
    seeds.reserve(std::size_t(n));
    if (finite) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
        if (es.info() == Eigen::Success) {
            for (int i = 0; i < n; ++i) {
                auto z = es.eigenvalues()(i);
                if (std::isfinite(z.real()) && std::isfinite(z.imag()))
                    seeds.emplace_back(Real(z.real()), Real(z.imag()));
            }
        }
    }
    if (int(seeds.size()) != n) {
        // Fallback: points on a circle bounding the roots, slightly detuned
        // off the axes so conjugate symmetry cannot trap the iteration.
        seeds.clear();
        Real radius = 1;
        for (const auto& ci : c) radius = std::max(radius, 1 + abs(ci));
        const Real pi = real_pi();
        for (int i = 0; i < n; ++i) {
            Real phi = 2 * pi * (Real(i) + Real("0.3219")) / n;
            seeds.emplace_back(radius * cos(phi), radius * sin(phi));
        }
    }
    return seeds;
}

}  // namespace

std::vector<Complex> monic_roots(const std::vector<Real>& c) {
    const int n = int(c.size());
    if (n == 0) return {};
    if (n == 1) return {Complex(-c[0])};

    std::vector<Complex> r = companion_seeds(c);
    const Real tol("1e-90");
    for (int iter = 0; iter < 400; ++iter) {
        Real worst = 0;
        for (int i = 0; i < n; ++i) {
            Complex dp;
            Complex p = poly_eval(c, r[std::size_t(i)], &dp);
            Complex repel(0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex d = r[std::size_t(i)] - r[std::size_t(j)];
                if (abs(d) == 0) d = Complex(Real("1e-50"));
                repel += Complex(1) / d;
            }
            Complex newton = (abs(dp) == 0) ? Complex(Real("1e-50")) : p / dp;
            Complex denom = Complex(1) - newton * repel;
            Complex step = (abs(denom) == 0) ? newton : newton / denom;
            r[std::size_t(i)] -= step;
            worst = std::max(worst, Real(abs(step) / (1 + abs(r[std::size_t(i)]))));
        }
        if (worst < tol) break;
    }
    return r;
}

}  // namespace ssfa
