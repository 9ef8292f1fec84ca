#pragma once

// Adaptive Gauss-Legendre integration for smooth integrands. Nodes and
// weights are generated once by Newton iteration on the Legendre recurrence,
// so there are no hardcoded tables to mistype.

#include <array>
#include <cmath>
#include <stdexcept>

namespace linsde {

namespace detail {

template <int N>
struct GaussLegendreRule {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendreRule() {
        for (int i = 0; i < N; ++i) {
            double x = std::cos(3.14159265358979323846 * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            nodes[static_cast<std::size_t>(i)] = x;
            weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

template <class F>
double gl15(const F& f, double a, double b) {
    static const GaussLegendreRule<15> rule;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 15; ++i)
        s += rule.weights[static_cast<std::size_t>(i)] * f(mid + half * rule.nodes[static_cast<std::size_t>(i)]);
    return s * half;
}

template <class F>
double adaptive_gl(const F& f, double a, double b, double tol, int depth) {
    const double whole = gl15(f, a, b);
    const double mid = 0.5 * (a + b);
    const double split = gl15(f, a, mid) + gl15(f, mid, b);
    if (std::abs(whole - split) <= tol) return split;
    if (depth >= 40) throw std::runtime_error("adaptive quadrature failed to converge");
    return adaptive_gl(f, a, mid, 0.5 * tol, depth + 1) +
           adaptive_gl(f, mid, b, 0.5 * tol, depth + 1);
}

} // namespace detail

/// Integrates f over [a, b] to the given absolute tolerance.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be > 0");
    if (a == b) return 0.0;
    if (a > b) throw std::invalid_argument("integrate requires a <= b");
    return detail::adaptive_gl(f, a, b, abs_tol, 0);
}

} // namespace linsde
