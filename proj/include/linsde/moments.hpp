#pragma once

// Closed-form transient and stationary moments of X. The mean and second
// moment come straight from the exponent calculus; n-th moments for linear Y
// go through the pure-death transition row, either numerically robust
// (uniformization) or as an exact exponential mixture (distinct rates). The
// simplex recursion is the independent algebraic route to the same numbers.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "linsde/death_process.hpp"
#include "linsde/exp_mixture.hpp"
#include "linsde/model.hpp"

namespace linsde {

inline constexpr int kMaxMomentOrder = 12;

/// Raised by the simplex recursion when arguments are too close together for
/// the subtraction to retain any digits. Callers fall back to uniformization;
/// this is deliberate, not silent degradation.
class TiesError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Mean
// ---------------------------------------------------------------------------

/// EX_t = EX_0 e^{-EZ_1 t} + (EY_1/EZ_1)(1 - e^{-EZ_1 t}); valid for any
/// stationary-increment Y (only EY_1 enters) as long as Z is a subordinator.
/// Degenerates to EX_0 + EY_1 t when EZ_1 = 0.
inline double transient_mean(double ex0, double ey1, const SubordinatorSpec& z, double t) {
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    const double ez1 = z.mean_rate();
    if (ez1 == 0.0) return ex0 + ey1 * t;
    const double decay = std::exp(-ez1 * t);
    return ex0 * decay + (ey1 / ez1) * (1.0 - decay);
}

inline ExpMixture transient_mean_mixture(double ex0, double ey1, const SubordinatorSpec& z) {
    const double ez1 = z.mean_rate();
    if (ez1 == 0.0)
        throw std::domain_error("mean is linear in t when EZ_1 = 0; no exponential mixture");
    ExpMixture m;
    m.add(ey1 / ez1, 0.0);
    m.add(ex0 - ey1 / ez1, ez1);
    return m.normalized();
}

/// One sampled value of a function on a grid, with a confidence half-width.
struct SampledPoint {
    double s;
    double value;
    double half_width;
};

struct ValueWithError {
    double value;
    double half_width;
};

/// Mean formula for general stationary Y: EX_t = EX_0 phi(t) + EY_1
/// int_0^t phi(s) ds with phi(s) = E e^{-J_s} 1{N_s=0} supplied on a grid.
/// The integral is trapezoidal; the grid must cover [0, t]. Half-widths
/// propagate linearly through both terms.
inline ValueWithError transient_mean_numeric(double ex0, double ey1,
                                             std::span<const SampledPoint> phi, double t) {
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    if (phi.size() < 2) throw std::invalid_argument("phi grid needs at least two points");
    for (std::size_t i = 1; i < phi.size(); ++i)
        if (!(phi[i - 1].s < phi[i].s)) throw std::invalid_argument("phi grid must be increasing");
    if (phi.front().s > 0.0 || phi.back().s < t)
        throw std::invalid_argument("phi grid does not cover [0, t]");

    const auto interp = [&](double s) -> SampledPoint {
        std::size_t hi = 1;
        while (phi[hi].s < s) ++hi;
        const auto& a = phi[hi - 1];
        const auto& b = phi[hi];
        const double w = (s - a.s) / (b.s - a.s);
        return {s, a.value + w * (b.value - a.value),
                std::abs(1.0 - w) * a.half_width + std::abs(w) * b.half_width};
    };

    double integral = 0.0;
    double integral_hw = 0.0;
    SampledPoint prev = interp(0.0);
    for (std::size_t i = 0; i < phi.size() && phi[i].s <= t; ++i) {
        if (phi[i].s <= prev.s) continue;
        const double h = phi[i].s - prev.s;
        integral += 0.5 * h * (prev.value + phi[i].value);
        integral_hw += 0.5 * h * (prev.half_width + phi[i].half_width);
        prev = phi[i];
    }
    const SampledPoint at_t = interp(t);
    if (at_t.s > prev.s) {
        const double h = at_t.s - prev.s;
        integral += 0.5 * h * (prev.value + at_t.value);
        integral_hw += 0.5 * h * (prev.half_width + at_t.half_width);
    }
    return {ex0 * at_t.value + ey1 * integral,
            std::abs(ex0) * at_t.half_width + std::abs(ey1) * integral_hw};
}

// ---------------------------------------------------------------------------
// Second moment (Levy Y and Z, X_0 = 0)
// ---------------------------------------------------------------------------

namespace detail {

struct SecondMomentParams {
    double dy1;  // eta_y'(0)
    double dy2;  // eta_y''(0)
    double mu1;  // eta_z'(0)
    double mu2;  // 2 eta_z'(0) + eta_z''(0)
};

inline SecondMomentParams second_moment_params(const SubordinatorSpec& y,
                                               const SubordinatorSpec& z) {
    if (z.is_zero()) throw std::invalid_argument("second moment requires a nonzero Z spec");
    const auto dy = y.exponent_derivatives(2);
    const auto dz = z.exponent_derivatives(2);
    return {dy[0], dy[1], dz[0], 2.0 * dz[0] + dz[1]};
}

inline bool rates_tied(double mu1, double mu2) {
    return std::abs(mu2 - mu1) <= 1e-9 * std::max(mu1, std::abs(mu2));
}

} // namespace detail

/// Transient E X_t^2 for independent Levy Y, Z and X_0 = 0. The removable
/// singularity mu_2 = mu_1 (clearing-type Z hits it exactly) is handled by
/// the analytic limit, which carries a t e^{-mu_1 t} term.
inline double transient_second_moment(const SubordinatorSpec& y, const SubordinatorSpec& z,
                                      double t) {
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    const auto p = detail::second_moment_params(y, z);
    const double e1 = std::exp(-p.mu1 * t);
    const double e2 = std::exp(-p.mu2 * t);
    double bracket;
    if (detail::rates_tied(p.mu1, p.mu2)) {
        bracket = (1.0 - e1) / (p.mu1 * p.mu1) - t * e1 / p.mu1;
    } else {
        bracket = ((1.0 - e1) / p.mu1 - (1.0 - e2) / p.mu2) / (p.mu2 - p.mu1);
    }
    return 2.0 * p.dy1 * p.dy1 * bracket - p.dy2 * (1.0 - e2) / p.mu2;
}

/// Mixture form of the transient second moment; distinct mu_1, mu_2 only
/// (the tied case is not an exponential mixture).
inline ExpMixture transient_second_moment_mixture(const SubordinatorSpec& y,
                                                  const SubordinatorSpec& z) {
    const auto p = detail::second_moment_params(y, z);
    if (detail::rates_tied(p.mu1, p.mu2))
        throw std::domain_error("tied rates: second moment is not an exponential mixture");
    const double a = 2.0 * p.dy1 * p.dy1;
    ExpMixture m;
    m.add(a / (p.mu1 * p.mu2) - p.dy2 / p.mu2, 0.0);
    m.add(-a / ((p.mu2 - p.mu1) * p.mu1), p.mu1);
    m.add(a / ((p.mu2 - p.mu1) * p.mu2) + p.dy2 / p.mu2, p.mu2);
    return m.normalized();
}

/// Stationary limit (2(eta_y'(0))^2 - eta_z'(0) eta_y''(0)) /
/// (eta_z'(0) (2 eta_z'(0) + eta_z''(0))); the denominator equals mu_1 mu_2.
inline double stationary_second_moment(const SubordinatorSpec& y, const SubordinatorSpec& z) {
    const auto p = detail::second_moment_params(y, z);
    return (2.0 * p.dy1 * p.dy1 - p.mu1 * p.dy2) / (p.mu1 * p.mu2);
}

// ---------------------------------------------------------------------------
// n-th moments for linear Y (Theorem-3 route)
// ---------------------------------------------------------------------------

namespace detail {

/// n!/prod mu_i * (p_{n0} + sum_k (x^k prod_{i<=k} mu_i / k!) p_{nk}),
/// assembled from any transition row.
inline double moment_from_row(const std::vector<double>& mu, const std::vector<double>& row,
                              double x, int n) {
    double lead = 1.0;
    for (int i = 1; i <= n; ++i) lead *= static_cast<double>(i) / mu[static_cast<std::size_t>(i - 1)];
    double inner = row[0];
    double xk_prefix = 1.0; // x^k prod_{i<=k} mu_i / k!
    for (int k = 1; k <= n; ++k) {
        xk_prefix *= x * mu[static_cast<std::size_t>(k - 1)] / static_cast<double>(k);
        inner += xk_prefix * row[static_cast<std::size_t>(k)];
    }
    return lead * inner;
}

inline void check_moment_args(double x, int n, double r) {
    if (n < 1) throw std::invalid_argument("moment order must be >= 1");
    if (n > kMaxMomentOrder) throw std::invalid_argument("moment order exceeds configured maximum");
    if (x < 0.0) throw std::invalid_argument("initial value must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("growth rate r must be > 0");
}

} // namespace detail

/// E X_t^n for Y_t = r t, X_0 = x deterministic, Levy Z. Computed on the
/// normalized process X/r (death rates depend on Z only) and scaled by r^n.
inline double moment_linear_growth(double x, int n, double t, const SubordinatorSpec& z,
                                   double r) {
    detail::check_moment_args(x, n, r);
    const DeathModel model(z.death_rates(n));
    const auto row = death_transition_row(model, n, t);
    return detail::moment_from_row(model.rates, row, x / r, n) * std::pow(r, n);
}

/// Same moment as an exact exponential mixture (distinct death rates only).
inline ExpMixture moment_linear_growth_mixture(double x, int n, const SubordinatorSpec& z,
                                               double r) {
    detail::check_moment_args(x, n, r);
    const DeathModel model(z.death_rates(n));
    const auto rows = death_transition_row_mixture(model, n);

    double lead = 1.0;
    for (int i = 1; i <= n; ++i) lead *= static_cast<double>(i) / model.rates[static_cast<std::size_t>(i - 1)];
    ExpMixture m = rows[0].scaled(lead);
    double xk_prefix = 1.0;
    for (int k = 1; k <= n; ++k) {
        xk_prefix *= (x / r) * model.rates[static_cast<std::size_t>(k - 1)] / static_cast<double>(k);
        m = m.plus(rows[static_cast<std::size_t>(k)].scaled(lead * xk_prefix));
    }
    return m.scaled(std::pow(r, n)).normalized();
}

/// E X_T^n at an independent T ~ exp(theta), by the product formula
///   (n!/prod mu_i) (sum_k (x^k prod_{i<=k} mu_i / k!)(P_{k+1..n} - P_{k..n})
///                   + P_{1..n}),   P_{a..b} = prod_{i=a}^b mu_i/(mu_i+theta).
inline double moment_at_exponential_time(double x, int n, double theta, const DeathModel& model) {
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
    if (n < 1 || n > model.size()) throw std::invalid_argument("order outside model range");
    const auto& mu = model.rates;

    // suffix products of mu_i/(mu_i+theta); suffix[k] = P_{k+1..n} (0-based k)
    std::vector<double> suffix(static_cast<std::size_t>(n) + 1);
    suffix[static_cast<std::size_t>(n)] = 1.0;
    for (int i = n; i-- > 0;)
        suffix[static_cast<std::size_t>(i)] =
            mu[static_cast<std::size_t>(i)] / (mu[static_cast<std::size_t>(i)] + theta) *
            suffix[static_cast<std::size_t>(i) + 1];

    double lead = 1.0;
    for (int i = 1; i <= n; ++i) lead *= static_cast<double>(i) / mu[static_cast<std::size_t>(i - 1)];

    double inner = suffix[0];
    double xk_prefix = 1.0;
    for (int k = 1; k <= n; ++k) {
        xk_prefix *= x * mu[static_cast<std::size_t>(k - 1)] / static_cast<double>(k);
        const double ratio_k = mu[static_cast<std::size_t>(k - 1)] / (mu[static_cast<std::size_t>(k - 1)] + theta);
        inner += xk_prefix * suffix[static_cast<std::size_t>(k)] * (1.0 - ratio_k);
    }
    return lead * inner;
}

// ---------------------------------------------------------------------------
// Simplex recursion
// ---------------------------------------------------------------------------

namespace detail {

inline long double simplex_f_recurse(std::vector<long double> a) {
    if (a.empty()) return 1.0L; // empty integral over the 0-simplex
    const long double a1 = a.front();
    std::vector<long double> rest(a.begin() + 1, a.end());
    const long double left = simplex_f_recurse(rest);
    for (auto& v : rest) v -= a1;
    const long double right = simplex_f_recurse(std::move(rest));
    return (left - std::exp(-a1) * right) / a1;
}

inline long double simplex_g_recurse(std::vector<long double> b) {
    if (b.empty()) return 1.0L;
    const long double b1 = b.front();
    std::vector<long double> merged(b.begin() + 1, b.end());
    std::vector<long double> tail = merged;
    if (!merged.empty()) merged.front() += b1;
    const long double left = simplex_g_recurse(std::move(merged));
    const long double right = simplex_g_recurse(std::move(tail));
    return (left - std::exp(-b1) * right) / b1;
}

} // namespace detail

/// f_n(a_1..a_n) = integral of exp(-sum a_i x_i) over the standard simplex
/// {x_i >= 0, sum x_i <= 1}; f_0 = 1 and f_1(a) = (1-e^{-a})/a. Inputs are
/// sorted ascending before recursing (f_n is symmetric). Arguments closer
/// together than 1e-6, or a smallest argument below 1e-6, raise TiesError
/// because the recursion's subtraction then loses all significant digits.
/// Intermediate shifted arguments may go negative; the integral form extends
/// there and the recursion accepts them.
inline double simplex_f(std::span<const double> a) {
    std::vector<long double> sorted(a.begin(), a.end());
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && std::abs(static_cast<double>(sorted.front())) < 1e-6)
        throw TiesError("simplex recursion: smallest argument below tolerance");
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (static_cast<double>(sorted[i] - sorted[i - 1]) < 1e-6)
            throw TiesError("simplex recursion: argument gap below tolerance");
    return static_cast<double>(detail::simplex_f_recurse(std::move(sorted)));
}

/// g-form entry point: g_n(b_1..b_n) = f_n(b_1, b_1+b_2, ..., b_1+...+b_n),
/// evaluated by its own recursion. Gap arguments must each exceed 1e-6.
inline double simplex_g(std::span<const double> b) {
    for (double v : b)
        if (std::abs(v) < 1e-6) throw TiesError("simplex recursion: gap below tolerance");
    std::vector<long double> args(b.begin(), b.end());
    return static_cast<double>(detail::simplex_g_recurse(std::move(args)));
}

/// The recursion route to E X_t^n = r^n t^n n! f_n(mu_1 t, ..., mu_n t)
/// for X_0 = 0 and Y_t = r t. Throws TiesError exactly when simplex_f does.
inline double moment_simplex_route(int n, double t, const SubordinatorSpec& z, double r) {
    detail::check_moment_args(0.0, n, r);
    if (!(t > 0.0)) throw std::invalid_argument("t must be > 0 for the recursion route");
    auto mu = z.death_rates(n);
    for (auto& m : mu) m *= t;
    double factor = 1.0;
    for (int i = 1; i <= n; ++i) factor *= r * t * static_cast<double>(i);
    return factor * simplex_f(mu);
}

} // namespace linsde
