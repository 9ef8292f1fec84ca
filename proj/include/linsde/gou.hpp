#pragma once

// Discretized engine for generalized Ornstein-Uhlenbeck dynamics where the
// decay driver carries a Brownian component, so the solution kernel picks up
// the -(1/2)[Z,Z]^c correction: across one step of length h,
//   U = exp(sigma sqrt(h) xi - a h - sigma^2 h / 2) * prod (1 - q_j)
// over the step's collapse jumps. The dY integral uses the left-endpoint
// rule, X_{k+1} = U (X_k + r h), which is the whole source of the engine's
// O(h) error; the multiplicative kernel itself is exact at grid points.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "linsde/model.hpp"
#include "linsde/rng.hpp"

namespace linsde {

/// Decay driver with Brownian part: drift a per unit time, volatility sigma,
/// plus optional finite-activity collapse components with support in (0,1).
/// Total collapses (atoms at 1) combined with a Brownian part are not
/// supported; the exact event-driven engine covers the sigma = 0 case.
struct GaussianZSpec {
    double drift = 0.0;
    double sigma = 0.0;
    std::vector<JumpComponent> jumps;
};

inline const GaussianZSpec& validate_gaussian_z(const GaussianZSpec& gz) {
    if (!(gz.sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
    for (const auto& c : gz.jumps) {
        if (!(c.rate > 0.0)) throw std::invalid_argument("component rate must be > 0");
        if (!c.dist.bounded_by_one())
            throw std::invalid_argument("gaussian-Z jumps must lie in (0,1]");
        if (c.dist.kind == JumpKind::PointMass && c.dist.value == 1.0)
            throw std::invalid_argument("gaussian-Z engine does not support total collapses");
    }
    return gz;
}

struct GouPath {
    double step = 0.0;
    std::vector<double> values; // X at t = k*step, k = 0..K
};

namespace detail {

inline std::size_t gou_step_count(double h, double horizon) {
    if (!(h > 0.0)) throw std::invalid_argument("step size must be > 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    const double steps = horizon / h;
    const auto k = static_cast<std::size_t>(std::llround(steps));
    if (k == 0 || std::abs(steps - static_cast<double>(k)) > 1e-9)
        throw std::invalid_argument("horizon must be an integer multiple of h");
    return k;
}

inline double gou_jump_factor(const GaussianZSpec& gz, double h, RngStream& rng) {
    double factor = 1.0;
    for (const auto& comp : gz.jumps) {
        double t = rng.exponential(1.0 / comp.rate);
        while (t <= h) {
            factor *= 1.0 - comp.dist.sample(rng);
            t += rng.exponential(1.0 / comp.rate);
        }
    }
    return factor;
}

} // namespace detail

/// One step's multiplicative kernel; E[factor] = e^{-a h} when there are no
/// jumps (lognormal mean identity).
inline double gou_step_factor(const GaussianZSpec& gz, double h, RngStream& rng) {
    const double gaussian = gz.sigma * std::sqrt(h) * rng.normal() - gz.drift * h -
                            0.5 * gz.sigma * gz.sigma * h;
    return std::exp(gaussian) * detail::gou_jump_factor(gz, h, rng);
}

/// Euler-type grid simulation of X driven by growth rate r and the Gaussian
/// decay driver. Draw order per step: one standard normal, then each jump
/// component's arrivals. The horizon must be an integer multiple of h.
inline GouPath simulate_gou_discrete(double r, const GaussianZSpec& gz, double x0, double h,
                                     double horizon, RngStream& rng) {
    validate_gaussian_z(gz);
    const std::size_t steps = detail::gou_step_count(h, horizon);
    GouPath path;
    path.step = h;
    path.values.reserve(steps + 1);
    path.values.push_back(x0);
    double x = x0;
    for (std::size_t k = 0; k < steps; ++k) {
        x = gou_step_factor(gz, h, rng) * (x + r * h);
        path.values.push_back(x);
    }
    return path;
}

/// Same scheme with externally supplied standard normals (one per step), for
/// matched-noise convergence studies. Jump components are not allowed here.
inline GouPath simulate_gou_discrete(double r, const GaussianZSpec& gz, double x0, double h,
                                     double horizon, std::span<const double> normals) {
    validate_gaussian_z(gz);
    if (!gz.jumps.empty())
        throw std::invalid_argument("matched-noise overload requires a jump-free spec");
    const std::size_t steps = detail::gou_step_count(h, horizon);
    if (normals.size() < steps) throw std::invalid_argument("not enough normals supplied");
    GouPath path;
    path.step = h;
    path.values.reserve(steps + 1);
    path.values.push_back(x0);
    double x = x0;
    for (std::size_t k = 0; k < steps; ++k) {
        const double kernel = std::exp(gz.sigma * std::sqrt(h) * normals[k] - gz.drift * h -
                                       0.5 * gz.sigma * gz.sigma * h);
        x = kernel * (x + r * h);
        path.values.push_back(x);
    }
    return path;
}

} // namespace linsde
