#pragma once

// Driving-subordinator model: jump-size distributions with closed-form
// moments, subordinator specifications (drift + compound-Poisson components),
// and the Laplace-exponent calculus used by every analytic formula downstream.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "linsde/rng.hpp"

namespace linsde {

enum class JumpKind { PointMass, Uniform, Exponential, Erlang };

/// Jump-size law for one compound-Poisson component. The catalog is fixed to
/// families whose moments and E[1-(1-X)^i] have closed forms, so no module
/// ever needs quadrature for the exponent calculus.
struct JumpDistribution {
    JumpKind kind = JumpKind::PointMass;
    double value = 1.0; // point mass location x, uniform bound b, or mean m
    int shape = 1;      // erlang stage count k

    static JumpDistribution point_mass(double x) {
        if (!(x > 0.0)) throw std::invalid_argument("point-mass jump requires x > 0");
        return {JumpKind::PointMass, x, 1};
    }
    static JumpDistribution uniform(double b) {
        if (!(b > 0.0)) throw std::invalid_argument("uniform jump requires b > 0");
        return {JumpKind::Uniform, b, 1};
    }
    static JumpDistribution exponential(double mean) {
        if (!(mean > 0.0)) throw std::invalid_argument("exponential jump requires mean > 0");
        return {JumpKind::Exponential, mean, 1};
    }
    static JumpDistribution erlang(int k, double mean) {
        if (k < 1) throw std::invalid_argument("erlang jump requires k >= 1");
        if (!(mean > 0.0)) throw std::invalid_argument("erlang jump requires mean > 0");
        return {JumpKind::Erlang, mean, k};
    }

    /// E[X^k], closed form, k >= 1.
    double moment(int k) const {
        if (k < 1) throw std::invalid_argument("moment order must be >= 1");
        switch (kind) {
        case JumpKind::PointMass:
            return std::pow(value, k);
        case JumpKind::Uniform:
            return std::pow(value, k) / (k + 1);
        case JumpKind::Exponential: {
            double m = 1.0;
            for (int i = 1; i <= k; ++i) m *= value * i;
            return m;
        }
        case JumpKind::Erlang: {
            // E[X^k] = (m/shape)^k * shape*(shape+1)*...*(shape+k-1)
            double m = 1.0;
            for (int i = 0; i < k; ++i) m *= (value / shape) * (shape + i);
            return m;
        }
        }
        throw std::logic_error("unreachable");
    }

    /// E[1 - e^{-alpha X}], the per-component integrand of the Laplace exponent.
    double exponent_term(double alpha) const {
        switch (kind) {
        case JumpKind::PointMass:
            return 1.0 - std::exp(-alpha * value);
        case JumpKind::Uniform: {
            const double u = alpha * value;
            if (std::abs(u) < 1e-6) {
                // series for 1 - (1-e^{-u})/u, avoids 0/0 as u -> 0
                return u / 2.0 - u * u / 6.0 + u * u * u / 24.0;
            }
            return 1.0 - (1.0 - std::exp(-u)) / u;
        }
        case JumpKind::Exponential:
            return alpha * value / (1.0 + alpha * value);
        case JumpKind::Erlang:
            return 1.0 - std::pow(1.0 + alpha * value / shape, -shape);
        }
        throw std::logic_error("unreachable");
    }

    /// E[1 - (1-X)^i]; defined only for support inside (0,1].
    double collapse_moment(int i) const {
        if (i < 0) throw std::invalid_argument("collapse moment order must be >= 0");
        switch (kind) {
        case JumpKind::PointMass:
            if (value > 1.0) throw std::domain_error("collapse moment needs support in (0,1]");
            return 1.0 - std::pow(1.0 - value, i);
        case JumpKind::Uniform: {
            if (value > 1.0) throw std::domain_error("collapse moment needs support in (0,1]");
            // 1 - (1/b) * int_0^b (1-x)^i dx
            const double b = value;
            return 1.0 - (1.0 - std::pow(1.0 - b, i + 1)) / (b * (i + 1));
        }
        case JumpKind::Exponential:
        case JumpKind::Erlang:
            throw std::domain_error("collapse moment needs support in (0,1]");
        }
        throw std::logic_error("unreachable");
    }

    /// True when the support is contained in (0,1] (admissible as a Z jump).
    bool bounded_by_one() const {
        switch (kind) {
        case JumpKind::PointMass:
        case JumpKind::Uniform:
            return value <= 1.0;
        case JumpKind::Exponential:
        case JumpKind::Erlang:
            return false;
        }
        return false;
    }

    double sample(RngStream& rng) const {
        switch (kind) {
        case JumpKind::PointMass:
            return value;
        case JumpKind::Uniform:
            return value * rng.uniform01();
        case JumpKind::Exponential:
            return rng.exponential(value);
        case JumpKind::Erlang: {
            double s = 0.0;
            for (int i = 0; i < shape; ++i) s += rng.exponential(value / shape);
            return s;
        }
        }
        throw std::logic_error("unreachable");
    }
};

/// One compound-Poisson component: jumps at Poisson epochs of the given rate,
/// sizes i.i.d. from dist.
struct JumpComponent {
    double rate = 1.0;
    JumpDistribution dist;
};

/// Finite-activity subordinator: deterministic drift plus finitely many
/// compound-Poisson components. Used for both Y and Z.
struct SubordinatorSpec {
    double drift = 0.0;
    std::vector<JumpComponent> components;

    bool is_zero() const { return drift == 0.0 && components.empty(); }

    double total_jump_rate() const {
        double r = 0.0;
        for (const auto& c : components) r += c.rate;
        return r;
    }

    /// E Z_1 = drift + sum of rate * mean jump; equals eta'(0).
    double mean_rate() const {
        double m = drift;
        for (const auto& c : components) m += c.rate * c.dist.moment(1);
        return m;
    }

    /// Laplace exponent eta(alpha) = drift*alpha + sum rate * E[1-e^{-alpha X}].
    double exponent(double alpha) const {
        if (alpha < 0.0) throw std::invalid_argument("exponent requires alpha >= 0");
        double e = drift * alpha;
        for (const auto& c : components) e += c.rate * c.dist.exponent_term(alpha);
        return e;
    }

    /// [eta'(0), eta''(0), ..., eta^{(k_max)}(0)].
    /// eta'(0) = drift + sum rate*m1; eta^{(k)}(0) = (-1)^{k-1} sum rate*m_k.
    std::vector<double> exponent_derivatives(int k_max) const {
        if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
        std::vector<double> d(static_cast<std::size_t>(k_max));
        d[0] = mean_rate();
        for (int k = 2; k <= k_max; ++k) {
            double s = 0.0;
            for (const auto& c : components) s += c.rate * c.dist.moment(k);
            d[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? -s : s;
        }
        return d;
    }

    /// nu{1}: total rate of point-mass components sitting exactly at 1.
    double atom_rate_at_one() const {
        double r = 0.0;
        for (const auto& c : components)
            if (c.dist.kind == JumpKind::PointMass && c.dist.value == 1.0) r += c.rate;
        return r;
    }

    /// Pure-death rates mu_i = drift*i + sum rate * E[1-(1-X)^i], i = 1..n,
    /// computed by the direct integral form (the alternating binomial sum
    /// cancels catastrophically for large i and is used only as a test oracle).
    std::vector<double> death_rates(int n) const {
        if (n < 1) throw std::invalid_argument("death_rates requires n >= 1");
        if (is_zero()) throw std::invalid_argument("death_rates requires a nonzero Z spec");
        std::vector<double> mu(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
            double m = drift * i;
            for (const auto& c : components) m += c.rate * c.dist.collapse_moment(i);
            mu[static_cast<std::size_t>(i - 1)] = m;
        }
        return mu;
    }
};

/// The pair (Y, Z) driving X_t = X_0 + Y_t - int X_{s-} dZ_s.
struct DriverPair {
    SubordinatorSpec y;
    SubordinatorSpec z;
};

namespace detail {

inline void validate_subordinator(const SubordinatorSpec& s, const char* name) {
    if (!(s.drift >= 0.0) || std::isnan(s.drift))
        throw std::invalid_argument(std::string(name) + ": drift must be >= 0");
    for (const auto& c : s.components) {
        if (!(c.rate > 0.0))
            throw std::invalid_argument(std::string(name) + ": component rate must be > 0");
    }
}

} // namespace detail

/// Checks the standing model assumptions: nonnegative drifts, positive rates,
/// and every Z jump supported inside (0,1]. Returns the pair unchanged.
inline const DriverPair& validate_pair(const DriverPair& pair) {
    detail::validate_subordinator(pair.y, "y");
    detail::validate_subordinator(pair.z, "z");
    for (const auto& c : pair.z.components) {
        if (!c.dist.bounded_by_one()) {
            if (c.dist.kind == JumpKind::Exponential || c.dist.kind == JumpKind::Erlang)
                throw std::invalid_argument("z: jump distribution has unbounded support; "
                                            "Z jumps must lie in (0,1]");
            throw std::invalid_argument("z: jump support exceeds 1; Z jumps must lie in (0,1]");
        }
    }
    return pair;
}

} // namespace linsde
