#pragma once

// Transition probabilities of the pure death process on {0,...,n} with death
// rates mu_i (state 0 absorbing). The primary algorithm is uniformization,
// which is robust to tied rates; the partial-fraction exponential mixture is
// the distinct-rate secondary route used for cross-checks and for producing
// closed-form moment curves.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "linsde/exp_mixture.hpp"
#include "linsde/model.hpp"

namespace linsde {

/// Death rates mu_1..mu_n, positive and nondecreasing.
struct DeathModel {
    std::vector<double> rates;

    explicit DeathModel(std::vector<double> mu) : rates(std::move(mu)) {
        if (rates.empty()) throw std::invalid_argument("death model needs at least one rate");
        for (std::size_t i = 0; i < rates.size(); ++i) {
            if (!(rates[i] > 0.0)) throw std::invalid_argument("death rates must be > 0");
            if (i > 0 && rates[i] < rates[i - 1] * (1.0 - 1e-12))
                throw std::invalid_argument("death rates must be nondecreasing");
        }
    }

    static DeathModel from_spec(const SubordinatorSpec& z, int n) {
        return DeathModel(z.death_rates(n));
    }

    int size() const { return static_cast<int>(rates.size()); }

    bool rates_distinct(double rel_tol = 1e-9) const {
        for (std::size_t i = 1; i < rates.size(); ++i)
            if (rates[i] - rates[i - 1] <= rel_tol * rates[i]) return false;
        return true;
    }
};

/// Row [p_{n,0}(t), ..., p_{n,n}(t)] of the transition matrix, starting from
/// state `start`, via uniformization at rate Lambda = max mu_i. The Poisson
/// series stops past the mode once the geometric tail bound
/// w_k * r/(1-r), r = a/(k+1), falls below 1e-15 and the weight itself below
/// 1e-22; the second clause keeps entries as small as 1e-8 relatively
/// accurate (the chain only moves mass downward, so every row entry is a sum
/// of positive contributions and carries no cancellation of its own).
/// Weights are computed term-by-term in log space so no Lambda*t underflows.
inline std::vector<double> death_transition_row(const DeathModel& model, int start, double t) {
    if (t < 0.0) throw std::invalid_argument("transition time must be >= 0");
    if (start < 0 || start > model.size())
        throw std::invalid_argument("start state outside {0,...,n}");

    std::vector<double> row(static_cast<std::size_t>(start) + 1, 0.0);
    if (start == 0) {
        row[0] = 1.0;
        return row;
    }

    double lambda = 0.0;
    for (int i = 0; i < start; ++i) lambda = std::max(lambda, model.rates[static_cast<std::size_t>(i)]);
    const double a = lambda * t;
    if (a == 0.0) {
        row[static_cast<std::size_t>(start)] = 1.0;
        return row;
    }

    // v = distribution of the uniformized discrete chain after k steps
    std::vector<double> v(static_cast<std::size_t>(start) + 1, 0.0);
    v[static_cast<std::size_t>(start)] = 1.0;
    std::vector<double> next(v.size());

    const double log_a = std::log(a);
    const long k_max = static_cast<long>(a + 40.0 * std::sqrt(a + 1.0) + 200.0);
    for (long k = 0; k <= k_max; ++k) {
        const double w = std::exp(static_cast<double>(k) * log_a - a - std::lgamma(static_cast<double>(k) + 1.0));
        for (std::size_t i = 0; i < v.size(); ++i) row[i] += w * v[i];
        const double ratio = a / static_cast<double>(k + 1);
        if (ratio < 1.0 && w * ratio / (1.0 - ratio) < 1e-15 && w < 1e-22) return row;

        next[0] = v[0] + v[1] * (model.rates[0] / lambda);
        for (std::size_t i = 1; i < v.size(); ++i) {
            double stay = v[i] * (1.0 - model.rates[i - 1] / lambda);
            if (i + 1 < v.size()) stay += v[i + 1] * (model.rates[i] / lambda);
            next[i] = stay;
        }
        v.swap(next);
    }
    throw std::runtime_error("uniformization series failed to converge");
}

namespace detail {

/// CDF of sum_{i in [k,n]} Exp(mu_i) as 1 - sum A_i e^{-mu_i t},
/// A_i = prod_{j != i} mu_j / (mu_j - mu_i). Distinct rates required.
inline ExpMixture hypoexponential_cdf_mixture(const std::vector<double>& mu,
                                              std::size_t k, std::size_t n) {
    ExpMixture cdf = ExpMixture::constant(1.0);
    for (std::size_t i = k; i <= n; ++i) {
        double coeff = 1.0;
        for (std::size_t j = k; j <= n; ++j) {
            if (j == i) continue;
            coeff *= mu[j] / (mu[j] - mu[i]);
        }
        cdf.add(-coeff, mu[i]);
    }
    return cdf;
}

} // namespace detail

/// Exponential-mixture form of the transition row, distinct rates only:
/// p_{n,k}(t) = P[H_{k+1} <= t] - P[H_k <= t] where H_k is the hypoexponential
/// sum of the sojourns in states n..k. Throws on (near-)tied rates; callers
/// needing tied-rate rows use the uniformization route.
inline std::vector<ExpMixture> death_transition_row_mixture(const DeathModel& model, int start) {
    if (start < 1 || start > model.size())
        throw std::invalid_argument("start state outside {1,...,n}");
    const auto n = static_cast<std::size_t>(start);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(model.rates[i] - model.rates[j]) <=
                1e-9 * std::max(model.rates[i], model.rates[j]))
                throw std::domain_error("tied death rates: mixture route unavailable");

    std::vector<ExpMixture> cdf(n + 2);
    for (std::size_t k = 1; k <= n; ++k)
        cdf[k] = detail::hypoexponential_cdf_mixture(model.rates, k - 1, n - 1);
    cdf[n + 1] = ExpMixture::constant(1.0);

    std::vector<ExpMixture> row(n + 1);
    row[0] = cdf[1].normalized();
    for (std::size_t k = 1; k <= n; ++k)
        row[k] = cdf[k + 1].plus(cdf[k].scaled(-1.0));
    return row;
}

} // namespace linsde
