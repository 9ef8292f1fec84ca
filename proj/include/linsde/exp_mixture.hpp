#pragma once

// Finite linear combinations of decaying exponentials sum c_i e^{-rho_i t}.
// Every transient moment formula in this project lands in this class, and its
// Laplace transform is exact, which is what the theta-domain cross-checks use.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace linsde {

struct ExpMixture {
    struct Term {
        double coeff;
        double rate; // >= 0; rate 0 is the constant term
    };

    std::vector<Term> terms;

    static ExpMixture constant(double c) { return ExpMixture{{{c, 0.0}}}; }

    double eval(double t) const {
        if (t < 0.0) throw std::invalid_argument("mixture defined for t >= 0");
        double v = 0.0;
        for (const auto& term : terms) v += term.coeff * std::exp(-term.rate * t);
        return v;
    }

    void add(double coeff, double rate) {
        if (rate < 0.0) throw std::invalid_argument("mixture rates must be >= 0");
        terms.push_back({coeff, rate});
    }

    /// Canonical form: rates sorted ascending, rates equal to within 1e-12
    /// absolute merged by summing coefficients, zero coefficients dropped.
    ExpMixture normalized() const {
        std::vector<Term> sorted = terms;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Term& a, const Term& b) { return a.rate < b.rate; });
        ExpMixture out;
        for (const auto& term : sorted) {
            if (!out.terms.empty() && std::abs(out.terms.back().rate - term.rate) <= 1e-12)
                out.terms.back().coeff += term.coeff;
            else
                out.terms.push_back(term);
        }
        std::erase_if(out.terms, [](const Term& t) { return t.coeff == 0.0; });
        return out;
    }

    ExpMixture scaled(double factor) const {
        ExpMixture out = *this;
        for (auto& term : out.terms) term.coeff *= factor;
        return out;
    }

    ExpMixture plus(const ExpMixture& other) const {
        ExpMixture out = *this;
        out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
        return out.normalized();
    }
};

/// int_0^inf e^{-theta t} f(t) dt = sum c_i / (theta + rho_i).
inline double laplace_of_mixture(const ExpMixture& m, double theta) {
    double v = 0.0;
    for (const auto& term : m.terms) {
        if (theta + term.rate <= 0.0)
            throw std::invalid_argument("laplace transform requires theta + rate > 0");
        v += term.coeff / (theta + term.rate);
    }
    return v;
}

} // namespace linsde
