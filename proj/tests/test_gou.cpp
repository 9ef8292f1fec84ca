#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "linsde/gou.hpp"
#include "linsde/rng.hpp"

using namespace linsde;
using Catch::Approx;

TEST_CASE("gaussian-Z validation") {
    GaussianZSpec ok{1.0, 0.5, {}};
    CHECK_NOTHROW(validate_gaussian_z(ok));
    GaussianZSpec negative_sigma{1.0, -0.1, {}};
    CHECK_THROWS_AS(validate_gaussian_z(negative_sigma), std::invalid_argument);
    GaussianZSpec total{1.0, 0.5, {{1.0, JumpDistribution::point_mass(1.0)}}};
    CHECK_THROWS_AS(validate_gaussian_z(total), std::invalid_argument);
    RngStream rng(1, 0);
    CHECK_THROWS_AS(simulate_gou_discrete(1.0, ok, 0.0, 0.3, 1.0, rng), std::invalid_argument);
}

TEST_CASE("sigma = 0: O(h) convergence to the exact ODE") {
    const GaussianZSpec gz{1.0, 0.0, {}};
    const double r = 1.0;
    const auto exact = [&](double t) { return (r / gz.drift) * (1.0 - std::exp(-gz.drift * t)); };

    std::vector<double> errors;
    for (int level = 3; level <= 8; ++level) {
        const double h = std::pow(2.0, -level);
        RngStream rng(1, 0);
        const GouPath path = simulate_gou_discrete(r, gz, 0.0, h, 1.0, rng);
        double worst = 0.0;
        for (std::size_t k = 0; k < path.values.size(); ++k)
            worst = std::max(worst, std::abs(path.values[k] - exact(static_cast<double>(k) * h)));
        errors.push_back(worst);
    }
    for (std::size_t i = 1; i < errors.size(); ++i) {
        const double ratio = errors[i - 1] / errors[i];
        CHECK(ratio > 1.5);
        CHECK(ratio < 3.0);
    }
}

TEST_CASE("E[U_step] = e^{-a h} without jumps") {
    const GaussianZSpec gz{1.0, 0.5, {}};
    const double h = 0.1;
    RngStream rng(9, 0);
    const int n = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = gou_step_factor(gz, h, rng);
        sum += u;
        sum_sq += u * u;
    }
    const double mean = sum / n;
    const double var = (sum_sq - n * mean * mean) / (n - 1.0);
    const double se = std::sqrt(var / n);
    CHECK(std::abs(mean - std::exp(-gz.drift * h)) < 4.0 * se);
}

TEST_CASE("mean curve is sigma-independent: E X_1 matches the ODE solution") {
    const GaussianZSpec gz{1.0, 0.5, {}};
    const double h = 1.0 / 256.0;
    const std::size_t reps = 40000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        RngStream rng(13, i);
        const GouPath path = simulate_gou_discrete(1.0, gz, 0.0, h, 1.0, rng);
        const double x = path.values.back();
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / static_cast<double>(reps);
    const double var =
        (sum_sq - static_cast<double>(reps) * mean * mean) / (static_cast<double>(reps) - 1.0);
    const double ci = 2.5758 * std::sqrt(var / static_cast<double>(reps));
    const double target = 1.0 - std::exp(-1.0);
    // the left-endpoint scheme carries an O(h) mean bias well inside this CI
    CHECK(std::abs(mean - target) < ci + 2.0 * h);
}

TEST_CASE("jump components multiply into the step kernel") {
    // E[U_step] = e^{-a h} E prod(1-q) = e^{-a h - rate h E[q]} for compound
    // Poisson collapses inside the step
    GaussianZSpec gz{0.8, 0.3, {{1.5, JumpDistribution::uniform(0.6)}}};
    const double h = 0.2;
    const double expected = std::exp(-gz.drift * h - 1.5 * h * 0.3); // E[q] = 0.3
    RngStream rng(31, 0);
    const int n = 400000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = gou_step_factor(gz, h, rng);
        sum += u;
        sum_sq += u * u;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq - n * mean * mean) / (n - 1.0) / n);
    CHECK(std::abs(mean - expected) < 4.0 * se);

    // mean curve decays at the effective rate a + rate E[q]
    const double eff = gz.drift + 1.5 * 0.3;
    const std::size_t reps = 20000;
    double path_sum = 0.0, path_sq = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        RngStream r2(32, i);
        const GouPath path = simulate_gou_discrete(1.0, gz, 0.0, 1.0 / 128.0, 1.0, r2);
        path_sum += path.values.back();
        path_sq += path.values.back() * path.values.back();
    }
    const double pmean = path_sum / static_cast<double>(reps);
    const double pvar = (path_sq - static_cast<double>(reps) * pmean * pmean) /
                        (static_cast<double>(reps) - 1.0);
    const double ci = 2.5758 * std::sqrt(pvar / static_cast<double>(reps));
    const double target = (1.0 / eff) * (1.0 - std::exp(-eff));
    CHECK(std::abs(pmean - target) < ci + 2.0 / 128.0);
}

TEST_CASE("matched normals reproduce the rng-driven path") {
    const GaussianZSpec gz{0.7, 0.4, {}};
    const double h = 0.125;
    std::vector<double> normals;
    RngStream noise(21, 0);
    for (int k = 0; k < 8; ++k) normals.push_back(noise.normal());

    RngStream rng(21, 0);
    const GouPath a = simulate_gou_discrete(1.0, gz, 0.3, h, 1.0, rng);
    const GouPath b = simulate_gou_discrete(1.0, gz, 0.3, h, 1.0, normals);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t k = 0; k < a.values.size(); ++k)
        CHECK(a.values[k] == Approx(b.values[k]).epsilon(1e-15));
}
