#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <vector>

#include "linsde/events.hpp"
#include "linsde/model.hpp"
#include "linsde/path.hpp"
#include "linsde/rng.hpp"
#include "test_support.hpp"

using namespace linsde;
using Catch::Approx;

namespace {

EventStream stream_of(double horizon, std::vector<Event> events) {
    return EventStream{horizon, std::move(events)};
}

DriverPair drift_pair(double r, double c) {
    DriverPair pair;
    pair.y.drift = r;
    pair.z.drift = c;
    return pair;
}

} // namespace

TEST_CASE("evolve: pure ODE, clearing reset, and jump arithmetic") {
    // r=1, c=1, no events: X_1 = 1 - e^{-1}
    const auto ode = evolve(0.0, drift_pair(1.0, 1.0), stream_of(2.0, {}), 2.0);
    CHECK(ode.eval(1.0) == Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));

    // x0=5, r=1, c=0, total collapse at t=2: X_3 = 1
    const auto clearing = evolve(5.0, drift_pair(1.0, 0.0),
                                 stream_of(3.0, {{2.0, EventSource::Z, 1.0}}), 3.0);
    CHECK(clearing.eval_left(2.0) == Approx(7.0));
    CHECK(clearing.eval(3.0) == Approx(1.0));

    // x0=1, no drifts, +2 at t=1, halve at t=1.5: X_2 = 1.5
    const auto jumps = evolve(1.0, drift_pair(0.0, 0.0),
                              stream_of(2.0,
                                        {{1.0, EventSource::Y, 2.0},
                                         {1.5, EventSource::Z, 0.5}}),
                              2.0);
    CHECK(jumps.eval(2.0) == Approx(1.5));
}

TEST_CASE("evolve: simultaneous Y/Z events collapse first, then add") {
    // X_{1-} = 3; atom at t=1 carries both a collapse by 0.5 and a +2 jump:
    // X_1 = 3*0.5 + 2 = 3.5
    const auto path = evolve(3.0, drift_pair(0.0, 0.0),
                             stream_of(2.0,
                                       {{1.0, EventSource::Z, 0.5},
                                        {1.0, EventSource::Y, 2.0}}),
                             2.0);
    CHECK(path.eval(1.0) == Approx(3.5));
    // representation agrees on the same stream
    const double repr = representation_eval(3.0, drift_pair(0.0, 0.0),
                                            stream_of(2.0,
                                                      {{1.0, EventSource::Z, 0.5},
                                                       {1.0, EventSource::Y, 2.0}}),
                                            1.0);
    CHECK(repr == Approx(3.5));
}

TEST_CASE("events exactly at the evaluation time and at the horizon") {
    // cadlag convention: the value at an event time includes the jump
    const auto at_t = evolve(1.0, drift_pair(0.0, 0.0),
                             stream_of(2.0, {{1.5, EventSource::Y, 2.0}}), 2.0);
    CHECK(at_t.eval(1.5) == Approx(3.0));
    CHECK(at_t.eval_left(1.5) == Approx(1.0));
    CHECK(representation_eval(1.0, drift_pair(0.0, 0.0),
                              stream_of(2.0, {{1.5, EventSource::Y, 2.0}}), 1.5) == Approx(3.0));

    const auto z_at_t = stream_of(2.0, {{1.5, EventSource::Z, 0.5}});
    CHECK(evolve(1.0, drift_pair(0.0, 0.0), z_at_t, 2.0).eval(1.5) == Approx(0.5));
    CHECK(representation_eval(1.0, drift_pair(0.0, 0.0), z_at_t, 1.5) == Approx(0.5));

    // an event landing exactly on the horizon is legal
    const auto at_horizon = stream_of(2.0, {{2.0, EventSource::Y, 1.0}});
    CHECK(evolve(0.0, drift_pair(1.0, 0.0), at_horizon, 2.0).eval(2.0) == Approx(3.0));
}

TEST_CASE("evolve rejects bad streams") {
    CHECK_THROWS_AS(evolve(0.0, drift_pair(1.0, 0.0),
                           stream_of(1.0, {{2.0, EventSource::Y, 1.0}}), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve(0.0, drift_pair(1.0, 0.0),
                           stream_of(1.0, {{0.5, EventSource::Y, -1.0}}), 1.0),
                    std::invalid_argument);
    // two Z atoms at one instant summing above 1
    CHECK_THROWS_AS(evolve(0.0, drift_pair(1.0, 0.0),
                           stream_of(1.0,
                                     {{0.5, EventSource::Z, 0.7},
                                      {0.5, EventSource::Z, 0.7}}),
                           1.0),
                    std::invalid_argument);
}

TEST_CASE("u_factor closed forms") {
    const auto empty = stream_of(2.0, {});
    CHECK(u_factor(empty, 1.0, 1.5, 1.5) == 1.0);

    const auto one = stream_of(2.0, {{1.0, EventSource::Z, 0.5}});
    CHECK(u_factor(one, 1.0, 0.0, 2.0) == Approx(std::exp(-2.0) * 0.5).epsilon(1e-14));
    // event exactly at u is excluded; event exactly at t is included
    CHECK(u_factor(one, 0.0, 1.0, 2.0) == 1.0);
    CHECK(u_factor(one, 0.0, 0.5, 1.0) == Approx(0.5));

    const auto total = stream_of(2.0, {{1.0, EventSource::Z, 1.0}});
    CHECK(u_factor(total, 0.0, 0.5, 1.5) == 0.0);

    CHECK_THROWS_AS(u_factor(empty, 1.0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("u_factor multiplicativity over random streams") {
    RngStream rng(11, 0);
    for (int trial = 0; trial < 25; ++trial) {
        const DriverPair pair = testing::random_pair(rng);
        const EventStream ev = sample_events(pair, 10.0, rng);
        for (int i = 0; i < 20; ++i) {
            double u = 10.0 * rng.uniform01();
            double s = 10.0 * rng.uniform01();
            double t = 10.0 * rng.uniform01();
            if (u > s) std::swap(u, s);
            if (s > t) std::swap(s, t);
            if (u > s) std::swap(u, s);
            const double whole = u_factor(ev, pair.z.drift, u, t);
            const double split = u_factor(ev, pair.z.drift, u, s) * u_factor(ev, pair.z.drift, s, t);
            CHECK(whole == Approx(split).margin(1e-12).epsilon(1e-12));
        }
    }
}

TEST_CASE("representation equals evolve on randomized scenarios") {
    RngStream rng(17, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const DriverPair pair = testing::random_pair(rng);
        const double x0 = 5.0 * rng.uniform01();
        const EventStream ev = sample_events(pair, 10.0, rng);
        const Path path = evolve(x0, pair, ev, 10.0);
        for (int i = 0; i < 100; ++i) {
            const double t = 10.0 * rng.uniform01();
            const double direct = path.eval(t);
            const double repr = representation_eval(x0, pair, ev, t);
            REQUIRE(std::abs(direct - repr) <= 1e-10 * (1.0 + std::abs(direct)));
        }
    }
}

TEST_CASE("fixed-point residual stays at solver precision") {
    const DriverPair gc{SubordinatorSpec{1.0, {}},
                        SubordinatorSpec{0.0, {{1.0, JumpDistribution::point_mass(0.5)}}}};
    RngStream rng(23, 0);
    const EventStream ev = sample_events(gc, 10.0, rng);
    const Path path = evolve(0.0, gc, ev, 10.0);
    CHECK(residual_check(path, ev, gc) <= 1e-10);

    const DriverPair clearing{SubordinatorSpec{1.0, {}},
                              SubordinatorSpec{0.0, {{1.0, JumpDistribution::point_mass(1.0)}}}};
    const EventStream cev = sample_events(clearing, 10.0, rng);
    const Path cpath = evolve(0.0, clearing, cev, 10.0);
    CHECK(residual_check(cpath, cev, clearing) <= 1e-10);

    const auto no_events = evolve(1.0, drift_pair(0.7, 1.3), stream_of(5.0, {}), 5.0);
    CHECK(residual_check(no_events, stream_of(5.0, {}), drift_pair(0.7, 1.3)) <= 1e-12);
}

TEST_CASE("paths stay nonnegative and respond monotonically to x0") {
    RngStream rng(31, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const DriverPair pair = testing::random_pair(rng);
        const EventStream ev = sample_events(pair, 10.0, rng);
        const Path low = evolve(0.0, pair, ev, 10.0);
        const Path high = evolve(0.5 + 2.0 * rng.uniform01(), pair, ev, 10.0);
        for (int i = 0; i <= 50; ++i) {
            const double t = 10.0 * i / 50.0;
            CHECK(low.eval(t) >= 0.0);
            CHECK(high.eval(t) >= low.eval(t) - 1e-12);
        }
    }
}

TEST_CASE("sample_events: empty pair, Poisson count law, determinism") {
    RngStream rng(41, 0);
    CHECK(sample_events(drift_pair(1.0, 1.0), 5.0, rng).events.empty());

    // empirical mean event count for rate 0.8 over horizon 5 within 4 se
    DriverPair pair = drift_pair(0.0, 0.0);
    pair.y.components.push_back({0.8, JumpDistribution::point_mass(1.0)});
    const int reps = 100000;
    double count = 0.0;
    for (int i = 0; i < reps; ++i) {
        RngStream r(41, static_cast<std::uint64_t>(i) + 1);
        count += static_cast<double>(sample_events(pair, 5.0, r).events.size());
    }
    const double mean = count / reps;
    const double se = std::sqrt(4.0 / reps); // Var = lambda T = 4
    CHECK(std::abs(mean - 4.0) < 4.0 * se);

    // bit-identical repetition under the same (seed, stream)
    RngStream r1(7, 3), r2(7, 3);
    const EventStream a = sample_events(pair, 5.0, r1);
    const EventStream b = sample_events(pair, 5.0, r2);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(std::memcmp(&a.events[i].time, &b.events[i].time, sizeof(double)) == 0);
        CHECK(std::memcmp(&a.events[i].size, &b.events[i].size, sizeof(double)) == 0);
    }

    // and the evolved paths match segment for segment, bit for bit
    const Path pa = evolve(0.3, pair, a, 5.0);
    const Path pb = evolve(0.3, pair, b, 5.0);
    REQUIRE(pa.segments().size() == pb.segments().size());
    for (std::size_t i = 0; i < pa.segments().size(); ++i) {
        CHECK(std::memcmp(&pa.segments()[i].start_value, &pb.segments()[i].start_value,
                          sizeof(double)) == 0);
    }
}

TEST_CASE("renewal collapses: deterministic spacing with uniform stationary delay") {
    const auto law = JumpDistribution::point_mass(1.0); // deterministic spacing 1
    RngStream rng(51, 0);
    for (int i = 0; i < 200; ++i) {
        const EventStream ev = sample_renewal_collapses(law, 10.0, rng, true);
        REQUIRE(!ev.events.empty());
        CHECK(ev.events[0].time > 0.0);
        CHECK(ev.events[0].time <= 1.0);
        for (std::size_t k = 1; k < ev.events.size(); ++k)
            CHECK(ev.events[k].time - ev.events[k - 1].time == Approx(1.0).epsilon(1e-12));
        for (const auto& e : ev.events) CHECK(e.size == 1.0);
    }
    // non-stationary: first epoch is a full inter-renewal time, here exactly 1
    RngStream rng2(51, 1);
    const EventStream ord = sample_renewal_collapses(law, 10.0, rng2, false);
    CHECK(ord.events[0].time == Approx(1.0));
}

TEST_CASE("renewal collapses: exponential stationary delay is a no-op in law") {
    const auto law = JumpDistribution::erlang(1, 1.0);
    const std::size_t reps = 100000;
    std::vector<double> stationary_first, ordinary_first;
    for (std::size_t i = 0; i < reps; ++i) {
        RngStream ra(61, i), rb(62, i);
        const auto sa = sample_renewal_collapses(law, 50.0, ra, true);
        const auto sb = sample_renewal_collapses(law, 50.0, rb, false);
        if (!sa.events.empty()) stationary_first.push_back(sa.events[0].time);
        if (!sb.events.empty()) ordinary_first.push_back(sb.events[0].time);
    }
    const double d = testing::ks_statistic(stationary_first, ordinary_first);
    CHECK(d < testing::ks_critical(0.01, stationary_first.size(), ordinary_first.size()));
}

TEST_CASE("renewal collapses: uniform and erlang stationary delays match f_e") {
    // oracle CDFs by direct integration of (1-F)/mu on a fine grid
    const std::size_t reps = 60000;

    const auto check_against_fe = [&](const JumpDistribution& law, double mean, double upper,
                                      auto survival) {
        std::vector<double> sample;
        for (std::size_t i = 0; i < reps; ++i) {
            RngStream rng(71, i);
            const auto ev = sample_renewal_collapses(law, 1000.0, rng, true);
            REQUIRE(!ev.events.empty());
            sample.push_back(ev.events[0].time);
        }
        std::vector<double> oracle;
        RngStream orng(72, 0);
        // inverse-transform from the tabulated F_e
        const int grid = 200000;
        std::vector<double> cdf(grid + 1, 0.0);
        for (int i = 1; i <= grid; ++i) {
            const double x = upper * (i - 0.5) / grid;
            cdf[static_cast<std::size_t>(i)] =
                cdf[static_cast<std::size_t>(i - 1)] + survival(x) / mean * (upper / grid);
        }
        for (std::size_t i = 0; i < reps; ++i) {
            const double u = orng.uniform01() * cdf[grid];
            const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
            oracle.push_back(upper * static_cast<double>(it - cdf.begin()) / grid);
        }
        const double d = testing::ks_statistic(sample, oracle);
        CHECK(d < testing::ks_critical(0.01, sample.size(), oracle.size()));
    };

    check_against_fe(JumpDistribution::uniform(2.0), 1.0, 2.0,
                     [](double x) { return 1.0 - x / 2.0; });
    check_against_fe(JumpDistribution::erlang(3, 1.5), 1.5, 12.0, [](double x) {
        const double beta = 2.0; // stage rate k/mean
        return std::exp(-beta * x) * (1.0 + beta * x + beta * x * beta * x / 2.0);
    });
}
