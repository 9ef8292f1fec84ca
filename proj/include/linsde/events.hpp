#pragma once

// Realized jumps of one replication: Poisson superposition for (Y, Z) and
// renewal collapse streams with an optional stationary-excess delay.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "linsde/model.hpp"
#include "linsde/rng.hpp"

namespace linsde {

enum class EventSource { Y, Z };

struct Event {
    double time = 0.0;
    EventSource source = EventSource::Y;
    double size = 0.0;
};

/// Time-sorted jumps over (0, horizon]. Times are strictly increasing for
/// generated streams; hand-built streams may carry coincident times, which
/// the path engine coalesces into a single atom per source.
struct EventStream {
    double horizon = 0.0;
    std::vector<Event> events;
};

namespace detail {

inline void append_poisson_component(std::vector<Event>& out, const JumpComponent& comp,
                                     EventSource source, double horizon, RngStream& rng) {
    double t = 0.0;
    for (;;) {
        t += rng.exponential(1.0 / comp.rate);
        if (t > horizon) break;
        out.push_back({t, source, comp.dist.sample(rng)});
    }
}

inline bool strictly_increasing(const std::vector<Event>& ev) {
    for (std::size_t i = 1; i < ev.size(); ++i)
        if (!(ev[i - 1].time < ev[i].time)) return false;
    return true;
}

} // namespace detail

/// Samples the jump part of (Y, Z): each component contributes arrivals at
/// Poisson epochs of its rate with i.i.d. sizes from its distribution, merged
/// and time-sorted. Coincident times (a probability-zero event) trigger a
/// full re-draw so the output is always strictly increasing.
inline EventStream sample_events(const DriverPair& pair, double horizon, RngStream& rng) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    EventStream stream;
    stream.horizon = horizon;
    for (;;) {
        stream.events.clear();
        for (const auto& c : pair.y.components)
            detail::append_poisson_component(stream.events, c, EventSource::Y, horizon, rng);
        for (const auto& c : pair.z.components)
            detail::append_poisson_component(stream.events, c, EventSource::Z, horizon, rng);
        std::sort(stream.events.begin(), stream.events.end(),
                  [](const Event& a, const Event& b) { return a.time < b.time; });
        if (detail::strictly_increasing(stream.events)) break;
    }
    return stream;
}

namespace detail {

inline double sample_inter_renewal(const JumpDistribution& law, RngStream& rng) {
    return law.sample(rng);
}

/// Draw from the stationary-excess law of the given inter-renewal
/// distribution (density (1-F(t))/mu).
inline double sample_stationary_excess(const JumpDistribution& law, RngStream& rng) {
    switch (law.kind) {
    case JumpKind::PointMass:
        // excess of a deterministic spacing d is uniform on (0,d]
        return law.value * rng.uniform01();
    case JumpKind::Uniform: {
        // F_e(x) = 2x/b - (x/b)^2 on [0,b]; exact inverse
        const double u = rng.uniform01();
        return law.value * (1.0 - std::sqrt(1.0 - u));
    }
    case JumpKind::Exponential:
        return rng.exponential(law.value); // memoryless
    case JumpKind::Erlang: {
        // stationary excess of Erlang(k) is a uniform mixture of Erlang(1..k)
        // with the same stage rate; exact, no numeric inversion needed
        const int k = law.shape;
        const int j = std::min(1 + static_cast<int>(k * rng.uniform01()), k);
        double s = 0.0;
        for (int i = 0; i < j; ++i) s += rng.exponential(law.value / k);
        return s;
    }
    }
    throw std::invalid_argument("unsupported inter-renewal law");
}

} // namespace detail

/// Z-events of size 1 (total collapses) at renewal epochs. With `stationary`
/// set, the first epoch is drawn from the stationary-excess law, making the
/// renewal counting process time-stationary.
inline EventStream sample_renewal_collapses(const JumpDistribution& inter_renewal,
                                            double horizon, RngStream& rng, bool stationary) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    EventStream stream;
    stream.horizon = horizon;
    double t = stationary ? detail::sample_stationary_excess(inter_renewal, rng)
                          : detail::sample_inter_renewal(inter_renewal, rng);
    while (t <= horizon) {
        stream.events.push_back({t, EventSource::Z, 1.0});
        t += detail::sample_inter_renewal(inter_renewal, rng);
    }
    return stream;
}

} // namespace linsde
