#pragma once

// Monte-Carlo harness: empirical moments with confidence intervals, plain and
// Rao-Blackwellized (Z-conditional) Laplace-transform estimators, stationary
// functionals, a DKW-banded stochastic-order check, and analytic-vs-empirical
// comparison tables. Replications are embarrassingly parallel; every stream
// is derived from (master seed, replication index) and all reductions follow
// a fixed pairwise tree, so results are bit-identical for any worker count.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "linsde/events.hpp"
#include "linsde/model.hpp"
#include "linsde/moments.hpp"
#include "linsde/path.hpp"
#include "linsde/quadrature.hpp"
#include "linsde/rng.hpp"

namespace linsde {

inline constexpr double kNormal99 = 2.5758293035489004; // two-sided 99% quantile

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

/// Initial-value law; its Laplace transform xi_0 is known in closed form.
struct X0Law {
    enum class Kind { Constant, Exponential };
    Kind kind = Kind::Constant;
    double param = 0.0; // the constant, or the exponential mean

    static X0Law constant(double v) {
        if (v < 0.0) throw std::invalid_argument("x0 must be >= 0");
        return {Kind::Constant, v};
    }
    static X0Law exponential(double mean) {
        if (!(mean > 0.0)) throw std::invalid_argument("x0 mean must be > 0");
        return {Kind::Exponential, mean};
    }

    double sample(RngStream& rng) const {
        return kind == Kind::Constant ? param : rng.exponential(param);
    }
    double lst(double alpha) const {
        return kind == Kind::Constant ? std::exp(-alpha * param) : 1.0 / (1.0 + alpha * param);
    }
    double mean() const { return param; }
};

/// Per-replication random growth rate V: Y_t = V t is a stationary-increment
/// process without independent increments.
struct RandomDrift {
    std::vector<double> values;
    std::vector<double> probs;

    double mean() const {
        double m = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) m += values[i] * probs[i];
        return m;
    }
    double sample(RngStream& rng) const {
        const double u = rng.uniform01();
        double cum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            cum += probs[i];
            if (u <= cum) return values[i];
        }
        return values.back();
    }
};

struct Scenario {
    DriverPair pair;
    X0Law x0;
    double horizon = 1.0;
    std::vector<double> t_grid;
    bool levy_y = true;
    RandomDrift y_drift_law; // used only when levy_y is false

    /// EY_1 of the configured Y mode.
    double ey1() const { return levy_y ? pair.y.mean_rate() : y_drift_law.mean(); }
};

inline const Scenario& validate_scenario(const Scenario& scn) {
    validate_pair(scn.pair);
    if (!(scn.horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    for (std::size_t i = 0; i < scn.t_grid.size(); ++i) {
        if (scn.t_grid[i] < 0.0 || scn.t_grid[i] > scn.horizon)
            throw std::invalid_argument("t_grid must lie inside [0, horizon]");
        if (i > 0 && !(scn.t_grid[i - 1] < scn.t_grid[i]))
            throw std::invalid_argument("t_grid must be strictly increasing");
    }
    if (!scn.levy_y) {
        if (!scn.pair.y.is_zero())
            throw std::invalid_argument("random-drift mode replaces Y; set the y spec to zero");
        const auto& rd = scn.y_drift_law;
        if (rd.values.empty() || rd.values.size() != rd.probs.size())
            throw std::invalid_argument("random-drift law needs matching values/probs");
        double total = 0.0;
        for (std::size_t i = 0; i < rd.values.size(); ++i) {
            if (rd.values[i] < 0.0) throw std::invalid_argument("drift values must be >= 0");
            if (!(rd.probs[i] > 0.0)) throw std::invalid_argument("drift probs must be > 0");
            total += rd.probs[i];
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("drift probabilities must sum to 1");
    }
    return scn;
}

/// One replication of the scenario. Draw order per replication: the random
/// drift V (if configured), then x0, then the event stream.
inline Path sample_scenario_path(const Scenario& scn, RngStream& rng) {
    double r = scn.pair.y.drift;
    DriverPair sampling = scn.pair;
    if (!scn.levy_y) {
        r = scn.y_drift_law.sample(rng);
        sampling.y = SubordinatorSpec{};
    }
    const double x0 = scn.x0.sample(rng);
    const EventStream ev = sample_events(sampling, scn.horizon, rng);
    return evolve_with_drifts(x0, r, scn.pair.z.drift, ev, scn.horizon);
}

// ---------------------------------------------------------------------------
// Deterministic parallel reduction
// ---------------------------------------------------------------------------

namespace detail {

inline int max_worker_threads() {
    if (const char* env = std::getenv("LINSDE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

using StatVec = std::vector<double>;

template <class Leaf>
StatVec reduce_serial(std::size_t lo, std::size_t hi, const Leaf& leaf) {
    if (hi - lo == 1) return leaf(lo);
    const std::size_t mid = lo + (hi - lo) / 2;
    StatVec left = reduce_serial(lo, mid, leaf);
    const StatVec right = reduce_serial(mid, hi, leaf);
    for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
    return left;
}

/// Pairwise tree over replication indices. The tree shape depends only on
/// the index range, and combine order is fixed, so the result is independent
/// of how many workers execute the subtrees.
template <class Leaf>
StatVec reduce_parallel(std::size_t lo, std::size_t hi, const Leaf& leaf, int workers) {
    if (workers <= 1 || hi - lo < 512) return reduce_serial(lo, hi, leaf);
    const std::size_t mid = lo + (hi - lo) / 2;
    auto left_future = std::async(std::launch::async, [&] {
        return reduce_parallel(lo, mid, leaf, workers / 2);
    });
    const StatVec right = reduce_parallel(mid, hi, leaf, workers - workers / 2);
    StatVec left = left_future.get();
    for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
    return left;
}

template <class Leaf>
StatVec accumulate_replications(std::size_t reps, const Leaf& leaf) {
    return reduce_parallel(0, reps, leaf, max_worker_threads());
}

/// Sample variance from the accumulated sum and sum of squares. The two-pass
/// formula cancels to rounding noise when all replications coincide, so
/// anything at the cancellation floor snaps to an exact zero.
inline double sample_variance_from_sums(double sum, double sum_sq, double n) {
    const double mean = sum / n;
    const double var = (sum_sq - n * mean * mean) / (n - 1.0);
    if (var <= 16.0 * std::numeric_limits<double>::epsilon() * mean * mean) return 0.0;
    return var;
}

/// Runs fn(i) for i in [0, n) across workers. Safe whenever fn(i) touches
/// only index-i state; chunking never affects results.
template <class Fn>
void parallel_for_index(std::size_t n, const Fn& fn) {
    const int workers = std::min<int>(max_worker_threads(), 8);
    if (workers <= 1 || n < 512) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t begin = 0;
    for (int w = 0; w < workers; ++w) {
        const std::size_t end = n * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(workers);
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
        begin = end;
    }
    for (auto& th : pool) th.join();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Moment estimation
// ---------------------------------------------------------------------------

struct MomentCell {
    double mc_mean = 0.0;
    double stderr_ = 0.0;
    double ci99_half = 0.0;
};

struct MomentReport {
    std::vector<double> times;
    int n_max = 0;
    std::size_t reps = 0;
    std::vector<std::vector<MomentCell>> cells; // [time][order-1]
};

/// Empirical E X_t^n for n = 1..n_max on the scenario grid. Accumulates each
/// power and its square through the deterministic pairwise tree.
inline MomentReport mc_moments(const Scenario& scn, int n_max, std::size_t reps,
                               std::uint64_t master_seed) {
    validate_scenario(scn);
    if (n_max < 1 || n_max > kMaxMomentOrder)
        throw std::invalid_argument("n_max outside 1..12");
    if (reps < 100) throw std::invalid_argument("reps must be >= 100");
    if (scn.t_grid.empty()) throw std::invalid_argument("t_grid must be nonempty");

    const std::size_t nt = scn.t_grid.size();
    const auto no = static_cast<std::size_t>(n_max);
    const auto leaf = [&](std::size_t i) {
        RngStream rng(master_seed, i);
        const Path path = sample_scenario_path(scn, rng);
        detail::StatVec stats(nt * no * 2);
        for (std::size_t ti = 0; ti < nt; ++ti) {
            const double x = path.eval(scn.t_grid[ti]);
            double p = 1.0;
            for (std::size_t n = 0; n < no; ++n) {
                p *= x;
                stats[(ti * no + n) * 2] = p;
                stats[(ti * no + n) * 2 + 1] = p * p;
            }
        }
        return stats;
    };
    const detail::StatVec sums = detail::accumulate_replications(reps, leaf);

    MomentReport report;
    report.times = scn.t_grid;
    report.n_max = n_max;
    report.reps = reps;
    report.cells.assign(nt, std::vector<MomentCell>(no));
    const auto n_d = static_cast<double>(reps);
    for (std::size_t ti = 0; ti < nt; ++ti) {
        for (std::size_t n = 0; n < no; ++n) {
            const double sum = sums[(ti * no + n) * 2];
            const double sum_sq = sums[(ti * no + n) * 2 + 1];
            MomentCell& cell = report.cells[ti][n];
            cell.mc_mean = sum / n_d;
            cell.stderr_ = std::sqrt(detail::sample_variance_from_sums(sum, sum_sq, n_d) / n_d);
            cell.ci99_half = kNormal99 * cell.stderr_;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Laplace-transform estimators
// ---------------------------------------------------------------------------

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    double sample_variance = 0.0;
    std::size_t reps = 0;
    bool truncated = false;
    double truncation_bound = 0.0;
};

namespace detail {

inline McEstimate mean_and_error(const StatVec& sums, std::size_t reps) {
    const auto n_d = static_cast<double>(reps);
    McEstimate est;
    est.reps = reps;
    est.value = sums[0] / n_d;
    est.sample_variance = sample_variance_from_sums(sums[0], sums[1], n_d);
    est.stderr_ = std::sqrt(est.sample_variance / n_d);
    return est;
}

} // namespace detail

/// Crude estimator of E e^{-alpha X_t}: full-path simulation, average of the
/// transform evaluated at the endpoint. Baseline for the variance comparison.
inline McEstimate plain_lst(double alpha, double t, const Scenario& scn, std::size_t reps,
                            std::uint64_t seed) {
    validate_scenario(scn);
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    if (t > scn.horizon) throw std::invalid_argument("t beyond horizon");
    const auto leaf = [&](std::size_t i) {
        RngStream rng(seed, i);
        const Path path = sample_scenario_path(scn, rng);
        const double v = std::exp(-alpha * path.eval(t));
        return detail::StatVec{v, v * v};
    };
    return detail::mean_and_error(detail::accumulate_replications(reps, leaf), reps);
}

// --- Z-only machinery ------------------------------------------------------

/// The exponent path J (piecewise linear with slope c_z, jumping by
/// -log(1-q) at partial collapses) together with the first total-collapse
/// time T_1. This is the complete conditioning information of one Z path.
struct ZPath {
    double cz = 0.0;
    double t1 = std::numeric_limits<double>::infinity();
    std::vector<double> seg_start; // first entry always 0
    std::vector<double> j_start;   // J at each segment start

    double j_at(double s) const {
        auto it = std::upper_bound(seg_start.begin(), seg_start.end(), s);
        const auto idx = static_cast<std::size_t>(it - seg_start.begin()) - 1;
        return j_start[idx] + cz * (s - seg_start[idx]);
    }
};

inline ZPath build_z_path(const SubordinatorSpec& z, double horizon, RngStream& rng) {
    const DriverPair z_only{SubordinatorSpec{}, z};
    const EventStream ev = sample_events(z_only, horizon, rng);
    ZPath zp;
    zp.cz = z.drift;
    zp.seg_start.push_back(0.0);
    zp.j_start.push_back(0.0);
    for (const Event& e : ev.events) {
        if (e.size == 1.0) {
            zp.t1 = e.time;
            break;
        }
        const double j_before = zp.j_start.back() + zp.cz * (e.time - zp.seg_start.back());
        zp.seg_start.push_back(e.time);
        zp.j_start.push_back(j_before - std::log1p(-e.size));
    }
    return zp;
}

/// int_0^{min(t, T_1)} e^{-beta J_s} ds, exact per linear segment.
inline double exp_j_time_integral(const ZPath& zp, double t, double beta) {
    const double end = std::min(t, zp.t1);
    if (end <= 0.0) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < zp.seg_start.size(); ++i) {
        const double a = zp.seg_start[i];
        const double b = (i + 1 < zp.seg_start.size()) ? std::min(zp.seg_start[i + 1], end) : end;
        if (b <= a) continue;
        const double base = std::exp(-beta * zp.j_start[i]);
        const double slope = beta * zp.cz;
        total += (slope == 0.0) ? base * (b - a)
                                : base * (1.0 - std::exp(-slope * (b - a))) / slope;
        if (b >= end) break;
    }
    return total;
}

/// int_0^{min(t, T_1)} eta_y(alpha e^{-J_s}) ds. The drift part of eta_y has
/// a closed form on every segment; the jump part is smooth there and is
/// integrated by adaptive Gauss-Legendre with the tolerance budget spread
/// over segments by length.
inline double exponent_time_integral(const SubordinatorSpec& y, double alpha, const ZPath& zp,
                                     double t, double quad_tol) {
    const double end = std::min(t, zp.t1);
    if (end <= 0.0 || alpha == 0.0) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < zp.seg_start.size(); ++i) {
        const double a = zp.seg_start[i];
        const double b = (i + 1 < zp.seg_start.size()) ? std::min(zp.seg_start[i + 1], end) : end;
        if (b <= a) continue;
        const double j0 = zp.j_start[i];
        if (zp.cz == 0.0) {
            total += y.exponent(alpha * std::exp(-j0)) * (b - a);
        } else {
            total += y.drift * alpha * std::exp(-j0) *
                     (1.0 - std::exp(-zp.cz * (b - a))) / zp.cz;
            if (!y.components.empty()) {
                const auto jump_part = [&](double s) {
                    const double arg = alpha * std::exp(-(j0 + zp.cz * (s - a)));
                    double v = 0.0;
                    for (const auto& c : y.components) v += c.rate * c.dist.exponent_term(arg);
                    return v;
                };
                total += integrate(jump_part, a, b, quad_tol * (b - a) / end);
            }
        }
        if (b >= end) break;
    }
    return total;
}

/// Rao-Blackwellized estimator of E e^{-alpha X_t} for Levy Y: simulates only
/// Z and averages xi_0(alpha e^{-J_t} 1{N_t=0}) exp(-int eta_y(alpha e^{-J})).
/// Never noisier than plain_lst per replication.
inline McEstimate conditional_lst(double alpha, double t, const Scenario& scn, std::size_t reps,
                                  std::uint64_t seed, double quad_tol = 1e-10) {
    validate_scenario(scn);
    if (!scn.levy_y)
        throw std::invalid_argument("conditional estimator requires Levy Y");
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    if (t > scn.horizon) throw std::invalid_argument("t beyond horizon");
    const auto leaf = [&](std::size_t i) {
        RngStream rng(seed, i);
        const ZPath zp = build_z_path(scn.pair.z, scn.horizon, rng);
        const double integral = exponent_time_integral(scn.pair.y, alpha, zp, t, quad_tol);
        const double xi = (t < zp.t1) ? scn.x0.lst(alpha * std::exp(-zp.j_at(t))) : 1.0;
        const double v = xi * std::exp(-integral);
        return detail::StatVec{v, v * v};
    };
    return detail::mean_and_error(detail::accumulate_replications(reps, leaf), reps);
}

/// Estimator of the stationary transform E exp(-int_0^{T_1} eta_y(alpha
/// e^{-J_s}) ds). With an atom at 1 the horizon T_1 ~ exp(lambda) is drawn
/// exactly; otherwise the integral is truncated at trunc_horizon and the mean
/// first-order tail bound eta_y(alpha e^{-J_trunc}) / eta_j(1) is reported.
inline McEstimate stationary_lst_mc(double alpha, const Scenario& scn, std::size_t reps,
                                    std::uint64_t seed, double trunc_horizon = 50.0,
                                    double quad_tol = 1e-10) {
    validate_scenario(scn);
    if (!scn.levy_y) throw std::invalid_argument("stationary estimator requires Levy Y");
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    const SubordinatorSpec& z = scn.pair.z;
    if (z.is_zero()) throw std::invalid_argument("no stationary regime for a zero Z spec");
    const double lambda = z.atom_rate_at_one();

    if (lambda > 0.0) {
        SubordinatorSpec z_partial = z; // strip the atoms; T_1 is drawn directly
        std::erase_if(z_partial.components, [](const JumpComponent& c) {
            return c.dist.kind == JumpKind::PointMass && c.dist.value == 1.0;
        });
        const auto leaf = [&](std::size_t i) {
            RngStream rng(seed, i);
            const double t1 = rng.exponential(1.0 / lambda);
            const ZPath zp = build_z_path(z_partial, t1, rng);
            const double integral = exponent_time_integral(scn.pair.y, alpha, zp, t1, quad_tol);
            const double v = std::exp(-integral);
            return detail::StatVec{v, v * v};
        };
        return detail::mean_and_error(detail::accumulate_replications(reps, leaf), reps);
    }

    // lambda = 0: J_t -> infinity since the spec is nonzero; truncate.
    const double eta_j1 = z.mean_rate();
    const auto leaf = [&](std::size_t i) {
        RngStream rng(seed, i);
        const ZPath zp = build_z_path(z, trunc_horizon, rng);
        const double integral =
            exponent_time_integral(scn.pair.y, alpha, zp, trunc_horizon, quad_tol);
        const double v = std::exp(-integral);
        const double tail = scn.pair.y.exponent(alpha * std::exp(-zp.j_at(trunc_horizon))) / eta_j1;
        return detail::StatVec{v, v * v, tail};
    };
    const detail::StatVec sums = detail::accumulate_replications(reps, leaf);
    McEstimate est = detail::mean_and_error(sums, reps);
    est.truncated = true;
    est.truncation_bound = sums[2] / static_cast<double>(reps);
    return est;
}

// ---------------------------------------------------------------------------
// Stochastic-order check
// ---------------------------------------------------------------------------

struct OrderCheckResult {
    bool pass = false;
    double max_violation = 0.0; // max over x of F2(x) - F1(x)
    double band = 0.0;          // 2 * DKW epsilon
};

/// Tests X_{t1} <=st X_{t2} from two independent runs: pass iff the empirical
/// CDF of the later time never exceeds the earlier one by more than twice the
/// DKW band at delta = 0.01. Requires x0 = 0 (the hypothesis of the
/// stochastic-monotonicity theorem).
inline OrderCheckResult stochastic_order_check(const Scenario& scn, double t1, double t2,
                                               std::size_t reps, std::uint64_t seed) {
    validate_scenario(scn);
    if (scn.x0.kind != X0Law::Kind::Constant || scn.x0.param != 0.0)
        throw std::invalid_argument("order check requires x0 = 0");
    if (t1 > scn.horizon || t2 > scn.horizon) throw std::invalid_argument("times beyond horizon");
    if (reps < 100) throw std::invalid_argument("reps must be >= 100");

    std::vector<double> a(reps), b(reps);
    const auto fill = [&](std::vector<double>& out, double t, std::size_t stream_base) {
        detail::parallel_for_index(reps, [&](std::size_t i) {
            RngStream rng(seed, stream_base + i);
            const Path path = sample_scenario_path(scn, rng);
            out[i] = path.eval(t);
        });
    };
    fill(a, t1, 0);
    fill(b, t2, reps);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    const double eps = std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(reps)));
    OrderCheckResult result;
    result.band = 2.0 * eps;
    result.max_violation = -std::numeric_limits<double>::infinity();

    std::size_t ia = 0, ib = 0;
    const auto n_d = static_cast<double>(reps);
    while (ia < reps || ib < reps) {
        const double x = (ib >= reps || (ia < reps && a[ia] <= b[ib])) ? a[ia] : b[ib];
        while (ia < reps && a[ia] <= x) ++ia;
        while (ib < reps && b[ib] <= x) ++ib;
        const double gap = static_cast<double>(ib) / n_d - static_cast<double>(ia) / n_d;
        result.max_violation = std::max(result.max_violation, gap);
    }
    result.pass = result.max_violation <= result.band;
    return result;
}

// ---------------------------------------------------------------------------
// Comparison report
// ---------------------------------------------------------------------------

struct CompareCell {
    double t = 0.0;
    int order = 0;
    double analytic = 0.0;
    double mc = 0.0;
    double stderr_ = 0.0;
    double z = 0.0;
    bool pass = false;
};

struct CompareResult {
    std::vector<CompareCell> cells;
    std::size_t over3 = 0;
    bool pass = false;
};

/// Per-cell gate |z| < 4 plus the family-wise requirement that at most 1% of
/// cells exceed |z| > 3. Zero-variance cells (exact simulations) pass on
/// near-equality instead. The analytic table must match the report grid.
inline CompareResult compare_report(const std::vector<std::vector<double>>& analytic,
                                    const MomentReport& mc) {
    if (analytic.size() != mc.times.size())
        throw std::invalid_argument("analytic table grid does not match report");
    for (const auto& row : analytic)
        if (row.size() != static_cast<std::size_t>(mc.n_max))
            throw std::invalid_argument("analytic table orders do not match report");

    CompareResult result;
    result.pass = true;
    for (std::size_t ti = 0; ti < mc.times.size(); ++ti) {
        for (int n = 1; n <= mc.n_max; ++n) {
            const MomentCell& cell = mc.cells[ti][static_cast<std::size_t>(n - 1)];
            CompareCell out;
            out.t = mc.times[ti];
            out.order = n;
            out.analytic = analytic[ti][static_cast<std::size_t>(n - 1)];
            out.mc = cell.mc_mean;
            out.stderr_ = cell.stderr_;
            if (cell.stderr_ > 0.0) {
                out.z = (cell.mc_mean - out.analytic) / cell.stderr_;
                out.pass = std::abs(out.z) < 4.0;
            } else {
                const bool exact = std::abs(cell.mc_mean - out.analytic) <=
                                   1e-9 * (1.0 + std::abs(out.analytic));
                out.z = exact ? 0.0 : std::numeric_limits<double>::infinity();
                out.pass = exact;
            }
            if (std::abs(out.z) > 3.0) ++result.over3;
            result.pass = result.pass && out.pass;
            result.cells.push_back(out);
        }
    }
    const double frac_over3 =
        static_cast<double>(result.over3) / static_cast<double>(result.cells.size());
    if (frac_over3 > 0.01) result.pass = false;
    return result;
}

/// Convenience overload: analytic curves given as exponential mixtures per
/// moment order, evaluated on the report grid.
inline CompareResult compare_report(const std::vector<ExpMixture>& curves,
                                    const MomentReport& mc) {
    if (curves.size() != static_cast<std::size_t>(mc.n_max))
        throw std::invalid_argument("need one analytic curve per moment order");
    std::vector<std::vector<double>> table(mc.times.size(),
                                           std::vector<double>(curves.size()));
    for (std::size_t ti = 0; ti < mc.times.size(); ++ti)
        for (std::size_t n = 0; n < curves.size(); ++n)
            table[ti][n] = curves[n].eval(mc.times[ti]);
    return compare_report(table, mc);
}

} // namespace linsde
