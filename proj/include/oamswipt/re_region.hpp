#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oamswipt/errors.hpp"
#include "oamswipt/swipt.hpp"

namespace oamswipt {

enum class TraceMethod { MonteCarlo, Lagrangian, Envelope };

inline std::string to_string(TraceMethod m) {
    switch (m) {
    case TraceMethod::MonteCarlo: return "monte-carlo";
    case TraceMethod::Lagrangian: return "lagrangian";
    case TraceMethod::Envelope: return "envelope";
    }
    return "unknown";
}

// Upper rate-energy boundary sampled on harvested-power thresholds:
// max_rate[i] is the best rate achievable while harvesting at least energy_grid[i].
template <typename Scalar = double>
struct RERegion {
    std::vector<Scalar> energy_grid;
    std::vector<Scalar> max_rate;
    TraceMethod method = TraceMethod::Envelope;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const RERegion&, const RERegion&) = default;
};

template <typename Scalar>
std::vector<Scalar> uniform_grid(Scalar upper, std::size_t size) {
    if (size < 2) throw InvalidInput("energy grid needs at least two points");
    if (!(upper >= 0) || !std::isfinite(upper)) throw InvalidInput("energy grid upper bound must be finite and non-negative");
    std::vector<Scalar> grid(size);
    for (std::size_t i = 0; i < size; ++i) grid[i] = upper * Scalar(i) / Scalar(size - 1);
    grid.back() = upper;
    return grid;
}

// Staircase upper envelope of a point cloud. Answers "best rate with at least q
// harvested" in O(log n).
template <typename Scalar = double>
class ParetoFront {
public:
    explicit ParetoFront(std::vector<REPoint<Scalar>> points) : points_(std::move(points)) {
        if (points_.empty()) throw InvalidInput("pareto envelope needs at least one point");
        std::sort(points_.begin(), points_.end(), [](const auto& a, const auto& b) {
            return a.harvested != b.harvested ? a.harvested > b.harvested : a.rate > b.rate;
        });
        best_.resize(points_.size());
        Scalar running = -std::numeric_limits<Scalar>::infinity();
        for (std::size_t i = 0; i < points_.size(); ++i) best_[i] = running = std::max(running, points_[i].rate);
    }

    // 0 when no point harvests at least `threshold`.
    Scalar max_rate(Scalar threshold) const {
        auto it = std::partition_point(points_.begin(), points_.end(), [&](const auto& p) { return p.harvested >= threshold; });
        const auto count = std::size_t(it - points_.begin());
        return count == 0 ? Scalar(0) : std::max(Scalar(0), best_[count - 1]);
    }

    Scalar max_harvested() const { return points_.front().harvested; }

    Scalar peak_rate() const { return best_.back(); }

    std::size_t size() const { return points_.size(); }

    const std::vector<REPoint<Scalar>>& points() const { return points_; }

    RERegion<Scalar> region(std::vector<Scalar> grid, TraceMethod method = TraceMethod::Envelope,
                            std::uint64_t sample_count = 0, std::uint64_t seed = 0) const {
        RERegion<Scalar> r{std::move(grid), {}, method, sample_count, seed};
        r.max_rate.reserve(r.energy_grid.size());
        for (Scalar q : r.energy_grid) r.max_rate.push_back(max_rate(q));
        return r;
    }

private:
    std::vector<REPoint<Scalar>> points_; // harvested descending
    std::vector<Scalar> best_;            // prefix maximum of rate
};

template <typename Scalar>
RERegion<Scalar> pareto_envelope(std::vector<REPoint<Scalar>> points, std::size_t grid_size) {
    ParetoFront<Scalar> front(std::move(points));
    return front.region(uniform_grid(std::max(Scalar(0), front.max_harvested()), grid_size));
}

struct MonteCarloOptions {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    std::size_t grid_size = 200;
    unsigned workers = 1;
};

namespace detail {

// Samples are generated in fixed blocks; block b always draws from the same
// substream regardless of which worker runs it.
inline constexpr std::uint64_t sample_block = 1024;

inline std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(block), std::uint32_t(block >> 32)};
    return std::mt19937_64(seq);
}

// 53 random mantissa bits; bit-identical across standard libraries, unlike
// std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& engine) { return double(engine() >> 11) * 0x1.0p-53; }

} // namespace detail

// Evaluates `evaluator` at `samples` i.i.d. uniform split vectors followed by
// the all-zeros and all-ones corners. Output order depends only on the seed.
template <typename Scalar, typename Evaluator>
std::vector<REPoint<Scalar>> sample_split_points(const Evaluator& evaluator, Eigen::Index dim, const MonteCarloOptions& opt) {
    if (dim < 1) throw InvalidInput("split dimension must be positive");
    if (opt.samples < 1) throw InvalidInput("at least one Monte Carlo sample is required");
    std::vector<REPoint<Scalar>> points(opt.samples + 2);
    const std::uint64_t blocks = (opt.samples + detail::sample_block - 1) / detail::sample_block;
    std::atomic<std::uint64_t> next{0};

    auto work = [&] {
        SplitVector<Scalar> rho(dim);
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            auto engine = detail::block_engine(opt.seed, b);
            const std::uint64_t end = std::min(opt.samples, (b + 1) * detail::sample_block);
            for (std::uint64_t i = b * detail::sample_block; i < end; ++i) {
                for (Eigen::Index d = 0; d < dim; ++d) rho(d) = Scalar(detail::unit_uniform(engine));
                points[i] = evaluator(rho);
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, unsigned(blocks)));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    points[opt.samples] = evaluator(SplitVector<Scalar>::Zero(dim));
    points[opt.samples + 1] = evaluator(SplitVector<Scalar>::Ones(dim));
    return points;
}

// Monte Carlo rate-energy region: the energy grid spans [0, Q_max] with Q_max
// the harvested power at rho = 0.
template <typename Scalar, typename Evaluator>
RERegion<Scalar> trace_monte_carlo(const Evaluator& evaluator, Eigen::Index dim, const MonteCarloOptions& opt) {
    const Scalar q_max = evaluator(SplitVector<Scalar>::Zero(dim)).harvested;
    ParetoFront<Scalar> front(sample_split_points<Scalar>(evaluator, dim, opt));
    return front.region(uniform_grid(q_max, opt.grid_size), TraceMethod::MonteCarlo, opt.samples, opt.seed);
}

template <typename Scalar = double>
struct LagrangianPoint {
    Scalar multiplier = 0;
    SplitVector<Scalar> split;
    REPoint<Scalar> point;
    Scalar dual_value = 0; // max over rho of rate + multiplier * harvested
};

template <typename Scalar = double>
struct LagrangianTrace {
    std::vector<LagrangianPoint<Scalar>> points;
    RERegion<Scalar> region;
};

// 0 followed by `count` log-spaced multipliers. The scale is peak rate over
// peak harvested power; the top end is raised until every stream prefers
// rho = 0, so the (0, Q_max) corner is reached.
template <typename Scalar>
std::vector<Scalar> default_multiplier_grid(const StreamSet<Scalar>& s, std::size_t count = 64) {
    if (count < 2) throw InvalidInput("multiplier grid needs at least two points");
    Scalar peak_rate = 0;
    Scalar saturation = 0;
    for (Eigen::Index l = 0; l < s.size(); ++l) {
        peak_rate += s.stream_rate(l, Scalar(1));
        const Scalar per_unit = s.conversion_efficiency * (s.signal(l) + s.interference(l) + s.channel_noise);
        // d rate / d rho at rho = 0, over d harvested / d rho.
        if (s.conversion_noise > 0 && per_unit > 0)
            saturation = std::max(saturation, s.signal(l) / (s.conversion_noise * std::numbers::ln2_v<Scalar> * per_unit));
    }
    const Scalar q_max = s.max_harvested();
    const Scalar scale = (peak_rate > 0 && q_max > 0) ? peak_rate / q_max : Scalar(1);
    const Scalar lo = scale * Scalar(1e-3);
    const Scalar hi = std::max(scale * Scalar(1e3), saturation * Scalar(1.01));
    std::vector<Scalar> grid{Scalar(0)};
    for (std::size_t i = 0; i < count; ++i)
        grid.push_back(lo * std::pow(hi / lo, Scalar(i) / Scalar(count - 1)));
    return grid;
}

namespace detail {

// Maximizes the concave per-stream objective rate(rho) + mu * harvested(rho):
// grid scan, then golden-section refinement inside the bracketing cells.
template <typename Scalar>
std::pair<Scalar, Scalar> maximize_stream(const StreamSet<Scalar>& s, Eigen::Index l, Scalar mu, std::size_t rho_grid) {
    auto value = [&](Scalar r) { return s.stream_rate(l, r) + mu * s.stream_harvested(l, r); };
    std::size_t best_i = 0;
    Scalar best = value(Scalar(0));
    for (std::size_t i = 1; i < rho_grid; ++i) {
        const Scalar v = value(Scalar(i) / Scalar(rho_grid - 1));
        if (v > best) best = v, best_i = i;
    }
    Scalar best_rho = Scalar(best_i) / Scalar(rho_grid - 1);
    Scalar a = Scalar(best_i == 0 ? 0 : best_i - 1) / Scalar(rho_grid - 1);
    Scalar b = Scalar(std::min(best_i + 1, rho_grid - 1)) / Scalar(rho_grid - 1);
    if (a == 0 && s.conversion_noise == 0) a = Scalar(1) / Scalar(rho_grid - 1); // rate jumps at rho = 0
    const Scalar inv_phi = (std::sqrt(Scalar(5)) - 1) / 2;
    for (int it = 0; it < 80 && b - a > Scalar(1e-15); ++it) {
        const Scalar c = b - inv_phi * (b - a);
        const Scalar d = a + inv_phi * (b - a);
        if (value(c) >= value(d)) b = d;
        else a = c;
    }
    const Scalar mid = (a + b) / 2;
    if (value(mid) > best) best = value(mid), best_rho = mid;

    // Without conversion noise the rate is flat on (0, 1], so the supremum
    // near zero is a limit that no grid point attains.
    if (s.conversion_noise == 0 && s.signal(l) > 0) {
        const Scalar limit = std::log1p(s.signal(l) / (s.interference(l) + s.channel_noise)) / std::numbers::ln2_v<Scalar> +
                             mu * s.stream_harvested(l, Scalar(0));
        best = std::max(best, limit);
    }
    return {best_rho, best};
}

} // namespace detail

// Lagrangian scalarization of the separable (interference-free) stream model.
// Each multiplier yields an achievable split and the dual value L(mu); the
// region is the dual bound min_mu (L(mu) - mu q), i.e. the boundary of the
// convexified rate-energy region seen through the supporting lines in the grid.
template <typename Scalar>
LagrangianTrace<Scalar> trace_lagrangian(const StreamSet<Scalar>& streams, const std::vector<Scalar>& mu_grid,
                                         std::size_t rho_grid_size = 1024, std::size_t grid_size = 200) {
    if (!streams.separable()) throw UnsupportedModel("Lagrangian oracle requires an interference-free stream model");
    if (mu_grid.empty()) throw InvalidInput("multiplier grid is empty");
    if (rho_grid_size < 2) throw InvalidInput("split grid needs at least two points");
    for (std::size_t i = 0; i < mu_grid.size(); ++i) {
        if (!(mu_grid[i] >= 0) || !std::isfinite(mu_grid[i])) throw InvalidInput("multipliers must be finite and non-negative");
        if (i > 0 && !(mu_grid[i] > mu_grid[i - 1])) throw InvalidInput("multipliers must be strictly increasing");
    }

    LagrangianTrace<Scalar> trace;
    for (Scalar mu : mu_grid) {
        LagrangianPoint<Scalar> p{mu, SplitVector<Scalar>(streams.size()), {}, Scalar(0)};
        for (Eigen::Index l = 0; l < streams.size(); ++l) {
            const auto [rho, value] = detail::maximize_stream(streams, l, mu, rho_grid_size);
            p.split(l) = rho;
            p.dual_value += value;
        }
        p.point = streams.evaluate(p.split);
        trace.points.push_back(std::move(p));
    }

    trace.region.method = TraceMethod::Lagrangian;
    trace.region.energy_grid = uniform_grid(streams.max_harvested(), grid_size);
    for (Scalar q : trace.region.energy_grid) {
        Scalar bound = std::numeric_limits<Scalar>::infinity();
        for (const auto& p : trace.points) bound = std::min(bound, p.dual_value - p.multiplier * q);
        trace.region.max_rate.push_back(std::max(Scalar(0), bound));
    }
    return trace;
}

} // namespace oamswipt
