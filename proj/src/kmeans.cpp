#include "geoclust/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geoclust/rng.hpp"

namespace geoclust {

double BicriteriaConfig::effective_factor(std::size_t n) const {
    if (acceptance == AcceptanceRule::greedy) return 1.0;
    if (improvement_factor) return *improvement_factor;
    if (n == 0) return 1.0;
    return 1.0 - 1.0 / static_cast<double>(n);
}

void BicriteriaConfig::validate() const {
    if (k == 0) throw InvalidInput("k must be >= 1");
    if (epsilon < 0.0) throw InvalidInput("epsilon must be >= 0");
    if (swap_cap == 0) throw InvalidInput("swap_cap must be >= 1");
    if (improvement_factor && (!(*improvement_factor > 0.0) || !(*improvement_factor < 1.0))) {
        throw InvalidInput("improvement_factor override must be in (0,1)");
    }
}

std::size_t center_budget(std::size_t k, double epsilon) {
    const double v = (1.0 + 5.0 * epsilon) * static_cast<double>(k);
    return static_cast<std::size_t>(std::ceil(v - 1e-9));
}

namespace {

bool position_present(const PointSet& set, PointView p) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        PointView q = set[i];
        if (std::equal(p.begin(), p.end(), q.begin(), q.end())) return true;
    }
    return false;
}

/// D^2-weighted seeding of k centers from the point positions.
PointSet d2_seed(const PointSet& points, std::size_t k, Rng& rng) {
    const std::size_t n = points.size();
    PointSet centers(points.dim());
    centers.push_back(points[rng.below(n)]);
    std::vector<double> d2(n);
    while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = nearest(points[i], centers).sq_dist;
            total += d2[i];
        }
        std::size_t pick;
        if (total <= 0.0) {
            pick = rng.below(n);
        } else {
            const double target = rng.uniform01() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
        }
        centers.push_back(points[pick]);
    }
    return centers;
}

/// Single-swap descent over point positions: drop one center, add one point
/// position, while the best such move clears the threshold factor.
void single_swap_descent(const PointSet& points, PointSet& centers, double factor) {
    const std::size_t n = points.size();
    while (true) {
        const double current = kmeans_cost(points, centers);
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_drop = 0, best_add = 0;
        for (std::size_t drop = 0; drop < centers.size(); ++drop) {
            PointSet trial(points.dim());
            for (std::size_t i = 0; i < centers.size(); ++i) {
                if (i != drop) trial.push_back(centers[i]);
            }
            for (std::size_t add = 0; add < n; ++add) {
                trial.push_back(points[add]);
                const double c = kmeans_cost(points, trial);
                trial.pop_back();
                if (c < best) {
                    best = c;
                    best_drop = drop;
                    best_add = add;
                }
            }
        }
        if (!(best < factor * current)) break;
        PointSet next(points.dim());
        for (std::size_t i = 0; i < centers.size(); ++i) {
            if (i != best_drop) next.push_back(centers[i]);
        }
        next.push_back(points[best_add]);
        centers = std::move(next);
    }
}

}  // namespace

PointSet pad_centers(const PointSet& centers, const PointSet& points, std::size_t budget,
                     std::uint64_t seed) {
    if (centers.size() > budget) throw InvalidInput("pad_centers: already above budget");
    PointSet out = centers;
    if (out.dim() == 0 && points.dim() > 0) out = PointSet(points.dim());
    Rng rng(seed);
    const auto order = rng.permutation(points.size());
    for (std::size_t i : order) {
        if (out.size() >= budget) break;
        if (!position_present(out, points[i])) out.push_back(points[i]);
    }
    // All distinct positions used: duplicate in the same seeded order.
    std::size_t cursor = 0;
    while (out.size() < budget) {
        out.push_back(points[order[cursor % order.size()]]);
        ++cursor;
    }
    return out;
}

PointSet initialize_kmeans(const PointSet& points, const BicriteriaConfig& cfg) {
    if (points.empty()) throw InvalidInput("initialize_kmeans: empty point set");
    cfg.validate();
    const std::size_t budget = center_budget(cfg.k, cfg.epsilon);
    Rng rng(mix_seed(cfg.seed) ^ 0x1f2e3d4c5b6a7988ULL);
    PointSet centers;
    switch (cfg.initializer) {
        case KmeansInitializer::given: {
            centers = PointSet(points.dim());
            const std::size_t keep = std::min(budget, cfg.given_centers.size());
            for (std::size_t i = 0; i < keep; ++i) centers.push_back(cfg.given_centers[i]);
            break;
        }
        case KmeansInitializer::d2_seeding:
        case KmeansInitializer::singleswap_surrogate: {
            centers = d2_seed(points, std::min(cfg.k, points.size()), rng);
            if (cfg.initializer == KmeansInitializer::singleswap_surrogate) {
                single_swap_descent(points, centers, cfg.effective_factor(points.size()));
            }
            break;
        }
    }
    return pad_centers(centers, points, budget, rng.fork_seed(1));
}

KmeansResult solve_kmeans_bicriteria(const PointSet& points, const BicriteriaConfig& cfg) {
    if (points.empty()) throw InvalidInput("solve_kmeans_bicriteria: empty point set");
    cfg.validate();
    const std::size_t budget = center_budget(cfg.k, cfg.epsilon);

    KmeansResult result;
    result.k = cfg.k;
    result.budget = budget;
    result.epsilon = cfg.epsilon;
    result.init_adjusted = cfg.initializer == KmeansInitializer::given &&
                           cfg.given_centers.size() != budget;

    PointSet centers = initialize_kmeans(points, cfg);

    const CandidateSet candidates = cfg.candidates.build(points, cfg.seed);
    // Universe: candidates, then point positions (for padding), then any
    // extra initial centers.
    PointSet universe = candidates.points;
    auto id_of = [&universe](PointView p) -> std::uint32_t {
        for (std::size_t j = 0; j < universe.size(); ++j) {
            PointView q = universe[j];
            if (std::equal(p.begin(), p.end(), q.begin(), q.end())) {
                return static_cast<std::uint32_t>(j);
            }
        }
        universe.push_back(p);
        return static_cast<std::uint32_t>(universe.size() - 1);
    };
    std::vector<std::uint32_t> point_ids(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) point_ids[i] = id_of(points[i]);
    std::vector<std::uint32_t> fac;
    for (std::size_t i = 0; i < centers.size(); ++i) fac.push_back(id_of(centers[i]));

    detail::SwapEngine engine(points, universe, candidates.points.size(), 0.0);

    Rng pad_rng(mix_seed(cfg.seed) ^ 0x77aa55cc33ee1100ULL);
    auto pad_to_budget = [&](std::vector<std::uint32_t>& ids, std::uint64_t stream) {
        if (ids.size() >= budget) return;
        Rng rng(pad_rng.fork_seed(stream));
        const auto order = rng.permutation(points.size());
        for (std::size_t i : order) {
            if (ids.size() >= budget) break;
            if (std::find(ids.begin(), ids.end(), point_ids[i]) == ids.end()) {
                ids.push_back(point_ids[i]);
            }
        }
        std::size_t cursor = 0;
        while (ids.size() < budget) {
            ids.push_back(point_ids[order[cursor % order.size()]]);
            ++cursor;
        }
    };

    double current = engine.total_cost(fac);
    const double factor = cfg.effective_factor(points.size());
    result.base.trace.push_back({0, current, "init"});

    while (result.base.iterations < cfg.max_iterations) {
        if (fac.size() != budget) throw CheckFailure("center cardinality invariant broken");
        const auto best = engine.best_swap(fac, cfg.swap_cap, budget);
        if (!best.valid) {
            result.base.converged = true;
            break;
        }
        if (!(best.cost < factor * current)) {
            result.base.converged = true;
            if (best.cost < current) {
                result.base.blocked_note = detail::describe_swap(best.close, best.open) +
                                           " improves but misses the threshold";
            }
            break;
        }
        std::vector<std::uint32_t> next;
        next.reserve(budget);
        std::size_t ci = 0;
        for (std::size_t i = 0; i < fac.size(); ++i) {
            if (ci < best.close.size() && best.close[ci] == i) {
                ++ci;
                continue;
            }
            next.push_back(fac[i]);
        }
        for (std::uint32_t b : best.open) next.push_back(b);
        ++result.base.iterations;
        pad_to_budget(next, result.base.iterations);
        fac = std::move(next);
        current = engine.total_cost(fac);  // padding can only lower the cost
        if (!(current <= best.cost + 1e-12 * std::max(1.0, best.cost))) {
            throw CheckFailure("padding increased the k-means cost");
        }
        result.base.trace.push_back({result.base.iterations, current,
                                     detail::describe_swap(best.close, best.open)});
    }

    if (fac.size() != budget) throw CheckFailure("center cardinality invariant broken at return");
    PointSet solution(points.dim());
    for (std::uint32_t id : fac) solution.push_back(engine.universe()[id]);
    result.base.solution = std::move(solution);
    result.base.cost.facility_open_cost = 0.0;
    result.base.cost.connection_cost = kmeans_cost(points, result.base.solution);
    result.base.cost.total = result.base.cost.connection_cost;
    return result;
}

}  // namespace geoclust
