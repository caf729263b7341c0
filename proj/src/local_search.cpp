#include "geoclust/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geoclust/csv.hpp"

namespace geoclust {

double LocalSearchConfig::effective_factor(std::size_t n) const {
    if (acceptance == AcceptanceRule::greedy) return 1.0;
    if (improvement_factor) return *improvement_factor;
    if (n == 0) return 1.0;
    return 1.0 - 1.0 / static_cast<double>(n);
}

void LocalSearchConfig::validate() const {
    if (!(epsilon > 0.0) || epsilon > 1.0) throw InvalidInput("epsilon must be in (0,1]");
    if (swap_cap == 0) throw InvalidInput("swap_cap must be >= 1");
    if (improvement_factor && (!(*improvement_factor > 0.0) || !(*improvement_factor < 1.0))) {
        throw InvalidInput("improvement_factor override must be in (0,1)");
    }
}

namespace detail {

namespace {

template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        bool advanced = false;
        while (i-- > 0) {
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
}

}  // namespace

SwapEngine::SwapEngine(const PointSet& clients, PointSet universe, std::size_t n_openable,
                       double f)
    : clients_(clients), universe_(std::move(universe)), n_openable_(n_openable), f_(f) {
    const std::size_t cells = clients_.size() * universe_.size();
    if (cells > 0 && cells <= 4000000) {
        use_matrix_ = true;
        matrix_.resize(cells);
        for (std::size_t c = 0; c < clients_.size(); ++c) {
            for (std::size_t u = 0; u < universe_.size(); ++u) {
                matrix_[c * universe_.size() + u] = sq_dist(clients_[c], universe_[u]);
            }
        }
    }
}

double SwapEngine::dist(std::size_t client, std::uint32_t pos) const {
    if (use_matrix_) return matrix_[client * universe_.size() + pos];
    return sq_dist(clients_[client], universe_[pos]);
}

double SwapEngine::total_cost(const std::vector<std::uint32_t>& facility_ids) const {
    double conn = 0.0;
    for (std::size_t c = 0; c < clients_.size(); ++c) {
        double best = std::numeric_limits<double>::infinity();
        for (std::uint32_t id : facility_ids) best = std::min(best, dist(c, id));
        conn += best;
    }
    return f_ * static_cast<double>(facility_ids.size()) + conn;
}

SwapEngine::BestSwap SwapEngine::best_swap(const std::vector<std::uint32_t>& facility_ids,
                                           std::size_t cap, std::size_t max_count) const {
    const std::size_t nf = facility_ids.size();
    const std::size_t nc = clients_.size();

    // Base assignment for incremental evaluation.
    std::vector<double> base(nc, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> arg(nc, 0);
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t i = 0; i < nf; ++i) {
            const double d = dist(c, facility_ids[i]);
            if (d < base[c]) {
                base[c] = d;
                arg[c] = i;
            }
        }
    }

    BestSwap best;
    auto better = [&](double cost, const std::vector<std::size_t>& close,
                      const std::vector<std::uint32_t>& open) {
        if (!best.valid) return true;
        if (cost != best.cost) return cost < best.cost;
        const std::size_t s1 = close.size() + open.size();
        const std::size_t s2 = best.close.size() + best.open.size();
        if (s1 != s2) return s1 < s2;
        if (close != best.close) {
            return std::lexicographical_compare(close.begin(), close.end(), best.close.begin(),
                                                best.close.end());
        }
        return std::lexicographical_compare(open.begin(), open.end(), best.open.begin(),
                                            best.open.end());
    };

    std::vector<std::uint32_t> open_ids;
    auto evaluate = [&](const std::vector<std::size_t>& close) {
        const std::size_t count = nf - close.size() + open_ids.size();
        double cost = f_ * static_cast<double>(count);
        for (std::size_t c = 0; c < nc; ++c) {
            double d = base[c];
            if (!close.empty() &&
                std::find(close.begin(), close.end(), arg[c]) != close.end()) {
                d = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < nf; ++i) {
                    if (std::find(close.begin(), close.end(), i) != close.end()) continue;
                    d = std::min(d, dist(c, facility_ids[i]));
                }
            }
            for (std::uint32_t b : open_ids) d = std::min(d, dist(c, b));
            cost += d;
        }
        if (better(cost, close, open_ids)) {
            best.valid = true;
            best.cost = cost;
            best.close = close;
            best.open = open_ids;
        }
    };

    static const std::vector<std::size_t> kNoClose;
    for (std::size_t s = 1; s <= cap; ++s) {
        for (std::size_t a = 0; a <= std::min(s, nf); ++a) {
            const std::size_t b = s - a;
            if (b > n_openable_) continue;
            const std::size_t count = nf - a + b;
            if (count < 1 || count > max_count) continue;
            for_each_combination(nf, a, [&](const std::vector<std::size_t>& close) {
                for_each_combination(n_openable_, b, [&](const std::vector<std::size_t>& open) {
                    open_ids.assign(open.begin(), open.end());
                    evaluate(a == 0 ? kNoClose : close);
                });
            });
        }
    }
    return best;
}

std::string describe_swap(const std::vector<std::size_t>& close,
                          const std::vector<std::uint32_t>& open) {
    std::string s = "drop[";
    for (std::size_t i = 0; i < close.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(close[i]);
    }
    s += "] add[";
    for (std::size_t i = 0; i < open.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(open[i]);
    }
    s += ']';
    return s;
}

}  // namespace detail

namespace {

/// Universe = candidate points, then any extra positions needed to express
/// `extra` (exact coordinate matches reuse candidate rows).
struct UniverseMap {
    PointSet points;
    std::vector<std::uint32_t> extra_ids;
};

UniverseMap build_universe(const CandidateSet& candidates, const PointSet& extra) {
    UniverseMap u;
    u.points = candidates.points;
    for (std::size_t i = 0; i < extra.size(); ++i) {
        PointView p = extra[i];
        std::uint32_t id = UINT32_MAX;
        for (std::size_t j = 0; j < u.points.size(); ++j) {
            PointView q = u.points[j];
            if (std::equal(p.begin(), p.end(), q.begin(), q.end())) {
                id = static_cast<std::uint32_t>(j);
                break;
            }
        }
        if (id == UINT32_MAX) {
            id = static_cast<std::uint32_t>(u.points.size());
            u.points.push_back(p);
        }
        u.extra_ids.push_back(id);
    }
    return u;
}

}  // namespace

std::optional<Swap> find_improving_swap(const PointSet& facilities, const PointSet& clients,
                                        double f, const LocalSearchConfig& cfg,
                                        const CandidateSet& candidates) {
    if (facilities.empty()) throw InvalidInput("find_improving_swap: empty facility set");
    cfg.validate();
    UniverseMap u = build_universe(candidates, facilities);
    detail::SwapEngine engine(clients, std::move(u.points), candidates.points.size(), f);
    const double current = engine.total_cost(u.extra_ids);
    const auto best = engine.best_swap(u.extra_ids, cfg.swap_cap,
                                       std::numeric_limits<std::size_t>::max());
    const double factor = cfg.effective_factor(clients.size());
    if (!best.valid || !(best.cost < factor * current)) return std::nullopt;
    Swap s;
    s.close_facilities = best.close;
    s.open_candidates.assign(best.open.begin(), best.open.end());
    s.new_cost = best.cost;
    return s;
}

SolveResult solve_sosfl(const PointSet& clients, double f, const LocalSearchConfig& cfg) {
    if (clients.empty()) throw InvalidInput("solve_sosfl: empty client set");
    if (!(f > 0.0)) throw InvalidInput("solve_sosfl: facility cost must be positive");
    cfg.validate();

    const CandidateSet candidates = cfg.candidates.build(clients, cfg.seed);
    UniverseMap u = build_universe(candidates, clients);
    detail::SwapEngine engine(clients, std::move(u.points), candidates.points.size(), f);

    // One facility at each client; cost n*f.
    std::vector<std::uint32_t> fac = u.extra_ids;
    double current = engine.total_cost(fac);
    const double factor = cfg.effective_factor(clients.size());

    SolveResult result;
    result.trace.push_back({0, current, "init"});
    while (result.iterations < cfg.max_iterations) {
        const auto best = engine.best_swap(fac, cfg.swap_cap,
                                           std::numeric_limits<std::size_t>::max());
        if (!best.valid) {
            result.converged = true;
            break;
        }
        if (!(best.cost < factor * current)) {
            result.converged = true;
            if (best.cost < current) {
                result.blocked_note = "improvement to " + format_double(best.cost) +
                                      " blocked by threshold " + format_double(factor * current) +
                                      " (" + detail::describe_swap(best.close, best.open) + ")";
            }
            break;
        }
        // Apply: drop closed facilities (indices ascending), append opened.
        std::vector<std::uint32_t> next;
        next.reserve(fac.size() - best.close.size() + best.open.size());
        std::size_t ci = 0;
        for (std::size_t i = 0; i < fac.size(); ++i) {
            if (ci < best.close.size() && best.close[ci] == i) {
                ++ci;
                continue;
            }
            next.push_back(fac[i]);
        }
        for (std::uint32_t b : best.open) next.push_back(b);
        fac = std::move(next);
        current = best.cost;
        ++result.iterations;
        result.trace.push_back(
            {result.iterations, current, detail::describe_swap(best.close, best.open)});
    }

    PointSet solution(clients.dim());
    for (std::uint32_t id : fac) solution.push_back(engine.universe()[id]);
    result.solution = std::move(solution);
    result.cost = sosfl_cost(clients, result.solution, f);
    return result;
}

}  // namespace geoclust
