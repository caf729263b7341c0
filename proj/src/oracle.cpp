#include "geoclust/oracle.hpp"

#include <algorithm>

namespace geoclust {

PartitionEnumerator::PartitionEnumerator(std::size_t n, std::size_t max_blocks)
    : n_(n), max_blocks_(max_blocks), rgs_(n, 0), prefix_max_(n, 0) {
    if (n == 0 || n > kOracleMaxPoints) {
        throw InvalidInput("partition enumeration supports 1 <= n <= 12");
    }
    if (max_blocks == 0) throw InvalidInput("max_blocks must be >= 1");
}

bool PartitionEnumerator::next(std::vector<std::size_t>& rgs) {
    if (done_) return false;
    if (first_) {
        first_ = false;
        rgs = rgs_;
        return true;
    }
    // Advance the restricted-growth string: rightmost position that can grow.
    std::size_t i = n_;
    while (i-- > 1) {
        const std::size_t cap = std::min(prefix_max_[i - 1] + 1, max_blocks_ - 1);
        if (rgs_[i] < cap) {
            ++rgs_[i];
            prefix_max_[i] = std::max(prefix_max_[i - 1], rgs_[i]);
            for (std::size_t j = i + 1; j < n_; ++j) {
                rgs_[j] = 0;
                prefix_max_[j] = prefix_max_[j - 1];
            }
            rgs = rgs_;
            return true;
        }
    }
    done_ = true;
    return false;
}

std::vector<std::vector<std::size_t>> blocks_from_rgs(const std::vector<std::size_t>& rgs) {
    std::size_t nblocks = 0;
    for (std::size_t b : rgs) nblocks = std::max(nblocks, b + 1);
    std::vector<std::vector<std::size_t>> blocks(nblocks);
    for (std::size_t i = 0; i < rgs.size(); ++i) blocks[rgs[i]].push_back(i);
    return blocks;
}

double block_sse(const PointSet& s, const std::vector<std::size_t>& block) {
    const Point c = centroid_of(s, block);
    double acc = 0.0;
    for (std::size_t i : block) acc += sq_dist(s[i], c);
    return acc;
}

namespace {

OracleResult best_partition(const PointSet& s, std::size_t max_blocks,
                            const std::function<double(std::size_t nblocks, double sse)>& objective) {
    PartitionEnumerator en(s.size(), max_blocks);
    std::vector<std::size_t> rgs;
    double best = 0.0;
    std::vector<std::size_t> best_rgs;
    bool have = false;
    while (en.next(rgs)) {
        std::size_t nblocks = 0;
        for (std::size_t b : rgs) nblocks = std::max(nblocks, b + 1);
        double sse = 0.0;
        {
            // Accumulate per-block sums without materializing block lists.
            static thread_local std::vector<double> sums;
            static thread_local std::vector<std::size_t> counts;
            const std::size_t d = s.dim();
            sums.assign(nblocks * d, 0.0);
            counts.assign(nblocks, 0);
            for (std::size_t i = 0; i < s.size(); ++i) {
                PointView p = s[i];
                double* row = sums.data() + rgs[i] * d;
                for (std::size_t j = 0; j < d; ++j) row[j] += p[j];
                ++counts[rgs[i]];
            }
            for (std::size_t i = 0; i < s.size(); ++i) {
                PointView p = s[i];
                const double* row = sums.data() + rgs[i] * d;
                const double inv = 1.0 / static_cast<double>(counts[rgs[i]]);
                for (std::size_t j = 0; j < d; ++j) {
                    const double diff = p[j] - row[j] * inv;
                    sse += diff * diff;
                }
            }
        }
        const double cost = objective(nblocks, sse);
        if (!have || cost < best) {
            have = true;
            best = cost;
            best_rgs = rgs;
        }
    }
    OracleResult r;
    r.opt_cost = best;
    r.opt_partition = blocks_from_rgs(best_rgs);
    PointSet centers(s.dim());
    for (const auto& block : r.opt_partition) centers.push_back(centroid_of(s, block));
    r.opt_centers = std::move(centers);
    return r;
}

}  // namespace

OracleResult exact_sosfl(const PointSet& clients, double f) {
    if (clients.empty()) throw InvalidInput("exact_sosfl: empty client set");
    if (clients.size() > kOracleMaxPoints) {
        throw InvalidInput("exact_sosfl: instance too large for brute force (n > 12)");
    }
    if (!(f > 0.0)) throw InvalidInput("exact_sosfl: facility cost must be positive");
    return best_partition(clients, clients.size(), [f](std::size_t nblocks, double sse) {
        return f * static_cast<double>(nblocks) + sse;
    });
}

OracleResult exact_kmeans(const PointSet& points, std::size_t k) {
    if (points.empty()) throw InvalidInput("exact_kmeans: empty point set");
    if (points.size() > kOracleMaxPoints) {
        throw InvalidInput("exact_kmeans: instance too large for brute force (n > 12)");
    }
    if (k == 0 || k > points.size()) throw InvalidInput("exact_kmeans: need 1 <= k <= n");
    return best_partition(points, k, [](std::size_t, double sse) { return sse; });
}

}  // namespace geoclust
