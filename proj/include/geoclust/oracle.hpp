#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "geoclust/geometry.hpp"

namespace geoclust {

/// Exact brute-force solvers for tiny instances. Enumeration over set
/// partitions is capped at n <= 12 (Bell(12) ~ 4.2M).
inline constexpr std::size_t kOracleMaxPoints = 12;

struct OracleResult {
    double opt_cost = 0.0;
    std::vector<std::vector<std::size_t>> opt_partition;  // client-index blocks
    PointSet opt_centers;                                 // block centroids
};

/// Enumerates set partitions of {0..n-1} with at most max_blocks blocks, in
/// restricted-growth-string order. Each call to next() yields one partition.
class PartitionEnumerator {
public:
    PartitionEnumerator(std::size_t n, std::size_t max_blocks);

    /// Fills rgs[i] = block id of element i. Returns false when exhausted.
    bool next(std::vector<std::size_t>& rgs);

private:
    std::size_t n_;
    std::size_t max_blocks_;
    std::vector<std::size_t> rgs_;
    std::vector<std::size_t> prefix_max_;
    bool first_ = true;
    bool done_ = false;
};

/// Block structure from a restricted-growth string.
std::vector<std::vector<std::size_t>> blocks_from_rgs(const std::vector<std::size_t>& rgs);

/// Minimizes f * #blocks + total within-block squared error over all set
/// partitions of the clients. Exactness rests on the block centroid being the
/// unique optimal facility position for squared Euclidean cost.
OracleResult exact_sosfl(const PointSet& clients, double f);

/// Minimizes total within-block squared error over partitions into at most k
/// nonempty blocks.
OracleResult exact_kmeans(const PointSet& points, std::size_t k);

/// Within-block sum of squared distances to the block centroid.
double block_sse(const PointSet& s, const std::vector<std::size_t>& block);

}  // namespace geoclust
