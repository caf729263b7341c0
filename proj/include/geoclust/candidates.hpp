#pragma once

#include <cstdint>
#include <string>

#include "geoclust/geometry.hpp"

namespace geoclust {

enum class CandidateStrategy { subset_centroids, sampled_centroids, grid, clients };

/// Finite set of openable center positions for the swap search.
struct CandidateSet {
    PointSet points;
    CandidateStrategy strategy_tag = CandidateStrategy::clients;
};

/// Centroids of all nonempty client subsets of size <= max_subset,
/// deduplicated. Guarded so the subset count stays below 1e6; use
/// sampled_centroids past that.
CandidateSet subset_centroids(const PointSet& clients, std::size_t max_subset);

/// Centroids of n_samples random subsets of the given size, plus every client
/// point. Deterministic under seed.
CandidateSet sampled_centroids(const PointSet& clients, std::size_t n_samples,
                               std::size_t sample_size, std::uint64_t seed);

/// Uniform resolution^d grid over the client bounding box inflated by 1%.
CandidateSet grid_candidates(const PointSet& clients, std::size_t resolution);

CandidateSet client_candidates(const PointSet& clients);

/// Parses "subset:4", "sampled:500x8", "grid:32" or "clients".
struct CandidateSpec {
    CandidateStrategy strategy = CandidateStrategy::subset_centroids;
    std::size_t max_subset = 4;
    std::size_t n_samples = 500;
    std::size_t sample_size = 8;
    std::size_t resolution = 16;

    static CandidateSpec parse(const std::string& text);
    CandidateSet build(const PointSet& clients, std::uint64_t seed) const;
    std::string to_string() const;
};

}  // namespace geoclust
