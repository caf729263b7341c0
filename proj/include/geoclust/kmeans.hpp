#pragma once

#include <cstdint>
#include <optional>

#include "geoclust/local_search.hpp"

namespace geoclust {

enum class KmeansInitializer {
    singleswap_surrogate,  // D^2 seeding + single-swap descent (default)
    d2_seeding,
    given,
};

struct BicriteriaConfig {
    std::size_t k = 1;
    double epsilon = 0.2;  // >= 0; the center budget is ceil((1+5e)k)
    std::size_t swap_cap = 3;
    AcceptanceRule acceptance = AcceptanceRule::paper_threshold;
    std::optional<double> improvement_factor;
    std::size_t max_iterations = 1000;
    CandidateSpec candidates;
    std::uint64_t seed = 0;
    KmeansInitializer initializer = KmeansInitializer::singleswap_surrogate;
    PointSet given_centers;  // used when initializer == given

    double effective_factor(std::size_t n) const;
    void validate() const;
};

struct KmeansResult {
    SolveResult base;
    std::size_t k = 0;
    std::size_t budget = 0;  // ceil((1+5e)k); |solution| equals this
    double epsilon = 0.0;
    bool init_adjusted = false;  // given centers were padded or truncated
};

/// ceil((1+5e)k), computed with a small slack so an exactly integral value
/// does not round up.
std::size_t center_budget(std::size_t k, double epsilon);

/// Appends unused client positions (seeded uniform order; duplicates once
/// exhausted) until the set has exactly `budget` centers. Never raises cost.
PointSet pad_centers(const PointSet& centers, const PointSet& points, std::size_t budget,
                     std::uint64_t seed);

/// Runs the configured initializer and pads to exactly the center budget.
PointSet initialize_kmeans(const PointSet& points, const BicriteriaConfig& cfg);

/// Local search over swaps that keep the center count at the budget.
KmeansResult solve_kmeans_bicriteria(const PointSet& points, const BicriteriaConfig& cfg);

}  // namespace geoclust
