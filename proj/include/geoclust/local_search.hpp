#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoclust/candidates.hpp"
#include "geoclust/geometry.hpp"

namespace geoclust {

enum class AcceptanceRule {
    paper_threshold,  // accept only cost < (1 - 1/n) * current
    greedy,           // accept any strict improvement
};

struct LocalSearchConfig {
    double epsilon = 0.5;
    std::size_t swap_cap = 3;  // bound on |F1 \ F| + |F \ F1|
    AcceptanceRule acceptance = AcceptanceRule::paper_threshold;
    /// Optional explicit threshold in (0,1); overrides the 1 - 1/n default.
    std::optional<double> improvement_factor;
    std::size_t max_iterations = 1000;
    CandidateSpec candidates;
    std::uint64_t seed = 0;

    /// Multiplier an accepted swap must beat: greedy -> 1, explicit override,
    /// or 1 - 1/n.
    double effective_factor(std::size_t n) const;
    void validate() const;
};

struct TraceEntry {
    std::size_t iteration;
    double cost;
    std::string swap;
};

struct SolveResult {
    PointSet solution;
    CostBreakdown cost;
    std::vector<TraceEntry> trace;  // strictly decreasing costs
    std::size_t iterations = 0;     // accepted swaps
    bool converged = false;
    /// Set when the best neighbor improved the cost but missed the
    /// (1 - 1/n) threshold, so the loop stopped anyway.
    std::string blocked_note;
};

struct Swap {
    std::vector<std::size_t> close_facilities;  // indices into F, ascending
    std::vector<std::size_t> open_candidates;   // indices into the candidate set
    double new_cost = 0.0;                      // total cost after applying
};

/// Best swap with |A|+|B| <= cfg.swap_cap that clears the improvement
/// threshold, or nullopt. A may be empty (pure open), B may be empty (pure
/// close); F \ A u B stays nonempty. Ties: lexicographically smallest
/// (|A|+|B|, A indices, B indices).
std::optional<Swap> find_improving_swap(const PointSet& facilities, const PointSet& clients,
                                        double f, const LocalSearchConfig& cfg,
                                        const CandidateSet& candidates);

/// Multi-swap local search for sum-of-squares facility location. Starts from
/// one facility per client and descends until locally optimal under the
/// configured swap budget.
SolveResult solve_sosfl(const PointSet& clients, double f, const LocalSearchConfig& cfg);

namespace detail {

/// Shared neighbor-evaluation engine for both solvers. Facilities are ids
/// into a fixed position universe: candidate points first, then any extra
/// positions (initial facilities not present among candidates).
class SwapEngine {
public:
    SwapEngine(const PointSet& clients, PointSet universe, std::size_t n_openable, double f);

    std::size_t universe_size() const { return universe_.size(); }
    const PointSet& universe() const { return universe_; }

    double total_cost(const std::vector<std::uint32_t>& facility_ids) const;

    struct BestSwap {
        bool valid = false;
        double cost = 0.0;
        std::vector<std::size_t> close;        // indices into the facility list
        std::vector<std::uint32_t> open;       // universe ids (< n_openable)
    };

    /// Best neighbor over all swaps with 1 <= |A|+|B| <= cap, resulting
    /// facility count in [1, max_count]. Deterministic tie-breaks.
    BestSwap best_swap(const std::vector<std::uint32_t>& facility_ids, std::size_t cap,
                       std::size_t max_count) const;

private:
    double dist(std::size_t client, std::uint32_t pos) const;
    const PointSet& clients_;
    PointSet universe_;
    std::size_t n_openable_;
    double f_;
    bool use_matrix_ = false;
    std::vector<double> matrix_;  // clients x universe when small enough
};

std::string describe_swap(const std::vector<std::size_t>& close,
                          const std::vector<std::uint32_t>& open);

}  // namespace detail

}  // namespace geoclust
