#pragma once

#include <cstdint>
#include <optional>

#include "geoclust/geometry.hpp"

namespace geoclust {

struct Ball {
    Point center;
    double radius = 0.0;

    /// Closed-ball membership with a 1e-12 relative slack on the radius, so
    /// boundary points do not flap between inside and outside.
    bool contains(PointView p) const;
};

struct SeparatorParams {
    // Inside-count window: c_lo*mu <= |X in B| <= c_hi*mu on non-fallback calls.
    double c_lo = 0.25;
    double c_hi = 4.0;
    // Net size budget kappa * mu^(1-1/d) when densify_rounds == 0.
    double kappa = 8.0;
    // Radial layers added inward/outward of the sphere, funded from leftover budget.
    std::size_t shell_layers = 4;
    std::uint64_t radius_jitter_seed = 0;
    // Precondition constant: requires |X| > alpha * mu.
    double alpha = 8.0;
    // Initial inside-count target as a multiple of mu (clamped to the window).
    // The partition loop runs this at 2.0 so each iteration removes enough points.
    double target_count_factor = 1.0;
    // Hard cap on the net as a fraction of the inside count (0 disables).
    double net_fraction_cap = 0.0;
    // Post-construction verification against an internal query battery.
    bool self_check = true;
    std::size_t self_check_queries = 2000;
    int densify_limit = 6;

    void validate() const;
};

struct SeparatorResult {
    Ball ball;
    PointSet net;                 // Z
    std::size_t inside_count = 0;  // |X in B|
    int densify_rounds = 0;        // > 0 when self-healing or fallback kicked in
    bool fallback = false;         // net replaced by X in B
};

/// Computes a ball containing Theta(mu) points of X and a net Z such that for
/// any point p, d(p,Z) <= max(d(p, X\B), d(p, X in B)). Deterministic under
/// params (including the jitter seed).
SeparatorResult separate(const PointSet& X, std::size_t mu, const SeparatorParams& params);

struct ContractReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_ratio = 0.0;   // max over queries of d(p,Z) / rhs
    bool inside_empty = false;  // that max-operand treated as +inf
    bool outside_empty = false;
    std::optional<Point> first_violation;
};

/// Evaluates both sides of the contract inequality for every query point;
/// flags lhs > rhs * (1 + 1e-9).
ContractReport verify_contract(const PointSet& X, const SeparatorResult& result,
                               const PointSet& queries);

/// Acceptance-style query sample: 60% uniform over the bounding box, 20%
/// points of X, 20% far-field at 10x the bounding-box diameter.
PointSet make_query_mixture(const PointSet& X, std::size_t count, std::uint64_t seed);

/// Euclidean distance from p to the nearest point of s; +inf when s is empty.
double dist_to_set(PointView p, const PointSet& s);

}  // namespace geoclust
