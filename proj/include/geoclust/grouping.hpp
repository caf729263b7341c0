#pragma once

#include <cstdint>
#include <vector>

#include "geoclust/partition.hpp"

namespace geoclust {

/// Part reference with its surplus u = |L in R_j| - |(O u T) in R_j|.
struct SignedPart {
    std::size_t part_ref = 0;  // 1-based part index
    long long u = 0;
};

long long u_value(const Part& part);
std::vector<SignedPart> signed_parts(const PartitionOutput& out);

struct GroupedCollection {
    std::vector<std::vector<SignedPart>> groups;
    long long l = 0;  // group size cap, even

    /// Recorded after every outer-loop iteration: recomputed u(R') and the
    /// bound I + l/2 - j*l/2 it must dominate.
    struct InvariantSample {
        std::size_t iteration;
        long long u_remaining;
        long long bound;
    };
    std::vector<InvariantSample> invariant_trace;
};

/// Rounds l up to an even value; the precondition u(R) >= I + l/2 must hold.
long long group_size_cap(double beta, double epsilon, std::size_t d);

/// Balanced grouping: zero-surplus parts become singletons, then groups of at
/// most l parts are formed by alternating-sign selection so every group ends
/// with u >= 0. Selection always takes the lowest-index qualifying part.
/// Throws CheckFailure("insufficient surplus u(R)") when the precondition is
/// violated.
GroupedCollection group_parts(const std::vector<SignedPart>& parts, long long l);

struct GroupingReport {
    bool cover_ok = false;       // groups are disjoint and cover all parts
    bool sizes_ok = false;       // every group has at most l parts
    bool surplus_ok = false;     // recomputed u(P_i) >= 0 for every group
    std::size_t bad_group = 0;   // first offending group when surplus fails
    bool pass() const { return cover_ok && sizes_ok && surplus_ok; }
};

/// Recomputes u from the given parts rather than trusting cached values.
GroupingReport verify_grouping(const GroupedCollection& g,
                               const std::vector<SignedPart>& parts);

}  // namespace geoclust
