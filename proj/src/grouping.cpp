#include "geoclust/grouping.hpp"

#include <algorithm>
#include <cmath>

namespace geoclust {

long long u_value(const Part& part) {
    return static_cast<long long>(part.L.size()) -
           static_cast<long long>(part.O.size() + part.T.size() + part.ZB.size());
}

std::vector<SignedPart> signed_parts(const PartitionOutput& out) {
    std::vector<SignedPart> v;
    v.reserve(out.parts.size());
    for (const Part& p : out.parts) v.push_back({p.index, u_value(p)});
    return v;
}

long long group_size_cap(double beta, double epsilon, std::size_t d) {
    const double v = 2.0 * beta / std::pow(epsilon, static_cast<double>(d));
    auto l = static_cast<long long>(std::ceil(v - 1e-9));
    if (l < 2) l = 2;
    if (l % 2 != 0) ++l;
    return l;
}

GroupedCollection group_parts(const std::vector<SignedPart>& parts, long long l) {
    if (l < 2 || l % 2 != 0) throw InvalidInput("group size cap l must be even and >= 2");
    const long long half = l / 2;
    long long total = 0;
    for (const SignedPart& p : parts) {
        if (std::llabs(p.u) > half) {
            throw InvalidInput("part surplus exceeds l/2; invalid input to grouping");
        }
        total += p.u;
    }
    const auto I = static_cast<long long>(parts.size());
    const long long need = I + half;  // (2I/l + 1) * l/2
    if (total < need) throw CheckFailure("insufficient surplus u(R)");

    GroupedCollection out;
    out.l = l;

    // Zero-surplus parts are singleton groups.
    std::vector<SignedPart> remaining;
    for (const SignedPart& p : parts) {
        if (p.u == 0) out.groups.push_back({p});
        else remaining.push_back(p);
    }

    auto take_first = [&](bool positive) -> SignedPart {
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if ((positive && remaining[i].u > 0) || (!positive && remaining[i].u < 0)) {
                SignedPart p = remaining[i];
                remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
                return p;
            }
        }
        throw CheckFailure("insufficient surplus u(R)");
    };
    auto has_negative = [&] {
        return std::any_of(remaining.begin(), remaining.end(),
                           [](const SignedPart& p) { return p.u < 0; });
    };
    auto u_of = [](const std::vector<SignedPart>& g) {
        long long s = 0;
        for (const SignedPart& p : g) s += p.u;
        return s;
    };

    std::size_t iteration = 0;
    bool early_exit = false;
    while (static_cast<long long>(remaining.size()) > l) {
        std::vector<SignedPart> psi{take_first(true)};
        while (static_cast<long long>(psi.size()) < half) {
            if (u_of(psi) >= 0) {
                if (!has_negative()) {
                    // Everything left is positive: flush psi and emit the rest
                    // as singletons.
                    out.groups.push_back(std::move(psi));
                    for (SignedPart& p : remaining) out.groups.push_back({p});
                    remaining.clear();
                    early_exit = true;
                    break;
                }
                psi.push_back(take_first(false));
            } else {
                psi.push_back(take_first(true));
            }
        }
        if (early_exit) break;
        while (u_of(psi) < 0) psi.push_back(take_first(true));
        out.groups.push_back(std::move(psi));
        ++iteration;
        long long u_rest = 0;
        for (const SignedPart& p : remaining) u_rest += p.u;
        out.invariant_trace.push_back(
            {iteration, u_rest, need - static_cast<long long>(iteration) * half});
    }
    if (!remaining.empty()) out.groups.push_back(std::move(remaining));
    return out;
}

GroupingReport verify_grouping(const GroupedCollection& g, const std::vector<SignedPart>& parts) {
    GroupingReport r;
    // Disjoint cover over part references.
    std::vector<std::size_t> seen;
    for (const auto& group : g.groups) {
        for (const SignedPart& p : group) seen.push_back(p.part_ref);
    }
    std::vector<std::size_t> expect;
    for (const SignedPart& p : parts) expect.push_back(p.part_ref);
    std::sort(seen.begin(), seen.end());
    std::sort(expect.begin(), expect.end());
    r.cover_ok = seen == expect;

    r.sizes_ok = std::all_of(g.groups.begin(), g.groups.end(), [&](const auto& group) {
        return static_cast<long long>(group.size()) <= g.l;
    });

    r.surplus_ok = true;
    for (std::size_t i = 0; i < g.groups.size(); ++i) {
        long long u = 0;
        for (const SignedPart& p : g.groups[i]) {
            const auto it =
                std::find_if(parts.begin(), parts.end(),
                             [&](const SignedPart& q) { return q.part_ref == p.part_ref; });
            u += it != parts.end() ? it->u : p.u;
        }
        if (u < 0) {
            r.surplus_ok = false;
            r.bad_group = i;
            break;
        }
    }
    return r;
}

}  // namespace geoclust
