#include "geoclust/separator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "geoclust/rng.hpp"

namespace geoclust {

namespace {

constexpr double kMembershipSlack = 1e-12;
constexpr double kContractSlack = 1e-9;

double dist(PointView a, PointView b) { return std::sqrt(sq_dist(a, b)); }

struct Ring {
    PointSet pts;
    double cover = 0.0;  // upper bound on max distance from the sphere to the ring
};

/// Covering net on the sphere of the given radius. d=1 is the exact two-point
/// sphere; d=2 an even circle net; d=3 a Fibonacci spiral; higher d falls back
/// to seeded random directions with a measured covering radius.
Ring make_ring(PointView center, double radius, std::size_t k, Rng& rng) {
    const std::size_t d = center.size();
    Ring ring;
    ring.pts = PointSet(d);
    if (d == 1) {
        Point p(1);
        p[0] = center[0] - radius;
        ring.pts.push_back(p);
        p[0] = center[0] + radius;
        ring.pts.push_back(p);
        ring.cover = 0.0;
        return ring;
    }
    if (d == 2) {
        k = std::max<std::size_t>(k, 3);
        for (std::size_t i = 0; i < k; ++i) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) /
                                 static_cast<double>(k);
            Point p{center[0] + radius * std::cos(theta), center[1] + radius * std::sin(theta)};
            ring.pts.push_back(p);
        }
        ring.cover = 2.0 * radius * std::sin(std::numbers::pi / (2.0 * static_cast<double>(k)));
        return ring;
    }
    if (d == 3) {
        k = std::max<std::size_t>(k, 4);
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (std::size_t i = 0; i < k; ++i) {
            const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(k);
            const double r_xy = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double theta = golden * static_cast<double>(i);
            Point p{center[0] + radius * r_xy * std::cos(theta),
                    center[1] + radius * r_xy * std::sin(theta), center[2] + radius * z};
            ring.pts.push_back(p);
        }
        // Safe upper bound on the Fibonacci-net covering radius (validated in tests).
        ring.cover = 2.6 * radius / std::sqrt(static_cast<double>(k));
        return ring;
    }
    // d >= 4: seeded random directions, covering radius measured on probes.
    k = std::max<std::size_t>(k, 2 * d);
    Point p(d);
    for (std::size_t i = 0; i < k; ++i) {
        double norm = 0.0;
        do {
            norm = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                p[j] = rng.normal();
                norm += p[j] * p[j];
            }
        } while (norm <= 0.0);
        norm = std::sqrt(norm);
        for (std::size_t j = 0; j < d; ++j) p[j] = center[j] + radius * p[j] / norm;
        ring.pts.push_back(p);
    }
    const std::size_t probes = std::min<std::size_t>(20000, 400 * k);
    double worst = 0.0;
    for (std::size_t i = 0; i < probes; ++i) {
        double norm = 0.0;
        do {
            norm = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                p[j] = rng.normal();
                norm += p[j] * p[j];
            }
        } while (norm <= 0.0);
        norm = std::sqrt(norm);
        for (std::size_t j = 0; j < d; ++j) p[j] = center[j] + radius * p[j] / norm;
        worst = std::max(worst, dist_to_set(p, ring.pts));
    }
    ring.cover = worst * 1.15;
    return ring;
}

struct BuildInput {
    const PointSet& X;
    PointView center;
    double radius;
    std::vector<double> height;  // | ||x-c|| - R | per point, signed not needed
};

/// Ring + every point of X within the ring's covering radius of the sphere.
/// This pair satisfies the contract for every query point: a cross-side
/// nearest neighbor within `cover` of the sphere is itself in Z, and
/// otherwise projecting the query to the sphere and snapping to the ring
/// costs at most cover <= the neighbor's sphere clearance.
struct NetBuild {
    PointSet net;
    std::size_t ring_size = 0;
    std::size_t shell_size = 0;
    double cover = 0.0;
    bool shell_trimmed = false;
};

/// total_cap == SIZE_MAX drops the budget entirely (densify path): the shell
/// is never trimmed and no layers are added.
NetBuild assemble(const BuildInput& in, const Ring& ring, std::size_t total_cap,
                  std::size_t max_layers, Rng& rng) {
    NetBuild out;
    out.net = PointSet(in.X.dim());
    out.net.append(ring.pts);
    out.ring_size = ring.pts.size();
    out.cover = ring.cover;

    // Shell: every X point within the ring's covering radius of the sphere.
    // When the budget forces trimming, keep the points nearest the sphere.
    std::vector<std::size_t> shell;
    const double h = std::max(ring.cover, in.radius * 1e-12);
    for (std::size_t i = 0; i < in.X.size(); ++i) {
        if (in.height[i] <= h) shell.push_back(i);
    }
    if (total_cap != SIZE_MAX) {
        const std::size_t shell_cap =
            total_cap > out.ring_size ? total_cap - out.ring_size : 0;
        if (shell.size() > shell_cap) {
            std::sort(shell.begin(), shell.end(), [&](std::size_t a, std::size_t b) {
                if (in.height[a] != in.height[b]) return in.height[a] < in.height[b];
                return a < b;
            });
            shell.resize(shell_cap);
            std::sort(shell.begin(), shell.end());
            out.shell_trimmed = true;
        }
    }
    for (std::size_t i : shell) out.net.push_back(in.X[i]);
    out.shell_size = shell.size();
    if (total_cap == SIZE_MAX) return out;

    // Radial layers at geometric offsets inward and outward, funded from
    // whatever budget remains.
    std::size_t left = total_cap - std::min(total_cap, out.ring_size + out.shell_size);
    const double base_offset = std::max(h, 0.05 * in.radius);
    for (std::size_t j = 1; j <= max_layers; ++j) {
        const double offset = base_offset * static_cast<double>(1ULL << (j - 1));
        const std::size_t k = std::max<std::size_t>(2, out.ring_size >> j);
        Ring outer = make_ring(in.center, in.radius + offset, k, rng);
        if (outer.pts.size() > left) break;
        out.net.append(outer.pts);
        left -= outer.pts.size();
        if (offset < 0.9 * in.radius) {
            Ring inner = make_ring(in.center, in.radius - offset, k, rng);
            if (inner.pts.size() > left) break;
            out.net.append(inner.pts);
            left -= inner.pts.size();
        }
    }
    return out;
}

}  // namespace

bool Ball::contains(PointView p) const {
    return dist(center, p) <= radius * (1.0 + kMembershipSlack);
}

void SeparatorParams::validate() const {
    if (c_lo < 0.25) throw InvalidInput("c_lo must be >= 1/4");
    if (c_hi < c_lo) throw InvalidInput("c_hi must be >= c_lo");
    if (!(kappa > 0.0)) throw InvalidInput("kappa must be positive");
    if (shell_layers < 1) throw InvalidInput("shell_layers must be >= 1");
    if (!(alpha > c_hi)) throw InvalidInput("alpha must exceed c_hi");
    if (target_count_factor < 0.0) throw InvalidInput("target_count_factor must be >= 0");
    if (net_fraction_cap < 0.0 || net_fraction_cap > 1.0) {
        throw InvalidInput("net_fraction_cap must be in [0,1]");
    }
}

double dist_to_set(PointView p, const PointSet& s) {
    if (s.empty()) return std::numeric_limits<double>::infinity();
    return std::sqrt(nearest(p, s).sq_dist);
}

SeparatorResult separate(const PointSet& X, std::size_t mu, const SeparatorParams& params) {
    params.validate();
    if (mu < 1) throw InvalidInput("mu must be >= 1");
    const std::size_t n = X.size();
    if (static_cast<double>(n) <= params.alpha * static_cast<double>(mu)) {
        throw InvalidInput("set too small to separate");
    }
    const std::size_t d = X.dim();
    Rng rng(params.radius_jitter_seed);
    const double jitter = rng.uniform(1.0, 2.0);
    Rng dir_rng(rng.fork_seed(1));
    Rng battery_rng(rng.fork_seed(2));

    const std::size_t m_lo =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(params.c_lo * mu)));
    const std::size_t m_hi = std::min<std::size_t>(
        n - 1, static_cast<std::size_t>(std::floor(params.c_hi * mu)));
    const std::size_t target0 = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(params.target_count_factor * mu)), m_lo, m_hi);

    // Center: the point whose target0-th nearest neighbor is closest (min
    // local radius); O(n^2) is fine at desk scale.
    std::size_t center_idx = 0;
    double center_r = std::numeric_limits<double>::infinity();
    std::vector<double> work(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) work[j] = sq_dist(X[i], X[j]);
        std::nth_element(work.begin(), work.begin() + target0, work.end());
        const double r = std::sqrt(work[target0]);  // rank counts self at 0
        if (r < center_r) {
            center_r = r;
            center_idx = i;
        }
    }
    PointView center = X[center_idx];
    std::vector<double> from_center(n);
    for (std::size_t j = 0; j < n; ++j) from_center[j] = dist(center, X[j]);
    std::vector<double> sorted = from_center;
    std::sort(sorted.begin(), sorted.end());

    // Largest radius keeping the count at or below the window top.
    double cap = std::numeric_limits<double>::infinity();
    bool cap_degenerate = false;
    if (m_hi + 1 <= n - 1) {
        if (sorted[m_hi + 1] > sorted[m_hi]) {
            cap = 0.5 * (sorted[m_hi] + sorted[m_hi + 1]);
        } else {
            cap = sorted[m_hi];
            cap_degenerate = true;
        }
    }

    const std::size_t budget = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::floor(
               params.kappa * std::pow(static_cast<double>(mu),
                                       1.0 - 1.0 / static_cast<double>(d)))));

    SeparatorResult result;
    result.ball.center.assign(center.begin(), center.end());

    auto finish_fallback = [&](double radius, int rounds) {
        result.ball.radius = radius;
        result.net = PointSet(d);
        std::size_t inside = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (result.ball.contains(X[i])) {
                result.net.push_back(X[i]);
                ++inside;
            }
        }
        result.inside_count = inside;
        result.densify_rounds = rounds + 1;
        result.fallback = true;
        return result;
    };

    // Descending inside-count targets: shrink the ball until a within-budget
    // net exists. The jitter stretches the base radius whenever the window
    // and budget allow it.
    std::vector<std::size_t> targets;
    for (double t = static_cast<double>(target0); t >= static_cast<double>(m_lo) * 0.999;
         t *= 0.75) {
        const auto v = std::max<std::size_t>(m_lo, static_cast<std::size_t>(std::llround(t)));
        if (targets.empty() || targets.back() != v) targets.push_back(v);
    }
    if (targets.empty() || targets.back() != m_lo) targets.push_back(m_lo);

    struct Attempt {
        double radius = 0.0;
        std::size_t inside = 0;
        std::size_t ring_k = 0;
        bool feasible = false;
    };
    Attempt chosen;
    std::vector<double> height(n);

    for (std::size_t target : targets) {
        const double r_base = sorted[target];  // sorted[0] = 0 is the center itself
        double radius = std::min(jitter * r_base, cap);
        radius = std::max(radius, r_base);
        std::size_t inside = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (from_center[i] <= radius * (1.0 + kMembershipSlack)) ++inside;
        }
        if (inside > m_hi || inside >= n) {
            if (cap_degenerate) break;  // duplicated inputs; fallback below
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) height[i] = std::fabs(from_center[i] - radius);
        std::size_t net_cap = budget;
        if (params.net_fraction_cap > 0.0) {
            net_cap = std::min(net_cap, std::max<std::size_t>(2, static_cast<std::size_t>(
                                            params.net_fraction_cap * inside)));
        }
        // Densest ring whose mandatory shell still fits the budget.
        const std::size_t k_min = d == 1 ? 2 : (d == 2 ? 3 : 4);
        std::size_t best_k = 0;
        for (double kf = static_cast<double>(net_cap); kf >= static_cast<double>(k_min);
             kf *= 0.8) {
            const auto k = static_cast<std::size_t>(kf);
            Rng probe(dir_rng.fork_seed(k));
            Ring ring = make_ring(center, radius, k, probe);
            const double h = std::max(ring.cover, radius * 1e-12);
            std::size_t shell = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (height[i] <= h) ++shell;
            }
            if (ring.pts.size() + shell <= net_cap) {
                best_k = k;
                break;
            }
        }
        chosen.radius = radius;
        chosen.inside = inside;
        if (best_k > 0) {
            chosen.ring_k = best_k;
            chosen.feasible = true;
            break;
        }
        if (!chosen.feasible && chosen.ring_k == 0) chosen.ring_k = k_min;
    }

    if (chosen.inside == 0) {
        // Window unattainable (coincident or near-coincident input).
        return finish_fallback(sorted[std::min(target0, n - 1)], 0);
    }

    result.ball.radius = chosen.radius;
    result.inside_count = chosen.inside;
    for (std::size_t i = 0; i < n; ++i) height[i] = std::fabs(from_center[i] - chosen.radius);

    std::size_t net_cap = budget;
    if (params.net_fraction_cap > 0.0) {
        net_cap = std::min(net_cap, std::max<std::size_t>(2, static_cast<std::size_t>(
                                        params.net_fraction_cap * chosen.inside)));
    }

    auto build = [&](std::size_t k, std::size_t total_cap) {
        Rng probe(dir_rng.fork_seed(k));
        Ring ring = make_ring(center, chosen.radius, k, probe);
        BuildInput in{X, center, chosen.radius, height};
        Rng layer_rng(dir_rng.fork_seed(k ^ 0x9e37ULL));
        return assemble(in, ring, total_cap, params.shell_layers, layer_rng);
    };

    // When no ring density fits the budget with its full shell, the shell is
    // trimmed to the points nearest the sphere and the self-check decides.
    NetBuild net = build(chosen.ring_k, net_cap);
    result.net = std::move(net.net);

    if (params.self_check) {
        PointSet battery = make_query_mixture(X, params.self_check_queries,
                                              battery_rng.fork_seed(0));
        for (std::size_t i = 0; i < n; ++i) battery.push_back(X[i]);
        // Sphere-proximal probes around the danger zone.
        const double span = std::max(4.0 * net.cover, 0.2 * chosen.radius);
        Rng prox(battery_rng.fork_seed(1));
        Point q(d);
        for (std::size_t i = 0; i < params.self_check_queries; ++i) {
            double norm = 0.0;
            do {
                norm = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    q[j] = prox.normal();
                    norm += q[j] * q[j];
                }
            } while (norm <= 0.0);
            norm = std::sqrt(norm);
            const double rr = chosen.radius + prox.uniform(-span, span);
            for (std::size_t j = 0; j < d; ++j) {
                q[j] = result.ball.center[j] + rr * q[j] / norm;
            }
            battery.push_back(q);
        }
        // Midpoints of near-sphere cross pairs.
        PointSet inside_pts(d), outside_pts(d);
        for (std::size_t i = 0; i < n; ++i) {
            if (result.ball.contains(X[i])) inside_pts.push_back(X[i]);
            else outside_pts.push_back(X[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (height[i] > span) continue;
            const PointSet& cross = result.ball.contains(X[i]) ? outside_pts : inside_pts;
            if (cross.empty()) continue;
            const auto nn = nearest(X[i], cross);
            Point mid(d);
            for (std::size_t j = 0; j < d; ++j) mid[j] = 0.5 * (X[i][j] + cross[nn.index][j]);
            battery.push_back(mid);
        }

        int rounds = 0;
        while (verify_contract(X, result, battery).violations > 0 &&
               rounds < params.densify_limit) {
            ++rounds;
            // Untrimmed rebuild, densified each round; budget no longer binds.
            const std::size_t k = std::max<std::size_t>(
                chosen.ring_k, budget << (rounds - 1));
            NetBuild dense = build(k, SIZE_MAX);
            result.net = std::move(dense.net);
            result.densify_rounds = rounds;
        }
        if (verify_contract(X, result, battery).violations > 0) {
            return finish_fallback(chosen.radius, rounds);
        }
    }
    return result;
}

ContractReport verify_contract(const PointSet& X, const SeparatorResult& result,
                               const PointSet& queries) {
    if (queries.empty()) throw InvalidInput("verify_contract: empty query set");
    PointSet inside(X.dim()), outside(X.dim());
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (result.ball.contains(X[i])) inside.push_back(X[i]);
        else outside.push_back(X[i]);
    }
    ContractReport report;
    report.inside_empty = inside.empty();
    report.outside_empty = outside.empty();
    for (std::size_t i = 0; i < queries.size(); ++i) {
        PointView p = queries[i];
        const double lhs = dist_to_set(p, result.net);
        const double rhs = std::max(dist_to_set(p, outside), dist_to_set(p, inside));
        ++report.checked;
        double ratio;
        if (rhs == 0.0) {
            ratio = lhs == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
        } else if (std::isinf(rhs)) {
            ratio = 0.0;  // vacuous bound
        } else {
            ratio = lhs / rhs;
        }
        report.worst_ratio = std::max(report.worst_ratio, ratio);
        if (lhs > rhs * (1.0 + kContractSlack)) {
            ++report.violations;
            if (!report.first_violation) {
                report.first_violation = Point(p.begin(), p.end());
            }
        }
    }
    return report;
}

PointSet make_query_mixture(const PointSet& X, std::size_t count, std::uint64_t seed) {
    if (X.empty()) throw InvalidInput("make_query_mixture: empty point set");
    const std::size_t d = X.dim();
    Rng rng(seed);
    const BoundingBox box = bounding_box(X);
    const Point mid = box.center();
    const double diam = box.diameter();
    PointSet queries(d);
    const std::size_t n_uniform = count * 3 / 5;
    const std::size_t n_onx = count / 5;
    Point q(d);
    for (std::size_t i = 0; i < n_uniform; ++i) {
        for (std::size_t j = 0; j < d; ++j) q[j] = rng.uniform(box.lo[j], box.hi[j]);
        queries.push_back(q);
    }
    for (std::size_t i = 0; i < n_onx; ++i) {
        PointView p = X[rng.below(X.size())];
        queries.push_back(p);
    }
    while (queries.size() < count) {
        double norm = 0.0;
        do {
            norm = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                q[j] = rng.normal();
                norm += q[j] * q[j];
            }
        } while (norm <= 0.0);
        norm = std::sqrt(norm);
        const double reach = 10.0 * (diam > 0.0 ? diam : 1.0);
        for (std::size_t j = 0; j < d; ++j) q[j] = mid[j] + reach * q[j] / norm;
        queries.push_back(q);
    }
    return queries;
}

}  // namespace geoclust
