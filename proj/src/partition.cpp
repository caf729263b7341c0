#include "geoclust/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geoclust/rng.hpp"

namespace geoclust {

namespace {

constexpr double kLemmaSlack = 1e-9;

double euclid(PointView a, PointView b) { return std::sqrt(sq_dist(a, b)); }

}  // namespace

SeparatorParams PartitionParams::default_separator() {
    SeparatorParams s;
    s.target_count_factor = 2.0;
    s.net_fraction_cap = 0.5;
    s.self_check = false;
    return s;
}

double PartitionParams::beta_value() const {
    if (beta > 0.0) return beta;
    return (separator.c_hi + separator.kappa) * gamma;
}

PartitionOutput run_partition(const PointSet& L, const PointSet& O, double epsilon,
                              const PartitionParams& params) {
    if (L.empty() || O.empty()) throw InvalidInput("run_partition: L and O must be nonempty");
    if (L.dim() != O.dim()) throw InvalidInput("run_partition: dimension mismatch");
    if (!(epsilon > 0.0) || epsilon > 1.0) throw InvalidInput("epsilon must be in (0,1]");
    const std::size_t d = L.dim();
    const auto mu = static_cast<std::size_t>(
        std::ceil(params.gamma / std::pow(epsilon, static_cast<double>(d))));

    PartitionOutput out;
    out.epsilon = epsilon;
    out.mu = mu;
    out.alpha = params.alpha;
    out.beta = params.beta_value();
    out.gamma = params.gamma;
    out.part_of_L.assign(L.size(), 0);
    out.part_of_O.assign(O.size(), 0);

    // Working pools keep original indices; Z carries net points across
    // iterations (Z_1 empty).
    std::vector<std::size_t> pool_L(L.size()), pool_O(O.size());
    for (std::size_t i = 0; i < L.size(); ++i) pool_L[i] = i;
    for (std::size_t i = 0; i < O.size(); ++i) pool_O[i] = i;
    PointSet Z(d);

    Rng seeds(params.seed);
    const std::size_t max_iterations = 2 * (L.size() + O.size()) + 16;
    for (std::size_t iter = 1;; ++iter) {
        if (iter > max_iterations) {
            throw CheckFailure(
                "partition failed to converge: separator made no progress "
                "(degenerate input after fallback)");
        }
        PointSet X(d);
        for (std::size_t i : pool_L) X.push_back(L[i]);
        for (std::size_t i : pool_O) X.push_back(O[i]);
        X.append(Z);

        if (static_cast<double>(X.size()) <= params.alpha * static_cast<double>(mu)) {
            Part leftover;
            leftover.index = iter;
            leftover.L = PointSet(d);
            leftover.O = PointSet(d);
            leftover.T = PointSet(d);
            leftover.ZB = Z;
            for (std::size_t i : pool_L) {
                leftover.L.push_back(L[i]);
                out.part_of_L[i] = iter;
            }
            for (std::size_t i : pool_O) {
                leftover.O.push_back(O[i]);
                out.part_of_O[i] = iter;
            }
            if (X.empty()) {
                leftover.ball = Ball{Point(d, 0.0), 0.0};
            } else {
                const BoundingBox box = bounding_box(X);
                leftover.ball =
                    Ball{box.center(), 0.5 * box.diameter() * (1.0 + 1e-12) + 1e-300};
            }
            out.parts.push_back(std::move(leftover));
            break;
        }

        SeparatorParams sep = params.separator;
        sep.alpha = params.alpha;
        sep.radius_jitter_seed = seeds.fork_seed(iter);
        const SeparatorResult res = separate(X, mu, sep);

        Part part;
        part.index = iter;
        part.ball = res.ball;
        part.T = res.net;
        part.L = PointSet(d);
        part.O = PointSet(d);
        part.ZB = PointSet(d);

        std::vector<std::size_t> keep_L, keep_O;
        for (std::size_t i : pool_L) {
            if (res.ball.contains(L[i])) {
                part.L.push_back(L[i]);
                out.part_of_L[i] = iter;
            } else {
                keep_L.push_back(i);
            }
        }
        for (std::size_t i : pool_O) {
            if (res.ball.contains(O[i])) {
                part.O.push_back(O[i]);
                out.part_of_O[i] = iter;
            } else {
                keep_O.push_back(i);
            }
        }
        PointSet next_Z(d);
        for (std::size_t i = 0; i < Z.size(); ++i) {
            if (res.ball.contains(Z[i])) part.ZB.push_back(Z[i]);
            else next_Z.push_back(Z[i]);
        }
        next_Z.append(res.net);  // Z_{i+1} = (Z_i \ B_i) u T_i

        pool_L = std::move(keep_L);
        pool_O = std::move(keep_O);
        Z = std::move(next_Z);
        out.parts.push_back(std::move(part));
    }
    return out;
}

bool ObservationReport::all_pass() const {
    for (const auto& item : items) {
        if (!item.pass) return false;
    }
    return double_count_pass;
}

std::string ObservationReport::to_string() const {
    static const char* names[4] = {
        "1: max |L_i u O_i u T_i u ZB_i|",
        "2: I",
        "3: |T|",
        "4: sum |T_i u ZB_i|",
    };
    std::ostringstream os;
    for (int k = 0; k < 4; ++k) {
        os << (items[k].pass ? "pass" : "FAIL") << "  item " << names[k] << " = "
           << items[k].measured << " vs bound " << items[k].bound << '\n';
    }
    return os.str();
}

ObservationReport check_observation1(const PartitionOutput& out) {
    ObservationReport r;
    const double nLO = static_cast<double>(out.size_L() + out.size_O());
    const std::size_t d =
        out.parts.empty() ? 1 : std::max<std::size_t>(1, out.parts.front().ball.center.size());
    const double eps_d = std::pow(out.epsilon, static_cast<double>(d));

    double max_part = 0.0;
    double total_T = 0.0;
    double total_TZB = 0.0;
    for (const Part& p : out.parts) {
        max_part = std::max(max_part, static_cast<double>(p.L.size() + p.O.size() +
                                                          p.T.size() + p.ZB.size()));
        total_T += static_cast<double>(p.T.size());
        total_TZB += static_cast<double>(p.T.size() + p.ZB.size());
    }
    r.items[0] = {max_part, out.beta / eps_d, max_part <= out.beta / eps_d};
    const double iter_bound = out.epsilon * nLO / 10.0;
    r.items[1] = {static_cast<double>(out.parts.size()), iter_bound,
                  static_cast<double>(out.parts.size()) <= iter_bound};
    r.items[2] = {total_T, iter_bound, total_T <= iter_bound};
    const double sum_bound = out.epsilon * nLO / 5.0;
    r.items[3] = {total_TZB, sum_bound, total_TZB <= sum_bound};
    r.double_count_lhs = total_TZB;
    r.double_count_rhs = 2.0 * total_T;
    // Each net point is counted once when emitted as T_i and at most once
    // more as a ZB entry (it leaves Z the iteration its ball captures it).
    r.double_count_pass = total_TZB <= r.double_count_rhs;
    return r;
}

std::vector<std::size_t> ClientSides::C_l() const {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < in_C_l.size(); ++i) {
        if (in_C_l[i]) v.push_back(i);
    }
    return v;
}

std::vector<std::size_t> ClientSides::C_o() const {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < in_C_l.size(); ++i) {
        if (!in_C_l[i]) v.push_back(i);
    }
    return v;
}

ClientSides classify_clients(const PointSet& C, const PointSet& L, const PointSet& O) {
    if (C.empty() || L.empty() || O.empty()) {
        throw InvalidInput("classify_clients: all sets must be nonempty");
    }
    ClientSides s;
    s.in_C_l.resize(C.size());
    s.c_L.resize(C.size());
    s.c_O.resize(C.size());
    s.nearest_L.resize(C.size());
    s.nearest_O.resize(C.size());
    for (std::size_t c = 0; c < C.size(); ++c) {
        const auto nl = nearest(C[c], L);
        const auto no = nearest(C[c], O);
        s.c_L[c] = nl.sq_dist;
        s.c_O[c] = no.sq_dist;
        s.nearest_L[c] = nl.index;
        s.nearest_O[c] = no.index;
        s.in_C_l[c] = nl.sq_dist <= no.sq_dist;
    }
    return s;
}

namespace {

/// Nearest point of ZB_j u T_j to the client (ZB first, then T; lowest index
/// wins ties).
std::optional<Point> nearest_in_part_net(PointView c, const Part& part) {
    double best = 0.0;
    std::optional<Point> best_point;
    for (const PointSet* set : {&part.ZB, &part.T}) {
        for (std::size_t i = 0; i < set->size(); ++i) {
            const double d2 = sq_dist(c, (*set)[i]);
            if (!best_point || d2 < best) {
                best = d2;
                best_point = Point((*set)[i].begin(), (*set)[i].end());
            }
        }
    }
    return best_point;
}

}  // namespace

Lemma2Result check_lemma2(std::size_t client, const PointSet& C, const ClientSides& sides,
                          const PartitionOutput& out) {
    Lemma2Result r;
    r.i = out.part_of_O[sides.nearest_O[client]];
    r.j = out.part_of_L[sides.nearest_L[client]];
    if (r.i >= r.j) return r;  // not applicable
    r.applicable = true;
    const Part& part = out.parts[r.j - 1];
    const double bound =
        std::sqrt(std::max(sides.c_L[client], sides.c_O[client])) * (1.0 + kLemmaSlack);
    const auto witness = nearest_in_part_net(C[client], part);
    if (!witness || euclid(C[client], *witness) > bound) {
        throw CheckFailure("lemma 2 violation: no witness in ZB_j u T_j for client " +
                           std::to_string(client));
    }
    r.witness = *witness;
    return r;
}

std::vector<AssignmentEntry> build_assignment_g(const PointSet& C, const ClientSides& sides,
                                                const PartitionOutput& out, std::size_t j) {
    if (j < 1 || j > out.parts.size()) throw InvalidInput("build_assignment_g: bad part index");
    const Part& part = out.parts[j - 1];
    std::vector<AssignmentEntry> g;
    for (std::size_t c = 0; c < C.size(); ++c) {
        if (out.part_of_L[sides.nearest_L[c]] != j) continue;
        if (out.part_of_O[sides.nearest_O[c]] == j) continue;
        const std::size_t i = out.part_of_O[sides.nearest_O[c]];
        std::optional<Point> target;
        if (i < j) {
            target = nearest_in_part_net(C[c], part);
        } else {
            // i > j: the point of T_j nearest to the client.
            if (!part.T.empty()) {
                const auto nn = nearest(C[c], part.T);
                target = Point(part.T[nn.index].begin(), part.T[nn.index].end());
            }
        }
        if (!target) {
            throw CheckFailure("lemma 3 violation: no assignment target for client " +
                               std::to_string(c));
        }
        const double d2 = sq_dist(C[c], *target);
        const double limit =
            (sides.in_C_l[c] ? sides.c_O[c] : sides.c_L[c]) * (1.0 + kLemmaSlack);
        if (d2 > limit) {
            throw CheckFailure("lemma 3 violation: bound unachievable for client " +
                               std::to_string(c));
        }
        g.push_back({c, std::move(*target)});
    }
    return g;
}

LemmaReport lemma_certificates(const PointSet& C, const ClientSides& sides,
                               const PartitionOutput& out) {
    LemmaReport report;
    for (std::size_t c = 0; c < C.size(); ++c) {
        try {
            const auto r = check_lemma2(c, C, sides, out);
            if (r.applicable) ++report.lemma2_applicable;
        } catch (const CheckFailure&) {
            ++report.lemma2_applicable;
            ++report.lemma2_violations;
        }
    }
    for (std::size_t j = 1; j <= out.parts.size(); ++j) {
        try {
            report.lemma3_assigned += build_assignment_g(C, sides, out, j).size();
        } catch (const CheckFailure&) {
            ++report.lemma3_violations;
        }
    }
    return report;
}

PointSet build_swap_solution(const PointSet& L, const PartitionOutput& out, std::size_t i) {
    return build_swap_solution_group(L, out, {i});
}

PointSet build_swap_solution_group(const PointSet& L, const PartitionOutput& out,
                                   const std::vector<std::size_t>& part_indices) {
    PointSet s(L.dim());
    std::vector<bool> in_group(out.parts.size() + 1, false);
    for (std::size_t i : part_indices) {
        if (i < 1 || i > out.parts.size()) {
            throw InvalidInput("build_swap_solution: bad part index");
        }
        in_group[i] = true;
    }
    for (std::size_t idx = 0; idx < L.size(); ++idx) {
        if (!in_group[out.part_of_L[idx]]) s.push_back(L[idx]);
    }
    for (std::size_t i : part_indices) {
        const Part& part = out.parts[i - 1];
        s.append(part.O);
        s.append(part.T);
        s.append(part.ZB);
    }
    return s;
}

}  // namespace geoclust
