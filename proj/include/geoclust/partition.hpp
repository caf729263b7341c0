#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoclust/separator.hpp"

namespace geoclust {

/// One partition iteration's output: local facilities, global facilities, the
/// separator net, and the carried-net points inside the ball.
struct Part {
    std::size_t index = 0;  // 1-based, matching the iteration number
    PointSet L;             // L_i
    PointSet O;             // O_i
    PointSet T;             // T_i (empty for the leftover part)
    PointSet ZB;            // Z_i in B_i
    Ball ball;
};

struct PartitionParams {
    double alpha = 8.0;
    double gamma = 64.0;
    /// Part-size constant; 0 derives (c_hi + kappa) * gamma, which the
    /// construction meets on non-densified runs.
    double beta = 0.0;
    std::uint64_t seed = 0;
    SeparatorParams separator = default_separator();

    double beta_value() const;
    /// Partition-internal separator defaults: larger inside-count target and
    /// a net cap of half the removed points, so the loop always shrinks the
    /// working set; contract self-checking is opt-in here.
    static SeparatorParams default_separator();
};

struct PartitionOutput {
    std::vector<Part> parts;  // parts[i-1] has index i; the last one is the leftover
    double epsilon = 0.0;
    std::size_t mu = 0;
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    /// 1-based part id per original facility index; exact disjoint cover.
    std::vector<std::size_t> part_of_L;
    std::vector<std::size_t> part_of_O;

    std::size_t size_L() const { return part_of_L.size(); }
    std::size_t size_O() const { return part_of_O.size(); }
};

/// PARTITION(L, O, eps): repeatedly separates L_i u O_i u Z_i with
/// mu = gamma / eps^d, splits off the ball contents, and carries
/// Z_{i+1} = (Z_i \ B_i) u T_i. The final leftover becomes part I with an
/// enclosing ball and T_I empty.
PartitionOutput run_partition(const PointSet& L, const PointSet& O, double epsilon,
                              const PartitionParams& params);

struct ObservationItem {
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct ObservationReport {
    ObservationItem items[4];
    // proof cross-check: sum |T_i u ZB_i| <= 2 sum |T_i|
    double double_count_lhs = 0.0;
    double double_count_rhs = 0.0;
    bool double_count_pass = false;
    bool all_pass() const;
    std::string to_string() const;  // four-line report
};

ObservationReport check_observation1(const PartitionOutput& out);

/// Per-client nearest facilities on both sides. Ties go to C_l.
struct ClientSides {
    std::vector<bool> in_C_l;
    std::vector<double> c_L, c_O;                    // squared distances
    std::vector<std::size_t> nearest_L, nearest_O;   // facility indices
    std::vector<std::size_t> C_l() const;
    std::vector<std::size_t> C_o() const;
};

ClientSides classify_clients(const PointSet& C, const PointSet& L, const PointSet& O);

struct Lemma2Result {
    bool applicable = false;
    std::size_t i = 0, j = 0;  // parts of c(O) and c(L)
    Point witness;             // in ZB_j u T_j, within max(dO, dL) of the client
};

/// Finds the Lemma 2 witness for one client, or reports not-applicable.
/// Throws CheckFailure when applicable but no witness exists (a separator
/// contract bug).
Lemma2Result check_lemma2(std::size_t client, const PointSet& C, const ClientSides& sides,
                          const PartitionOutput& out);

struct AssignmentEntry {
    std::size_t client = 0;
    Point target;
};

/// Lemma 3 assignment g for part j over clients in C_L(L_j) \ C_O(O_j);
/// verifies the squared-distance properties and throws on any failure.
std::vector<AssignmentEntry> build_assignment_g(const PointSet& C, const ClientSides& sides,
                                                const PartitionOutput& out, std::size_t j);

struct LemmaReport {
    std::size_t lemma2_applicable = 0;
    std::size_t lemma2_violations = 0;
    std::size_t lemma3_assigned = 0;
    std::size_t lemma3_violations = 0;
    bool pass() const { return lemma2_violations == 0 && lemma3_violations == 0; }
};

/// Runs both lemma checks over every client / every part, counting failures
/// instead of throwing.
LemmaReport lemma_certificates(const PointSet& C, const ClientSides& sides,
                               const PartitionOutput& out);

/// S_i = (L \ L_i) u O_i u T_i u (Z_i in B_i): the test solution from the
/// local-optimality argument.
PointSet build_swap_solution(const PointSet& L, const PartitionOutput& out, std::size_t i);

/// Group form S_J = (L \ L_J) u O_J u T_J for a set of part indices.
PointSet build_swap_solution_group(const PointSet& L, const PartitionOutput& out,
                                   const std::vector<std::size_t>& part_indices);

}  // namespace geoclust
