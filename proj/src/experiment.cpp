#include "geoclust/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "geoclust/grouping.hpp"
#include "geoclust/oracle.hpp"
#include "geoclust/partition.hpp"

namespace geoclust {

using nlohmann::json;

std::size_t worker_count() {
    if (const char* env = std::getenv("GEOCLUST_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

InstanceSpec instance_from_table(const TomlTable& t, const TomlTable& defaults) {
    InstanceSpec spec;
    spec.generator = parse_generator(
        t.get_string("generator", defaults.get_string("generator", "uniform_box")));
    spec.n = static_cast<std::size_t>(t.get_int("n", defaults.get_int("n", 8)));
    spec.d = static_cast<std::size_t>(t.get_int("d", defaults.get_int("d", 2)));
    spec.box_size = t.get_float("box_size", defaults.get_float("box_size", 1.0));
    spec.components =
        static_cast<std::size_t>(t.get_int("components", defaults.get_int("components", 3)));
    spec.spread = t.get_float("spread", defaults.get_float("spread", 0.05));
    spec.seed = static_cast<std::uint64_t>(t.get_int("seed", 0));
    return spec;
}

std::string instance_id(const InstanceSpec& s) {
    return generator_name(s.generator) + "-n" + std::to_string(s.n) + "-d" +
           std::to_string(s.d) + "-s" + std::to_string(s.seed);
}

double instance_sse(const PointSet& pts) {
    const Point c = centroid(pts);
    double acc = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) acc += sq_dist(pts[i], c);
    return acc;
}

/// Checker suites against the solver/oracle pair: partition the two center
/// sets, then Observation 1, the lemma certificates, and the balanced
/// grouping (skipped when its surplus precondition fails).
void run_checks(const ExperimentConfig& cfg, const PointSet& points, const PointSet& solver,
                const PointSet& oracle_centers, ExperimentRow& row) {
    const bool want_obs = std::count(cfg.checks.begin(), cfg.checks.end(), "observation1") > 0;
    const bool want_lemmas = std::count(cfg.checks.begin(), cfg.checks.end(), "lemmas") > 0;
    const bool want_grouping = std::count(cfg.checks.begin(), cfg.checks.end(), "grouping") > 0;
    if (!want_obs && !want_lemmas && !want_grouping) return;

    PartitionParams params;
    params.seed = 17;
    const double epsilon = cfg.mode == "kmeans" ? cfg.kmeans_epsilon : cfg.search.epsilon;
    const PartitionOutput out = run_partition(solver, oracle_centers, epsilon, params);

    if (want_obs) {
        const bool ok = check_observation1(out).all_pass();
        row.checks.emplace_back("observation1", ok ? "pass" : "fail");
        row.ok = row.ok && ok;
    }
    if (want_lemmas) {
        const ClientSides sides = classify_clients(points, solver, oracle_centers);
        const bool ok = lemma_certificates(points, sides, out).pass();
        row.checks.emplace_back("lemmas", ok ? "pass" : "fail");
        row.ok = row.ok && ok;
    }
    if (want_grouping) {
        const auto parts = signed_parts(out);
        const long long l = group_size_cap(out.beta, out.epsilon, points.dim());
        long long total = 0;
        for (const auto& p : parts) total += p.u;
        if (total < static_cast<long long>(parts.size()) + l / 2) {
            row.checks.emplace_back("grouping", "skipped");
        } else {
            const auto grouped = group_parts(parts, l);
            const bool ok = verify_grouping(grouped, parts).pass();
            row.checks.emplace_back("grouping", ok ? "pass" : "fail");
            row.ok = row.ok && ok;
        }
    }
}

ExperimentRow solve_one(const ExperimentConfig& cfg, const InstanceSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentRow row;
    row.id = instance_id(spec);
    row.n = spec.n;
    row.d = spec.d;
    const PointSet pts = gen_instance(spec);

    PointSet solver_centers;
    std::optional<OracleResult> oracle;
    if (cfg.mode == "sosfl") {
        const double f = cfg.f_absolute
                             ? *cfg.f_absolute
                             : std::max(cfg.f_scale * instance_sse(pts) /
                                            static_cast<double>(pts.size()),
                                        1e-9);
        LocalSearchConfig search = cfg.search;
        search.seed = spec.seed;
        const SolveResult res = solve_sosfl(pts, f, search);
        row.solver_cost = res.cost.total;
        row.iterations = res.iterations;
        row.converged = res.converged;
        solver_centers = res.solution;
        if (cfg.oracle && pts.size() <= kOracleMaxPoints) oracle = exact_sosfl(pts, f);
    } else if (cfg.mode == "kmeans") {
        BicriteriaConfig bc;
        bc.k = cfg.k;
        bc.epsilon = cfg.kmeans_epsilon;
        bc.swap_cap = cfg.search.swap_cap;
        bc.acceptance = cfg.search.acceptance;
        bc.improvement_factor = cfg.search.improvement_factor;
        bc.max_iterations = cfg.search.max_iterations;
        bc.candidates = cfg.search.candidates;
        bc.seed = spec.seed;
        const KmeansResult res = solve_kmeans_bicriteria(pts, bc);
        row.solver_cost = res.base.cost.total;
        row.iterations = res.base.iterations;
        row.converged = res.base.converged;
        solver_centers = res.base.solution;
        if (cfg.oracle && pts.size() <= kOracleMaxPoints) {
            oracle = exact_kmeans(pts, std::min(cfg.k, pts.size()));
        }
    } else {
        throw InvalidInput("unknown experiment mode: " + cfg.mode);
    }

    if (oracle) {
        row.oracle_cost = oracle->opt_cost;
        row.ratio = oracle->opt_cost > 0.0
                        ? row.solver_cost / oracle->opt_cost
                        : (row.solver_cost <= 1e-12 ? 1.0
                                                    : std::numeric_limits<double>::infinity());
        // kmeans is bicriteria: the solver may legitimately beat the k-center
        // oracle, so the lower-bound sanity check applies to sosfl only.
        if (cfg.mode == "sosfl" && *row.ratio < 1.0 - 1e-9) row.ok = false;
        run_checks(cfg, pts, solver_centers, oracle->opt_centers, row);
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            start)
                      .count();
    return row;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_toml(const TomlDocument& doc) {
    ExperimentConfig cfg;
    cfg.schema_version = doc.root.get_int("schema_version", 0);
    if (cfg.schema_version != 1) {
        throw InvalidInput("config schema_version must be 1");
    }
    cfg.mode = doc.root.get_string("mode", "sosfl");
    if (cfg.mode != "sosfl" && cfg.mode != "kmeans") {
        throw InvalidInput("mode must be sosfl or kmeans");
    }
    TomlTable defaults;
    if (doc.tables.count("defaults")) defaults = doc.tables.at("defaults");

    cfg.search.swap_cap = static_cast<std::size_t>(defaults.get_int("swap_cap", 3));
    cfg.search.epsilon = defaults.get_float("epsilon", 0.5);
    cfg.search.candidates = CandidateSpec::parse(defaults.get_string("candidates", "subset:4"));
    cfg.search.acceptance = defaults.get_bool("greedy", false) ? AcceptanceRule::greedy
                                                               : AcceptanceRule::paper_threshold;
    cfg.search.max_iterations =
        static_cast<std::size_t>(defaults.get_int("max_iterations", 1000));
    cfg.f_scale = defaults.get_float("f_scale", 0.3);
    if (defaults.has("f")) cfg.f_absolute = defaults.get_float("f", 0.3);
    cfg.k = static_cast<std::size_t>(defaults.get_int("k", 2));
    cfg.kmeans_epsilon = defaults.get_float("kmeans_epsilon", 0.2);
    cfg.oracle = defaults.get_bool("oracle", true);
    if (defaults.has("checks")) {
        for (const auto& v : defaults.at("checks").as_array()) {
            cfg.checks.push_back(v.as_string());
        }
    }

    if (doc.table_arrays.count("instance")) {
        for (const TomlTable& t : doc.table_arrays.at("instance")) {
            InstanceSpec spec = instance_from_table(t, defaults);
            const long long repeat = t.get_int("repeat", 1);
            for (long long r = 0; r < repeat; ++r) {
                InstanceSpec clone = spec;
                clone.seed = spec.seed + static_cast<std::uint64_t>(r);
                cfg.instances.push_back(clone);
            }
        }
    }
    return cfg;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    ExperimentReport report;
    report.config = config;
    report.rows.resize(config.instances.size());

    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(
                                                             1, config.instances.size()));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= config.instances.size()) break;
            try {
                report.rows[i] = solve_one(config, config.instances[i]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) first_error = e.what();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failed) throw CheckFailure("experiment instance failed: " + first_error);

    std::vector<double> ratios;
    for (const ExperimentRow& row : report.rows) {
        if (!row.ok) report.pass = false;
        if (row.ratio) ratios.push_back(*row.ratio);
    }
    if (!ratios.empty()) {
        std::vector<double> sorted = ratios;
        std::sort(sorted.begin(), sorted.end());
        double sum = 0.0;
        for (double r : sorted) sum += r;
        report.mean_ratio = sum / static_cast<double>(sorted.size());
        report.median_ratio = sorted[sorted.size() / 2];
        report.max_ratio = sorted.back();
    }
    return report;
}

std::string ExperimentReport::to_json_string(bool include_timing) const {
    json j;
    j["schema_version"] = config.schema_version;
    j["mode"] = config.mode;
    json rows_json = json::array();
    json timing_json = json::object();
    for (const ExperimentRow& row : rows) {
        json r;
        r["id"] = row.id;
        r["n"] = row.n;
        r["d"] = row.d;
        r["solver_cost"] = row.solver_cost;
        if (row.oracle_cost) r["oracle_cost"] = *row.oracle_cost;
        if (row.ratio) r["ratio"] = *row.ratio;
        r["iterations"] = row.iterations;
        r["converged"] = row.converged;
        if (!row.checks.empty()) {
            json checks = json::object();
            for (const auto& [name, status] : row.checks) checks[name] = status;
            r["checks"] = checks;
        }
        r["ok"] = row.ok;
        rows_json.push_back(r);
        timing_json[row.id] = row.wall_ms;
    }
    j["rows"] = rows_json;
    json agg;
    agg["instances"] = rows.size();
    if (mean_ratio) agg["mean_ratio"] = *mean_ratio;
    if (median_ratio) agg["median_ratio"] = *median_ratio;
    if (max_ratio) agg["max_ratio"] = *max_ratio;
    agg["pass"] = pass;
    j["aggregate"] = agg;
    if (include_timing) {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        j["timing"] = {
            {"timestamp_ms",
             std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
            {"per_instance_ms", timing_json},
        };
    }
    return j.dump(2) + "\n";
}

}  // namespace geoclust
