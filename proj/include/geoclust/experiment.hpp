#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geoclust/instance.hpp"
#include "geoclust/kmeans.hpp"
#include "geoclust/local_search.hpp"
#include "geoclust/toml.hpp"

namespace geoclust {

/// One solved instance in an experiment run.
struct ExperimentRow {
    std::string id;
    std::size_t n = 0, d = 0;
    double solver_cost = 0.0;
    std::optional<double> oracle_cost;  // only when n <= 12 and enabled
    std::optional<double> ratio;        // solver / oracle
    std::size_t iterations = 0;
    bool converged = false;
    // name -> "pass" | "fail" | "skipped"
    std::vector<std::pair<std::string, std::string>> checks;
    bool ok = true;  // ratio sanity and all requested checks
    double wall_ms = 0.0;
};

struct ExperimentConfig {
    long long schema_version = 1;
    std::string mode = "sosfl";  // or "kmeans"
    LocalSearchConfig search;
    double f_scale = 0.3;              // f = f_scale * (instance SSE / n)
    std::optional<double> f_absolute;  // overrides f_scale
    std::size_t k = 2;
    double kmeans_epsilon = 0.2;
    bool oracle = true;
    std::vector<std::string> checks;  // observation1, lemmas, grouping
    std::vector<InstanceSpec> instances;

    static ExperimentConfig from_toml(const TomlDocument& doc);
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ExperimentRow> rows;
    std::optional<double> mean_ratio, median_ratio, max_ratio;
    bool pass = true;

    /// JSON with all deterministic content; wall times and the timestamp live
    /// under a single "timing" subtree so determinism comparisons can drop it.
    std::string to_json_string(bool include_timing) const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Worker cap: GEOCLUST_THREADS when set, else hardware concurrency.
std::size_t worker_count();

}  // namespace geoclust
