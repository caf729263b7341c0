#include "geoclust/candidates.hpp"

#include <algorithm>
#include <cmath>

#include "geoclust/rng.hpp"

namespace geoclust {

namespace {

constexpr std::size_t kEnumerationGuard = 1000000;

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (r > cap) return cap + 1;
        r = r * (n - i) / (i + 1);
    }
    return r;
}

/// Lexicographic dedup with a small relative tolerance between neighbors.
PointSet dedup(PointSet pts) {
    const std::size_t d = pts.dim();
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        PointView pa = pts[a], pb = pts[b];
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    });
    auto close = [&](PointView a, PointView b) {
        for (std::size_t j = 0; j < d; ++j) {
            const double scale = std::max({1.0, std::fabs(a[j]), std::fabs(b[j])});
            if (std::fabs(a[j] - b[j]) > 1e-12 * scale) return false;
        }
        return true;
    };
    PointSet out(d);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (out.size() > 0 && close(out[out.size() - 1], pts[order[i]])) continue;
        out.push_back(pts[order[i]]);
    }
    return out;
}

}  // namespace

CandidateSet subset_centroids(const PointSet& clients, std::size_t max_subset) {
    if (clients.empty()) throw InvalidInput("subset_centroids: empty client set");
    if (max_subset == 0) throw InvalidInput("subset_centroids: max_subset must be >= 1");
    max_subset = std::min(max_subset, clients.size());
    std::size_t total = 0;
    for (std::size_t s = 1; s <= max_subset; ++s) {
        total += binomial_capped(clients.size(), s, kEnumerationGuard);
        if (total > kEnumerationGuard) {
            throw InvalidInput(
                "subset_centroids: too many subsets to enumerate; use sampled_centroids");
        }
    }
    PointSet pts(clients.dim());
    std::vector<std::size_t> idx;
    for (std::size_t s = 1; s <= max_subset; ++s) {
        idx.assign(s, 0);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            pts.push_back(centroid_of(clients, idx));
            // next s-combination of {0..n-1}
            std::size_t i = s;
            while (i-- > 0) {
                if (idx[i] != i + clients.size() - s) break;
                if (i == 0) {
                    i = SIZE_MAX;
                    break;
                }
            }
            if (i == SIZE_MAX) break;
            ++idx[i];
            for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return CandidateSet{dedup(std::move(pts)), CandidateStrategy::subset_centroids};
}

CandidateSet sampled_centroids(const PointSet& clients, std::size_t n_samples,
                               std::size_t sample_size, std::uint64_t seed) {
    if (clients.empty()) throw InvalidInput("sampled_centroids: empty client set");
    if (n_samples == 0) throw InvalidInput("sampled_centroids: n_samples must be >= 1");
    if (sample_size == 0 || sample_size > clients.size()) {
        throw InvalidInput("sampled_centroids: need 1 <= sample_size <= |C|");
    }
    Rng rng(seed);
    PointSet pts(clients.dim());
    for (std::size_t i = 0; i < clients.size(); ++i) pts.push_back(clients[i]);
    std::vector<std::size_t> pool(clients.size());
    for (std::size_t s = 0; s < n_samples; ++s) {
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
        // partial Fisher-Yates draws a uniform subset without replacement
        for (std::size_t i = 0; i < sample_size; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        std::vector<std::size_t> subset(pool.begin(), pool.begin() + sample_size);
        pts.push_back(centroid_of(clients, subset));
    }
    return CandidateSet{std::move(pts), CandidateStrategy::sampled_centroids};
}

CandidateSet grid_candidates(const PointSet& clients, std::size_t resolution) {
    if (clients.empty()) throw InvalidInput("grid_candidates: empty client set");
    if (resolution == 0) throw InvalidInput("grid_candidates: resolution must be >= 1");
    const std::size_t d = clients.dim();
    double count = 1;
    for (std::size_t j = 0; j < d; ++j) {
        count *= static_cast<double>(resolution);
        if (count > static_cast<double>(kEnumerationGuard)) {
            throw InvalidInput("grid_candidates: resolution^d exceeds 1e6");
        }
    }
    const BoundingBox box = bounding_box(clients);
    Point lo(d), step(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double mid = 0.5 * (box.lo[j] + box.hi[j]);
        const double half = 0.5 * (box.hi[j] - box.lo[j]) * 1.01;
        lo[j] = mid - half;
        step[j] = resolution > 1 ? 2.0 * half / static_cast<double>(resolution - 1) : 0.0;
    }
    PointSet pts(d);
    std::vector<std::size_t> ix(d, 0);
    Point p(d);
    while (true) {
        for (std::size_t j = 0; j < d; ++j) {
            p[j] = resolution > 1 ? lo[j] + step[j] * static_cast<double>(ix[j])
                                  : 0.5 * (box.lo[j] + box.hi[j]);
        }
        pts.push_back(p);
        std::size_t j = 0;
        while (j < d && ++ix[j] == resolution) {
            ix[j] = 0;
            ++j;
        }
        if (j == d) break;
    }
    return CandidateSet{std::move(pts), CandidateStrategy::grid};
}

CandidateSet client_candidates(const PointSet& clients) {
    if (clients.empty()) throw InvalidInput("client_candidates: empty client set");
    return CandidateSet{clients, CandidateStrategy::clients};
}

CandidateSpec CandidateSpec::parse(const std::string& text) {
    CandidateSpec spec;
    auto number = [](const std::string& s) -> std::size_t {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(s, &pos);
        if (pos != s.size()) throw InvalidInput("bad candidate spec number: " + s);
        return static_cast<std::size_t>(v);
    };
    if (text == "clients") {
        spec.strategy = CandidateStrategy::clients;
        return spec;
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InvalidInput("bad candidate spec: " + text);
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    if (kind == "subset") {
        spec.strategy = CandidateStrategy::subset_centroids;
        spec.max_subset = number(arg);
    } else if (kind == "sampled") {
        spec.strategy = CandidateStrategy::sampled_centroids;
        const auto x = arg.find('x');
        if (x == std::string::npos) throw InvalidInput("sampled spec needs NxS: " + text);
        spec.n_samples = number(arg.substr(0, x));
        spec.sample_size = number(arg.substr(x + 1));
    } else if (kind == "grid") {
        spec.strategy = CandidateStrategy::grid;
        spec.resolution = number(arg);
    } else {
        throw InvalidInput("unknown candidate strategy: " + kind);
    }
    return spec;
}

CandidateSet CandidateSpec::build(const PointSet& clients, std::uint64_t seed) const {
    switch (strategy) {
        case CandidateStrategy::subset_centroids:
            return subset_centroids(clients, max_subset);
        case CandidateStrategy::sampled_centroids:
            return sampled_centroids(clients, n_samples,
                                     std::min(sample_size, clients.size()), seed);
        case CandidateStrategy::grid:
            return grid_candidates(clients, resolution);
        case CandidateStrategy::clients:
            return client_candidates(clients);
    }
    throw InvalidInput("unreachable candidate strategy");
}

std::string CandidateSpec::to_string() const {
    switch (strategy) {
        case CandidateStrategy::subset_centroids:
            return "subset:" + std::to_string(max_subset);
        case CandidateStrategy::sampled_centroids:
            return "sampled:" + std::to_string(n_samples) + "x" + std::to_string(sample_size);
        case CandidateStrategy::grid:
            return "grid:" + std::to_string(resolution);
        case CandidateStrategy::clients:
            return "clients";
    }
    return "?";
}

}  // namespace geoclust
