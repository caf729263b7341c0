#include "geoclust/geometry.hpp"

#include <cmath>

namespace geoclust {

PointSet PointSet::from_rows(const std::vector<Point>& rows) {
    PointSet s;
    for (const auto& r : rows) s.push_back(r);
    return s;
}

void PointSet::push_back(PointView p) {
    if (dim_ == 0) {
        if (p.empty()) throw InvalidInput("point dimension must be >= 1");
        dim_ = p.size();
    } else if (p.size() != dim_) {
        throw InvalidInput("dimension mismatch in PointSet::push_back");
    }
    for (double c : p) {
        if (!std::isfinite(c)) throw InvalidInput("non-finite coordinate");
    }
    data_.insert(data_.end(), p.begin(), p.end());
}

void PointSet::pop_back() {
    if (data_.empty()) throw InvalidInput("pop_back on empty PointSet");
    data_.resize(data_.size() - dim_);
}

void PointSet::append(const PointSet& other) {
    for (std::size_t i = 0; i < other.size(); ++i) push_back(other[i]);
}

PointSet PointSet::subset(const std::vector<std::size_t>& indices) const {
    PointSet s(dim_);
    for (std::size_t i : indices) s.push_back((*this)[i]);
    return s;
}

double sq_dist(PointView p, PointView q) {
    if (p.size() != q.size()) throw InvalidInput("dimension mismatch in sq_dist");
    double acc = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double d = p[j] - q[j];
        acc += d * d;
    }
    return acc;
}

NearestResult nearest(PointView p, const PointSet& s) {
    if (s.empty()) throw InvalidInput("empty reference set");
    NearestResult best{0, sq_dist(p, s[0])};
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double d = sq_dist(p, s[i]);
        if (d < best.sq_dist) best = {i, d};
    }
    return best;
}

CostBreakdown sosfl_cost(const PointSet& clients, const PointSet& facilities, double f) {
    if (facilities.empty()) throw InvalidInput("sosfl_cost: empty facility set");
    if (!(f > 0.0)) throw InvalidInput("sosfl_cost: facility cost must be positive");
    CostBreakdown b;
    b.facility_open_cost = f * static_cast<double>(facilities.size());
    for (std::size_t i = 0; i < clients.size(); ++i) {
        b.connection_cost += nearest(clients[i], facilities).sq_dist;
    }
    b.total = b.facility_open_cost + b.connection_cost;
    return b;
}

double kmeans_cost(const PointSet& points, const PointSet& centers) {
    if (centers.empty()) throw InvalidInput("kmeans_cost: empty center set");
    double acc = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        acc += nearest(points[i], centers).sq_dist;
    }
    return acc;
}

Point centroid(const PointSet& s) {
    if (s.empty()) throw InvalidInput("centroid of empty set");
    Point mean(s.dim(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        PointView p = s[i];
        for (std::size_t j = 0; j < s.dim(); ++j) mean[j] += p[j];
    }
    const double inv = 1.0 / static_cast<double>(s.size());
    for (double& c : mean) c *= inv;
    return mean;
}

Point centroid_of(const PointSet& s, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw InvalidInput("centroid of empty index set");
    Point mean(s.dim(), 0.0);
    for (std::size_t i : indices) {
        PointView p = s[i];
        for (std::size_t j = 0; j < s.dim(); ++j) mean[j] += p[j];
    }
    const double inv = 1.0 / static_cast<double>(indices.size());
    for (double& c : mean) c *= inv;
    return mean;
}

std::vector<std::vector<std::size_t>> voronoi_assign(const PointSet& clients,
                                                     const PointSet& refs) {
    if (refs.empty()) throw InvalidInput("voronoi_assign: empty reference set");
    std::vector<std::vector<std::size_t>> cells(refs.size());
    for (std::size_t i = 0; i < clients.size(); ++i) {
        cells[nearest(clients[i], refs).index].push_back(i);
    }
    return cells;
}

Point BoundingBox::center() const {
    Point c(lo.size());
    for (std::size_t j = 0; j < lo.size(); ++j) c[j] = 0.5 * (lo[j] + hi[j]);
    return c;
}

double BoundingBox::diameter() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        const double d = hi[j] - lo[j];
        acc += d * d;
    }
    return std::sqrt(acc);
}

BoundingBox bounding_box(const PointSet& s) {
    if (s.empty()) throw InvalidInput("bounding box of empty set");
    BoundingBox b{Point(s[0].begin(), s[0].end()), Point(s[0].begin(), s[0].end())};
    for (std::size_t i = 1; i < s.size(); ++i) {
        PointView p = s[i];
        for (std::size_t j = 0; j < s.dim(); ++j) {
            if (p[j] < b.lo[j]) b.lo[j] = p[j];
            if (p[j] > b.hi[j]) b.hi[j] = p[j];
        }
    }
    return b;
}

}  // namespace geoclust
