#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geoclust/errors.hpp"

namespace geoclust {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Ordered collection of d-dimensional points with stable indexing.
/// Storage is flat row-major; duplicates are allowed.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dim) : dim_(dim) {}

    static PointSet from_rows(const std::vector<Point>& rows);

    std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
    bool empty() const { return data_.empty(); }
    std::size_t dim() const { return dim_; }

    PointView operator[](std::size_t i) const {
        return PointView(data_.data() + i * dim_, dim_);
    }

    /// Validates dimension and finiteness; fixes dim on first insert if unset.
    void push_back(PointView p);
    void pop_back();

    void append(const PointSet& other);
    PointSet subset(const std::vector<std::size_t>& indices) const;

    bool operator==(const PointSet& other) const {
        return dim_ == other.dim_ && data_ == other.data_;
    }

    const std::vector<double>& raw() const { return data_; }

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

struct CostBreakdown {
    double facility_open_cost = 0.0;  // f * |F|, zero for k-means
    double connection_cost = 0.0;     // sum of squared distances
    double total = 0.0;
};

struct NearestResult {
    std::size_t index;
    double sq_dist;
};

/// Squared Euclidean distance; summed in index order for reproducibility.
double sq_dist(PointView p, PointView q);

/// Index of the nearest point of s and the squared distance.
/// Ties broken by lowest index. Throws on empty s.
NearestResult nearest(PointView p, const PointSet& s);

CostBreakdown sosfl_cost(const PointSet& clients, const PointSet& facilities, double f);
double kmeans_cost(const PointSet& points, const PointSet& centers);

/// Coordinate-wise mean; the unique minimizer of within-set squared error.
Point centroid(const PointSet& s);
Point centroid_of(const PointSet& s, const std::vector<std::size_t>& indices);

/// cells[j] lists the clients whose nearest reference is j (lowest-index ties).
/// The cells partition the client indices.
std::vector<std::vector<std::size_t>> voronoi_assign(const PointSet& clients,
                                                     const PointSet& refs);

struct BoundingBox {
    Point lo;
    Point hi;
    Point center() const;
    double diameter() const;  // full diagonal length
};

BoundingBox bounding_box(const PointSet& s);

}  // namespace geoclust
