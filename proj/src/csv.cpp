#include "geoclust/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace geoclust {

namespace {

bool parse_row(const std::string& line, Point& out) {
    out.clear();
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const char* b = cell.data();
        const char* e = b + cell.size();
        while (b < e && (*b == ' ' || *b == '\t')) ++b;
        while (e > b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
        if (b == e) return false;
        double v;
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e) return false;
        out.push_back(v);
    }
    return !out.empty();
}

}  // namespace

PointSet read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open points file: " + path);
    PointSet points;
    Point row;
    std::string line;
    bool first = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!parse_row(line, row)) {
            if (first) {
                first = false;  // header row
                continue;
            }
            throw InvalidInput(path + ":" + std::to_string(lineno) + ": malformed row");
        }
        first = false;
        points.push_back(row);
    }
    if (points.empty()) throw InvalidInput("no points in file: " + path);
    return points;
}

std::string format_double(double v) {
    char buf[64];
    // %.17g round-trips; strip to shortest form that still does.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back;
        auto [ptr, ec] = std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
        (void)ptr;
        if (ec == std::errc() && back == v) return buf;
    }
    return buf;
}

void write_points_csv(const std::string& path, const PointSet& points) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write points file: " + path);
    for (std::size_t i = 0; i < points.size(); ++i) {
        PointView p = points[i];
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (j) out << ',';
            out << format_double(p[j]);
        }
        out << '\n';
    }
    if (!out) throw InvalidInput("write failed: " + path);
}

}  // namespace geoclust
