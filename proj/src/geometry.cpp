#include "udg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "udg/errors.hpp"

namespace udg {

Model parse_model(std::string_view name) {
    if (name == "disk") return Model::Disk;
    if (name == "square") return Model::Square;
    throw InputError("unknown model: " + std::string(name));
}

std::string to_string(Model model) { return model == Model::Disk ? "disk" : "square"; }

namespace {

void check_cloud(const PointCloud& cloud) {
    if (cloud.empty()) throw InputError("point cloud is empty");
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (!std::isfinite(cloud[i].x) || !std::isfinite(cloud[i].y))
            throw InputError("non-finite coordinate at point " + std::to_string(i));
}

bool adjacent(const Point& a, const Point& b, Model model) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    if (model == Model::Disk) return dx * dx + dy * dy <= 4.0;
    return std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0;
}

// t = ceil(span/pitch), bumped by one when that quotient is integral.
int grid_extent(double span, double pitch) {
    const double q = span / pitch;
    const double c = std::ceil(q);
    return static_cast<int>(c == q ? c + 1 : c);
}

}  // namespace

SimpleGraph build_geometric_graph(const PointCloud& cloud, Model model) {
    check_cloud(cloud);
    const int n = static_cast<int>(cloud.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return cloud[a].x != cloud[b].x ? cloud[a].x < cloud[b].x : a < b;
    });
    const double reach = model == Model::Disk ? 2.0 : 1.0;
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i) {
        const Point& p = cloud[order[i]];
        for (int j = i + 1; j < n && cloud[order[j]].x - p.x <= reach; ++j)
            if (adjacent(p, cloud[order[j]], model)) g.add_edge(order[i], order[j]);
    }
    return g;
}

Representation compute_representation(const PointCloud& cloud, Model model) {
    check_cloud(cloud);
    double xmin = cloud[0].x, xmax = xmin, ymin = cloud[0].y, ymax = ymin;
    for (const Point& p : cloud) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double pitch = model == Model::Disk ? std::sqrt(2.0) : 1.0;
    Representation rep;
    rep.cell_of.reserve(cloud.size());
    int max_row = 1, max_col = 1;
    for (const Point& p : cloud) {
        Cell c{static_cast<int>(std::floor((p.x - xmin) / pitch + 1)),
               static_cast<int>(std::floor((p.y - ymin) / pitch + 1))};
        max_row = std::max(max_row, c.row);
        max_col = std::max(max_col, c.col);
        rep.cell_of.push_back(c);
    }
    // The max() only matters if rounding pushes a coordinate past the formula's extent.
    rep.rows = std::max(grid_extent(xmax - xmin, pitch), max_row);
    rep.cols = std::max(grid_extent(ymax - ymin, pitch), max_col);
    return rep;
}

bool verify_representation(const SimpleGraph& g, const Representation& rep) {
    const int n = g.vertex_count();
    if (static_cast<int>(rep.cell_of.size()) != n || rep.rows < 1 || rep.cols < 1) return false;
    for (const Cell& c : rep.cell_of)
        if (c.row < 1 || c.row > rep.rows || c.col < 1 || c.col > rep.cols) return false;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v : g.neighbors(u)) {
            const Cell a = rep.cell_of[u], b = rep.cell_of[v];
            if (std::abs(a.row - b.row) > 2 || std::abs(a.col - b.col) > 2) return false;
        }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::pair(rep.cell_of[a], a) < std::pair(rep.cell_of[b], b); });
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && rep.cell_of[order[j]] == rep.cell_of[order[i]]) ++j;
        for (int a = i; a < j; ++a)
            for (int b = a + 1; b < j; ++b)
                if (!g.has_edge(order[a], order[b])) return false;
        i = j;
    }
    return true;
}

PointCloud read_points(std::istream& in) {
    PointCloud cloud;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        Point p;
        std::string extra;
        if (!(ss >> p.x >> p.y) || (ss >> extra))
            throw InputError("malformed point on line " + std::to_string(lineno));
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw InputError("non-finite coordinate on line " + std::to_string(lineno));
        cloud.push_back(p);
    }
    return cloud;
}

PointCloud read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open point file: " + path);
    return read_points(in);
}

void write_points(std::ostream& out, const PointCloud& cloud) {
    const auto old = out.precision(17);
    for (const Point& p : cloud) out << p.x << ' ' << p.y << '\n';
    out.precision(old);
}

void write_gr(std::ostream& out, const SimpleGraph& g) {
    out << "p tw " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

SimpleGraph read_gr(std::istream& in) {
    std::string line;
    SimpleGraph g;
    bool header = false;
    std::size_t expected = 0;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == 'c') continue;
        std::istringstream ss(line);
        if (!header) {
            std::string p, tw;
            int n = 0;
            if (!(ss >> p >> tw >> n >> expected) || p != "p" || tw != "tw")
                throw InputError("malformed .gr header");
            g = SimpleGraph(n);
            header = true;
            continue;
        }
        int u = 0, v = 0;
        if (!(ss >> u >> v)) throw InputError("malformed .gr edge line");
        g.add_edge(u - 1, v - 1);
    }
    if (!header) throw InputError("missing .gr header");
    if (g.edge_count() != expected) throw InputError("edge count mismatch in .gr file");
    return g;
}

void write_representation(std::ostream& out, const Representation& rep) {
    out << "cells " << rep.rows << ' ' << rep.cols << '\n';
    for (std::size_t v = 0; v < rep.cell_of.size(); ++v)
        out << v + 1 << ' ' << rep.cell_of[v].row << ' ' << rep.cell_of[v].col << '\n';
}

}  // namespace udg
