#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "udg/cliquegrid.hpp"
#include "udg/geometry.hpp"
#include "udg/graph.hpp"

namespace udg::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline PointCloud random_cloud(std::mt19937_64& rng, int n, double side) {
    PointCloud pts;
    for (int i = 0; i < n; ++i) pts.push_back({uniform(rng, 0, side), uniform(rng, 0, side)});
    return pts;
}

// Side length that gives roughly `degree` expected neighbours for n disks.
inline double side_for_degree(int n, double degree) {
    const double area_per_point = 4.0 * 3.14159265358979 / degree;
    return std::sqrt(area_per_point * n);
}

inline CliqueGridInstance random_instance(std::mt19937_64& rng, int n, double degree, Model model = Model::Disk) {
    return CliqueGridInstance::from_cloud(random_cloud(rng, n, side_for_degree(n, degree)), model);
}

// A chain of tight clusters along the x axis; cluster sizes are given.
inline PointCloud cluster_chain(const std::vector<int>& sizes, double gap, std::mt19937_64& rng) {
    PointCloud pts;
    for (std::size_t c = 0; c < sizes.size(); ++c)
        for (int i = 0; i < sizes[c]; ++i)
            pts.push_back({0.3 + gap * static_cast<double>(c) + uniform(rng, 0, 0.05), 0.3 + uniform(rng, 0, 0.05)});
    return pts;
}

// Points evenly spaced on a circle of the given spacing.
inline PointCloud ring(int n, double spacing) {
    const double pi = 3.14159265358979;
    const double radius = spacing / (2.0 * std::sin(pi / n));
    PointCloud pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({radius + 1 + radius * std::cos(2 * pi * i / n), radius + 1 + radius * std::sin(2 * pi * i / n)});
    return pts;
}

inline SimpleGraph random_graph(std::mt19937_64& rng, int n, double p) {
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform(rng, 0, 1) < p) g.add_edge(u, v);
    return g;
}

}  // namespace udg::testing
