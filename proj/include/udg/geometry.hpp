#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "udg/graph.hpp"

namespace udg {

struct Point {
    double x = 0;
    double y = 0;
};

using PointCloud = std::vector<Point>;

enum class Model { Disk, Square };

Model parse_model(std::string_view name);
std::string to_string(Model model);

// Grid cell, 1-indexed: row from the x coordinate, column from y.
struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

struct Representation {
    std::vector<Cell> cell_of;
    int rows = 1;
    int cols = 1;
};

// Disk: edge iff squared distance <= 4. Square: edge iff both gaps <= 1.
SimpleGraph build_geometric_graph(const PointCloud& cloud, Model model);

Representation compute_representation(const PointCloud& cloud, Model model);

// Checks the clique condition and the locality condition by exhaustive scan.
bool verify_representation(const SimpleGraph& g, const Representation& rep);

// Point files: one "x y" pair per line, '#' starts a comment line.
PointCloud read_points(std::istream& in);
PointCloud read_points_file(const std::string& path);
void write_points(std::ostream& out, const PointCloud& cloud);

// PACE ".gr": "p tw n m" then 1-indexed edges.
void write_gr(std::ostream& out, const SimpleGraph& g);
SimpleGraph read_gr(std::istream& in);

// Header "cells t t'" followed by "v i j" per vertex, all 1-indexed.
void write_representation(std::ostream& out, const Representation& rep);

}  // namespace udg
