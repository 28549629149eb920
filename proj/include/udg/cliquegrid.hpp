#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "udg/geometry.hpp"
#include "udg/graph.hpp"

namespace udg {

// A simple graph plus a verified representation. Immutable once built.
class CliqueGridInstance {
public:
    struct AssumeValid {};

    CliqueGridInstance() = default;
    // Throws InputError unless verify_representation(graph, rep) holds.
    CliqueGridInstance(SimpleGraph graph, Representation rep);
    // Skips verification; for callers that derive the instance from a valid one.
    CliqueGridInstance(SimpleGraph graph, Representation rep, AssumeValid);

    static CliqueGridInstance from_cloud(const PointCloud& cloud, Model model);

    const SimpleGraph& graph() const { return graph_; }
    const Representation& rep() const { return rep_; }
    int vertex_count() const { return graph_.vertex_count(); }
    Cell cell_of(Vertex v) const { return rep_.cell_of[v]; }

    // Nonempty cells in increasing (row, col) order and their members.
    const std::vector<Cell>& cells() const { return cells_; }
    std::span<const Vertex> members(std::size_t cell_index) const { return members_[cell_index]; }
    std::size_t cell_index(Vertex v) const { return cell_index_[v]; }
    std::optional<std::size_t> find_cell(Cell c) const;
    int max_cell_size() const;

    // Subinstance induced by `keep` (keep[i] becomes vertex i), same grid.
    CliqueGridInstance induced(std::span<const Vertex> keep) const;

private:
    void index_cells();

    SimpleGraph graph_;
    Representation rep_;
    std::vector<Cell> cells_;
    std::vector<std::vector<Vertex>> members_;
    std::vector<std::size_t> cell_index_;
};

struct CellGraph {
    SimpleGraph graph;                    // one vertex per nonempty cell
    std::vector<Cell> cells;              // cell-vertex -> cell
    std::vector<int> cell_vertex_of;      // instance vertex -> cell-vertex
};

CellGraph cell_graph(const CliqueGridInstance& inst);

struct Backbone {
    std::vector<Vertex> vertices;  // sorted subset of the instance's vertices
    SimpleGraph graph;             // induced on `vertices`, renumbered in order
};

// Greedy removal in ascending vertex order; the result is vertex-minimal.
Backbone minimal_backbone(const CliqueGridInstance& inst);

// True iff every pair of cells adjacent in the instance is joined by an edge
// with both endpoints flagged in `keep`.
bool is_backbone(const CliqueGridInstance& inst, const std::vector<bool>& keep);

struct Contraction {
    CliqueGridInstance instance;
    std::vector<Vertex> old_to_new;  // merged pair maps to the same vertex
    Vertex kept = -1;                // original index of the surviving endpoint
    Vertex absorbed = -1;            // original index of the removed endpoint
};

// Contracts the edge uv of a pair sharing a cell. The merged vertex takes the
// smaller index; later vertices shift down by one. Throws ContractionError.
Contraction contract_pair(const CliqueGridInstance& inst, Vertex u, Vertex v);

// Lexicographically first pair (u < v) sharing a cell, if any.
std::optional<Edge> first_contractible_pair(const CliqueGridInstance& inst);

}  // namespace udg
